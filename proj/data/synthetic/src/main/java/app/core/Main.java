package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Main component of the synthetic subject system.
 */
public class Main {

    private final List<String> items = new ArrayList<>();

    // main entry point
    public int main(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

}
