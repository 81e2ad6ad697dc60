package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Util component of the synthetic subject system.
 */
public class Util {

    private final List<String> items = new ArrayList<>();

    // clamp entry point
    public int clamp(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // join entry point
    public int join(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

}
