package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Formatter component of the synthetic subject system.
 */
public class Formatter {

    private final List<String> items = new ArrayList<>();

    // format entry point
    public int format(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // indent entry point
    public int indent(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

}
