package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Registry component of the synthetic subject system.
 */
public class Registry {

    private final List<String> items = new ArrayList<>();

    // register entry point
    public int register(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // lookup entry point
    public int lookup(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

}
