package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Cache component of the synthetic subject system.
 */
public class Cache {

    private final List<String> items = new ArrayList<>();

    // get entry point
    public int get(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // put entry point
    public int put(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

    // evict entry point
    public int evict(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        items.add(arg + "2");
        return items.size();
    }

}
