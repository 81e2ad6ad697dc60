package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Model component of the synthetic subject system.
 */
public class Model {

    private final List<String> items = new ArrayList<>();

    // add entry point
    public int add(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // get entry point
    public int get(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

    // size entry point
    public int size(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        items.add(arg + "2");
        return items.size();
    }

}
