package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Config component of the synthetic subject system.
 */
public class Config {

    private final List<String> items = new ArrayList<>();

    // load entry point
    public int load(String arg) {
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

}
