package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Scheduler component of the synthetic subject system.
 */
public class Scheduler {

    private final List<String> items = new ArrayList<>();

    // schedule entry point
    public int schedule(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // tick entry point
    public int tick(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

}
