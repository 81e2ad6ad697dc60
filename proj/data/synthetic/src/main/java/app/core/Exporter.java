package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Exporter component of the synthetic subject system.
 */
public class Exporter {

    private final List<String> items = new ArrayList<>();

    // export entry point
    public int export(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // flush entry point
    public int flush(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

}
