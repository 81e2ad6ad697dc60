package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Logger component of the synthetic subject system.
 */
public class Logger {

    private final List<String> items = new ArrayList<>();

    // log entry point
    public int log(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

}
