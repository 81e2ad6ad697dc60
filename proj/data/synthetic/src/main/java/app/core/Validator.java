package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Validator component of the synthetic subject system.
 */
public class Validator {

    private final List<String> items = new ArrayList<>();

    // validate entry point
    public int validate(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

}
