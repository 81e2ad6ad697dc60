package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Lexer component of the synthetic subject system.
 */
public class Lexer {

    private final List<String> items = new ArrayList<>();

    // next entry point
    public int next(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // peek entry point
    public int peek(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

    // skipWhitespace entry point
    public int skipWhitespace(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        items.add(arg + "2");
        return items.size();
    }

}
