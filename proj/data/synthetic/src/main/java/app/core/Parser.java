package app.core;

import java.util.ArrayList;
import java.util.List;

/**
 * Parser component of the synthetic subject system.
 */
public class Parser {

    private final List<String> items = new ArrayList<>();

    // parse entry point
    public int parse(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        return items.size();
    }

    // parseExpr entry point
    public int parseExpr(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        return items.size();
    }

    // parseTerm entry point
    public int parseTerm(String arg) {
        if (arg == null) {
            return -1;
        }
        items.add(arg + "0");
        items.add(arg + "1");
        items.add(arg + "2");
        return items.size();
    }

}
