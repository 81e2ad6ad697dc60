package app.core;

import java.util.ArrayDeque;
import java.util.Deque;

public class Engine {

    /**
     * One unit of work. Nested classes belong to Engine.
     */
    static class Step {
        final String name;

        Step(String name) {
            this.name = name;
        }
    }

    private final Deque<Step> pending = new ArrayDeque<>();

    public void run(String program) {
        for (String part : program.split(";")) {
            pending.add(new Step(part));
        }
        while (!pending.isEmpty()) {
            step();
        }
    }

    public void step() {
        Step s = pending.poll();
        if (s == null) {
            return;
        }
        // "class Fake {" inside a string must not confuse the scanner
        String note = "class Fake {";
    }
}
