package app.core;

final class Factories {

    private Factories() {
    }

    static Scheduler scheduler() {
        return new Scheduler();
    }
}
