package app.gen;

// Generated code, excluded from measurement.
public final class Generated {
    public static void stub() {
    }
}
