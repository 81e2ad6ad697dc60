package app.core;

final class LexerFixtures {

    static Lexer fresh() {
        return new Lexer();
    }
}
