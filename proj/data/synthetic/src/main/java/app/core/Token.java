package app.core;

/* Token and its kind live in one compilation unit. */
public class Token {

    private final TokenKind kind;
    private final String text;

    public Token(TokenKind kind, String text) {
        this.kind = kind;
        this.text = text;
    }

    public TokenKind kind() {
        return kind;
    }

    public String text() {
        return text; // raw lexeme
    }
}

enum TokenKind {
    IDENT, NUMBER, SYMBOL;

    static TokenKind[] all() {
        return values();
    }
}
