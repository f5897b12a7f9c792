"""Tokenizer for MiniC source text.

Comments (``//`` and ``/* */``) and whitespace produce no tokens; everything
else becomes exactly one token with a 1-based source span.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError

KEYWORDS = frozenset(
    {
        "int", "float", "bool", "struct",
        "if", "else", "switch", "case", "default",
        "while", "do", "for",
        "return", "break", "continue", "goto",
        "true", "false",
    }
)

# Longest match first. `=` is last among the `=`-prefixed operators so that
# `==`, `<=`, `+=` etc. win.
OPERATORS = (
    "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "++", "--",
    "+", "-", "*", "/", "%", "<", ">", "=", "!",
)

# `::` must precede `:`.
PUNCTUATION = ("::", ";", ",", "(", ")", "{", "}", "[", "]", ":", ".")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line_start: int
    col_start: int
    line_end: int
    col_end: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line_start}:{self.col_start}"


@dataclass(frozen=True)
class Token:
    kind: str  # identifier | int-literal | float-literal | string-literal | keyword | operator | punctuation
    text: str
    span: SourceSpan


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


class _Scanner:
    def __init__(self, source: str, file: str):
        self.src = source
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.src)

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.src[i] if i < len(self.src) else ""

    def advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.eof():
                return
            if self.src[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def here(self) -> tuple[int, int]:
        return self.line, self.col

    def span_from(self, start: tuple[int, int]) -> SourceSpan:
        return SourceSpan(self.file, start[0], start[1], self.line, max(1, self.col - 1))


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    """Convert source text to a token list; raises LexError with a span."""
    sc = _Scanner(source, file)
    tokens: list[Token] = []
    while not sc.eof():
        ch = sc.peek()
        if ch in " \t\r\n":
            sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "/":
            while not sc.eof() and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "*":
            start = sc.here()
            sc.advance(2)
            while not (sc.peek() == "*" and sc.peek(1) == "/"):
                if sc.eof():
                    raise LexError("unterminated block comment", sc.span_from(start))
                sc.advance()
            sc.advance(2)
            continue
        start = sc.here()
        if ch == '"':
            sc.advance()
            text = ['"']
            while True:
                if sc.eof() or sc.peek() == "\n":
                    raise LexError("unterminated string literal", sc.span_from(start))
                c = sc.peek()
                if c == "\\":
                    text.append(c)
                    sc.advance()
                    if sc.eof():
                        raise LexError("unterminated string literal", sc.span_from(start))
                    text.append(sc.peek())
                    sc.advance()
                    continue
                text.append(c)
                sc.advance()
                if c == '"':
                    break
            tokens.append(Token("string-literal", "".join(text), sc.span_from(start)))
            continue
        if ch.isdigit():
            text = []
            while sc.peek().isdigit():
                text.append(sc.peek())
                sc.advance()
            if sc.peek() == "." and sc.peek(1).isdigit():
                text.append(".")
                sc.advance()
                while sc.peek().isdigit():
                    text.append(sc.peek())
                    sc.advance()
                tokens.append(Token("float-literal", "".join(text), sc.span_from(start)))
            else:
                tokens.append(Token("int-literal", "".join(text), sc.span_from(start)))
            continue
        if _is_ident_start(ch):
            text = []
            while _is_ident_char(sc.peek()):
                text.append(sc.peek())
                sc.advance()
            word = "".join(text)
            kind = "keyword" if word in KEYWORDS else "identifier"
            tokens.append(Token(kind, word, sc.span_from(start)))
            continue
        matched = False
        for op in OPERATORS:
            if sc.src.startswith(op, sc.pos):
                sc.advance(len(op))
                tokens.append(Token("operator", op, sc.span_from(start)))
                matched = True
                break
        if matched:
            continue
        for punct in PUNCTUATION:
            if sc.src.startswith(punct, sc.pos):
                sc.advance(len(punct))
                tokens.append(Token("punctuation", punct, sc.span_from(start)))
                matched = True
                break
        if matched:
            continue
        bad = SourceSpan(file, start[0], start[1], start[0], start[1])
        raise LexError(f"illegal character {ch!r}", bad)
    return tokens
