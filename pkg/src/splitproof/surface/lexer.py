"""Tokenizer for ``.itt`` source text (ASCII only)."""

from __future__ import annotations

from dataclasses import dataclass

from ..span import Span

KEYWORDS = frozenset(
    {
        "module", "import", "def", "thm", "axiom", "fun", "let", "in", "Sig",
        "Type0", "Type1", "Type2", "Nat", "Bool2", "Unit", "Sum",
        "Id", "refl", "fst", "snd", "suc", "inl", "inr", "tt", "ff", "star",
        "J", "natElim", "boolElim", "sumElim",
    }
)

# longest first so that ":=" wins over ":"
SYMBOLS = (":=", "=>", "->", "(", ")", ":", ",", "*")


class SurfaceError(Exception):
    """A lexical, syntactic or scoping error in source text."""

    kind = "SyntaxError"

    def __init__(self, message: str, span: Span | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.kind}: {self.message}"


class LexError(SurfaceError):
    kind = "LexError"


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident" | "number" | "keyword" | "symbol" | "eof"
    text: str
    span: Span

    def is_(self, text: str) -> bool:
        return self.kind in ("keyword", "symbol") and self.text == text


def _is_ident_start(c: str) -> bool:
    return c.isascii() and (c.isalpha() or c == "_")


def _is_ident_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c in "_'")


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("{-", i):
            start = Span(file, i, i + 2, line, col)
            depth = 0
            while True:
                if i >= n:
                    raise LexError("unterminated block comment", start)
                if text.startswith("{-", i):
                    depth += 1
                    advance(2)
                elif text.startswith("-}", i):
                    depth -= 1
                    advance(2)
                    if depth == 0:
                        break
                else:
                    advance(1)
            continue
        start, sl, sc = i, line, col
        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            advance(j - i)
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, Span(file, start, i, sl, sc)))
            continue
        if c.isascii() and c.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            advance(j - i)
            tokens.append(Token("number", text[start:i], Span(file, start, i, sl, sc)))
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                advance(len(sym))
                tokens.append(Token("symbol", sym, Span(file, start, i, sl, sc)))
                break
        else:
            what = repr(c) if c.isascii() else f"non-ASCII character {c!r} (U+{ord(c):04X})"
            raise LexError(f"illegal character {what}", Span(file, i, i + 1, line, col))
    tokens.append(Token("eof", "", Span(file, n, n, line, col)))
    return tokens
