"""Recursive-descent parser for ``.itt`` modules.

Precedence, loosest first: binders and arrows, ``*`` products, application,
atoms.  Arrows and products associate to the right, application to the left.
"""

from __future__ import annotations

from typing import Optional

from . import ast as A
from .lexer import SurfaceError, Token, tokenize

# keyword forms that take a fixed number of atom arguments
ARITY = {
    "Id": 3, "refl": 1, "fst": 1, "snd": 1, "suc": 1, "inl": 1, "inr": 1, "Sum": 2,
    "J": 5, "natElim": 4, "boolElim": 4, "sumElim": 4,
}
CONSTANTS = frozenset({"Type0", "Type1", "Type2", "Nat", "Bool2", "Unit", "tt", "ff", "star"})
FLAVORS = ("def", "thm", "axiom")


class ParseError(SurfaceError):
    kind = "ParseError"

    def __init__(self, message: str, span=None, expected: frozenset = frozenset()):
        if expected:
            message = f"{message}; expected one of: {', '.join(sorted(expected))}"
        super().__init__(message, span)
        self.expected = expected


class _Backtrack(Exception):
    pass


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.is_(text)

    def next(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, expected) -> ParseError:
        return ParseError(f"unexpected {_describe(self.tok)}", self.tok.span, frozenset(expected))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail({repr(text)})
        return self.next()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.fail({"identifier"})
        return self.next()

    def span_from(self, start: Token):
        prev = self.toks[self.pos - 1] if self.pos > 0 else start
        return start.span.join(prev.span)

    # -- modules

    def module(self, path: Optional[str] = None) -> A.ModuleFile:
        name = None
        if self.at("module"):
            self.next()
            name = self.ident().text
        imports = []
        while self.at("import"):
            self.next()
            imports.append(self.ident().text)
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return A.ModuleFile(name, tuple(imports), tuple(decls), path)

    def decl(self) -> A.Decl:
        start = self.tok
        if not any(self.at(f) for f in FLAVORS):
            raise self.fail(set(FLAVORS))
        flavor = self.next().text
        name = self.ident().text
        params = []
        while self.at("("):
            params.extend(self.typed_group())
        self.expect(":")
        ty = self.term()
        body = None
        if self.at(":=") and flavor != "axiom":
            self.next()
            body = self.term()
        return A.Decl(flavor, name, tuple(params), ty, body, self.span_from(start))

    def typed_group(self) -> list:
        self.expect("(")
        names = [self.ident().text]
        while self.tok.kind == "ident":
            names.append(self.next().text)
        self.expect(":")
        ty = self.term()
        self.expect(")")
        return [(n, ty) for n in names]

    # -- terms

    def term(self) -> A.STerm:
        start = self.tok
        if self.at("fun"):
            self.next()
            binders = []
            while not self.at("=>"):
                if self.at("("):
                    binders.extend(self.typed_group())
                elif self.tok.kind == "ident":
                    binders.append((self.next().text, None))
                else:
                    raise self.fail({"identifier", "'('", "'=>'"})
            if not binders:
                raise self.fail({"identifier", "'('"})
            self.expect("=>")
            body = self.term()
            return A.Lam(tuple(binders), body, self.span_from(start))
        if self.at("let"):
            self.next()
            name = self.ident().text
            ty = None
            if self.at(":"):
                self.next()
                ty = self.term()
            self.expect(":=")
            value = self.term()
            self.expect("in")
            body = self.term()
            return A.Let(name, ty, value, body, self.span_from(start))
        if self.at("Sig"):
            self.next()
            binders = []
            while self.at("("):
                binders.extend(self.typed_group())
            if not binders:
                raise self.fail({"'('"})
            self.expect(",")
            body = self.term()
            return A.SigT(tuple(binders), body, self.span_from(start))
        if self.at("("):
            pi = self.try_telescope()
            if pi is not None:
                return pi
        lhs = self.product()
        if self.at("->"):
            self.next()
            cod = self.term()
            return A.PiT((("_", lhs),), cod, self.span_from(start))
        return lhs

    def try_telescope(self) -> Optional[A.STerm]:
        """``(x y : A) (z : B) -> C``; restores the position if this is not a Pi."""
        start, saved = self.tok, self.pos
        try:
            binders = []
            while self.at("(") and self.peek().kind == "ident":
                k = 1
                while self.peek(k).kind == "ident":
                    k += 1
                if not self.peek(k).is_(":"):
                    break
                binders.extend(self.typed_group())
            if not binders or not self.at("->"):
                raise _Backtrack
        except (_Backtrack, ParseError):
            self.pos = saved
            return None
        self.next()
        cod = self.term()
        return A.PiT(tuple(binders), cod, self.span_from(start))

    def product(self) -> A.STerm:
        start = self.tok
        lhs = self.application()
        if self.at("*"):
            self.next()
            rhs = self.product()
            return A.SigT((("_", lhs),), rhs, self.span_from(start))
        return lhs

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "number"):
            return True
        if t.kind == "keyword":
            return t.text in CONSTANTS or t.text in ARITY
        return t.is_("(")

    def application(self) -> A.STerm:
        start = self.tok
        if not self.starts_atom():
            raise self.fail({"term"})
        fn = self.argument()
        while self.starts_atom():
            arg = self.argument()
            fn = A.App(fn, arg, self.span_from(start))
        return fn

    def argument(self) -> A.STerm:
        t = self.tok
        if t.kind == "keyword" and t.text in ARITY:
            self.next()
            args = []
            for _ in range(ARITY[t.text]):
                if not self.starts_atom() or (self.tok.kind == "keyword" and self.tok.text in ARITY):
                    raise ParseError(
                        f"'{t.text}' takes {ARITY[t.text]} arguments, got {len(args)}",
                        self.tok.span,
                        frozenset({"atom"}),
                    )
                args.append(self.atom())
            return A.Prim(t.text, tuple(args), self.span_from(t))
        return self.atom()

    def atom(self) -> A.STerm:
        t = self.tok
        if t.kind == "ident":
            self.next()
            return A.Name(t.text, t.span)
        if t.kind == "number":
            self.next()
            return A.Num(int(t.text), t.span)
        if t.kind == "keyword" and t.text in CONSTANTS:
            self.next()
            return A.Const(t.text, t.span)
        if self.at("("):
            self.next()
            inner = self.term()
            if self.at(":"):
                self.next()
                ty = self.term()
                self.expect(")")
                return A.Ann(inner, ty, self.span_from(t))
            if self.at(","):
                items = [inner]
                while self.at(","):
                    self.next()
                    items.append(self.term())
                self.expect(")")
                span = self.span_from(t)
                out = items[-1]
                for item in reversed(items[:-1]):
                    out = A.Pair(item, out, span)
                return out
            if not self.at(")"):
                raise self.fail({"')'", "':'", "','"})
            self.next()
            return inner
        raise self.fail({"identifier", "number", "'('"})


def parse_module(tokens: list[Token], path: Optional[str] = None) -> A.ModuleFile:
    return Parser(tokens).module(path)


def parse_module_text(text: str, file: str = "<input>") -> A.ModuleFile:
    return parse_module(tokenize(text, file), file)


def parse_term(text: str, file: str = "<input>") -> A.STerm:
    p = Parser(tokenize(text, file))
    t = p.term()
    if p.tok.kind != "eof":
        raise p.fail({"end of input"})
    return t
