"""Pretty-printer from kernel terms back to parseable surface text.

Binder names come from the hints carried on the term when they are free to
use; otherwise (or when there is no hint) a name ``x<level>`` is generated.
Names never collide with keywords, with enclosing binders, or with globals
the term mentions, so printing then parsing gives back the same term.
"""

from __future__ import annotations

from ..kernel import syntax as S
from .lexer import KEYWORDS

TERM, PROD, APP, ATOM = 0, 1, 2, 3


class _Printer:
    def __init__(self, reserved: set[str]):
        self.reserved = reserved

    def fresh(self, hint: str, env: list[str]) -> str:
        level = len(env)
        taken = self.reserved
        if hint and hint != "_" and hint not in taken and hint not in env:
            return hint
        base = hint if hint and hint != "_" else "x"
        cand = f"{base}{level}"
        while cand in taken or cand in env or cand in KEYWORDS:
            cand += "'"
        return cand

    def paren(self, text: str, level: int, prec: int) -> str:
        return f"({text})" if level < prec else text

    def binder_body(self, names: tuple, body: S.Term, env: list[str]) -> str:
        """``fun a b => body`` for an eliminator branch binding ``len(names)`` variables."""
        bound = []
        inner = list(env)
        for hint in names:
            n = self.fresh(hint, inner)
            bound.append(n)
            inner.append(n)
        return f"(fun {' '.join(bound)} => {self.go(body, inner, TERM)})"

    def go(self, t: S.Term, env: list[str], prec: int) -> str:
        match t:
            case S.Var(i):
                if i >= len(env):
                    return f"#{i}"
                return env[len(env) - 1 - i]
            case S.Global(name) | S.AxiomRef(name):
                return name
            case S.Universe(level):
                return f"Type{level}"
            case S.Nat():
                return "Nat"
            case S.Bool2():
                return "Bool2"
            case S.Unit():
                return "Unit"
            case S.TT():
                return "tt"
            case S.FF():
                return "ff"
            case S.Star():
                return "star"
            case S.Zero():
                return "0"
            case S.Suc(n):
                k = S.as_numeral(t)
                if k is not None:
                    return str(k)
                return self.paren(f"suc {self.go(n, env, ATOM)}", APP, prec)
            case S.Lam():
                names = []
                inner = list(env)
                while isinstance(t, S.Lam):
                    n = self.fresh(t.name, inner)
                    names.append(n)
                    inner.append(n)
                    t = t.body
                return self.paren(f"fun {' '.join(names)} => {self.go(t, inner, TERM)}", TERM, prec)
            case S.Pi(dom, cod):
                if 0 not in S.free_indices(cod):
                    inner = env + ["_"]
                    text = f"{self.go(dom, env, PROD)} -> {self.go(cod, inner, TERM)}"
                    return self.paren(text, TERM, prec)
                n = self.fresh(t.name, env)
                text = f"({n} : {self.go(dom, env, TERM)}) -> {self.go(cod, env + [n], TERM)}"
                return self.paren(text, TERM, prec)
            case S.Sigma(a, b):
                if 0 not in S.free_indices(b):
                    text = f"{self.go(a, env, APP)} * {self.go(b, env + ['_'], PROD)}"
                    return self.paren(text, PROD, prec)
                n = self.fresh(t.name, env)
                text = f"Sig ({n} : {self.go(a, env, TERM)}), {self.go(b, env + [n], TERM)}"
                return self.paren(text, TERM, prec)
            case S.App(fn, arg):
                return self.paren(f"{self.go(fn, env, APP)} {self.go(arg, env, ATOM)}", APP, prec)
            case S.Pair(a, b):
                items = [self.go(a, env, TERM)]
                while isinstance(b, S.Pair):
                    items.append(self.go(b.first, env, TERM))
                    b = b.second
                items.append(self.go(b, env, TERM))
                return f"({', '.join(items)})"
            case S.Ann(term, ty):
                return f"({self.go(term, env, TERM)} : {self.go(ty, env, TERM)})"
        return self.paren(self.keyword_form(t, env), APP, prec)

    def keyword_form(self, t: S.Term, env: list[str]) -> str:
        a = lambda x: self.go(x, env, ATOM)  # noqa: E731
        match t:
            case S.Fst(p):
                return f"fst {a(p)}"
            case S.Snd(p):
                return f"snd {a(p)}"
            case S.IdType(ty, x, y):
                return f"Id {a(ty)} {a(x)} {a(y)}"
            case S.Refl(x):
                return f"refl {a(x)}"
            case S.Inl(x):
                return f"inl {a(x)}"
            case S.Inr(x):
                return f"inr {a(x)}"
            case S.Sum(l, r):
                return f"Sum {a(l)} {a(r)}"
            case S.J(motive, base, lhs, rhs, path):
                m = self.binder_body(t.names[:3], motive, env)
                b = self.binder_body(t.names[3:4], base, env)
                return f"J {m} {b} {a(lhs)} {a(rhs)} {a(path)}"
            case S.NatElim(motive, z, s, target):
                m = self.binder_body(t.names[:1], motive, env)
                sc = self.binder_body(t.names[1:3], s, env)
                return f"natElim {m} {a(z)} {sc} {a(target)}"
            case S.BoolElim(motive, tc, fc, target):
                m = self.binder_body(t.names[:1], motive, env)
                return f"boolElim {m} {a(tc)} {a(fc)} {a(target)}"
            case S.SumElim(motive, lc, rc, target):
                m = self.binder_body(t.names[:1], motive, env)
                lt = self.binder_body(t.names[1:2], lc, env)
                rt = self.binder_body(t.names[2:3], rc, env)
                return f"sumElim {m} {lt} {rt} {a(target)}"
        raise TypeError(f"cannot print {type(t).__name__}")


def print_term(t: S.Term, names: tuple | list = ()) -> str:
    """Render ``t`` in a context whose variables are ``names`` (outermost first)."""
    env: list[str] = []
    for i, n in enumerate(names):
        if not n or n == "_" or n in env:
            n = f"{n if n and n != '_' else 'x'}{i}"
        env.append(n)
    reserved = set(S.references(t)) | set(KEYWORDS)
    return _Printer(reserved).go(t, env, TERM)
