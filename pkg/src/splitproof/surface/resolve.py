"""Name resolution: surface syntax to de Bruijn kernel terms.

``let`` is not a kernel construct; a let-bound name is replaced by its
(resolved, suitably shifted) value at each use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..kernel import syntax as S
from ..kernel.errors import UnboundName
from ..span import Span
from . import ast as A

# "global" | "axiom" | None
Lookup = Callable[[str], Optional[str]]

_CONSTANTS = {
    "Type0": lambda sp: S.Universe(0, span=sp),
    "Type1": lambda sp: S.Universe(1, span=sp),
    "Type2": lambda sp: S.Universe(2, span=sp),
    "Nat": lambda sp: S.Nat(span=sp),
    "Bool2": lambda sp: S.Bool2(span=sp),
    "Unit": lambda sp: S.Unit(span=sp),
    "tt": lambda sp: S.TT(span=sp),
    "ff": lambda sp: S.FF(span=sp),
    "star": lambda sp: S.Star(span=sp),
}


@dataclass(frozen=True)
class KernelDecl:
    flavor: str
    name: str
    type: S.Term
    body: Optional[S.Term]
    span: Optional[Span] = None


class Scope:
    """Innermost-last list of local entries: ``(name, None)`` for a bound
    variable, ``(name, (term, nvars))`` for a let-bound value."""

    def __init__(self, entries: tuple = (), nvars: int = 0):
        self.entries = entries
        self.nvars = nvars

    def bind(self, name: str) -> "Scope":
        return Scope(self.entries + ((name, None),), self.nvars + 1)

    def bind_many(self, names) -> "Scope":
        s = self
        for n in names:
            s = s.bind(n)
        return s

    def let(self, name: str, term: S.Term) -> "Scope":
        return Scope(self.entries + ((name, (term, self.nvars)),), self.nvars)

    def find(self, name: str, span) -> Optional[S.Term]:
        index = 0
        for n, val in reversed(self.entries):
            if n == name and name != "_":
                if val is None:
                    return S.Var(index, span=span)
                term, at = val
                return S.shift(term, self.nvars - at)
            if val is None:
                index += 1
        return None


def resolve_term(t: A.STerm, scope: Scope, lookup: Lookup) -> S.Term:
    return _Resolver(lookup).term(t, scope)


class _Resolver:
    def __init__(self, lookup: Lookup):
        self.lookup = lookup

    def term(self, t: A.STerm, sc: Scope) -> S.Term:
        sp = t.span
        match t:
            case A.Name(name):
                local = sc.find(name, sp)
                if local is not None:
                    return local
                kind = self.lookup(name)
                if kind == "axiom":
                    return S.AxiomRef(name, span=sp)
                if kind is not None:
                    return S.Global(name, span=sp)
                raise UnboundName(name, sp)
            case A.Num(value):
                out: S.Term = S.Zero(span=sp)
                for _ in range(value):
                    out = S.Suc(out, span=sp)
                return out
            case A.Const(kw):
                return _CONSTANTS[kw](sp)
            case A.App(fn, arg):
                return S.App(self.term(fn, sc), self.term(arg, sc), span=sp)
            case A.Ann(term, ty):
                return S.Ann(self.term(term, sc), self.term(ty, sc), span=sp)
            case A.Pair(a, b):
                return S.Pair(self.term(a, sc), self.term(b, sc), span=sp)
            case A.Lam(binders, body):
                return self.lam(list(binders), body, sc, sp)
            case A.PiT(binders, cod):
                return self.telescope(S.Pi, list(binders), cod, sc, sp)
            case A.SigT(binders, body):
                return self.telescope(S.Sigma, list(binders), body, sc, sp)
            case A.Let(name, ty, value, body):
                v = self.term(value, sc)
                if ty is not None:
                    v = S.Ann(v, self.term(ty, sc), span=value.span)
                return self.term(body, sc.let(name, v))
            case A.Prim(kw, args):
                return self.prim(kw, args, sc, sp)
        raise TypeError(f"unknown surface node {type(t).__name__}")

    def lam(self, binders: list, body: A.STerm, sc: Scope, sp) -> S.Term:
        if not binders:
            return self.term(body, sc)
        name, ty = binders[0]
        dom = self.term(ty, sc) if ty is not None else None
        inner = self.lam(binders[1:], body, sc.bind(name), sp)
        return S.Lam(inner, name, dom, span=sp)

    def telescope(self, former, binders: list, body: A.STerm, sc: Scope, sp) -> S.Term:
        if not binders:
            return self.term(body, sc)
        name, ty = binders[0]
        dom = self.term(ty, sc)
        inner = self.telescope(former, binders[1:], body, sc.bind(name), sp)
        return former(dom, inner, name, span=sp)

    def opened(self, t: A.STerm, k: int, sc: Scope) -> tuple[tuple, S.Term]:
        """Resolve ``t`` as a body under ``k`` fresh binders.

        A ``fun`` with at least ``k`` binders donates its names; anything else
        is eta-expanded by applying it to the new variables.
        """
        if isinstance(t, A.Lam) and len(t.binders) >= k:
            names = tuple(n for n, _ in t.binders[:k])
            rest = list(t.binders[k:])
            inner = sc.bind_many(names)
            if rest:
                return names, self.lam(rest, t.body, inner, t.span)
            return names, self.term(t.body, inner)
        out = S.shift(self.term(t, sc), k)
        for i in range(k - 1, -1, -1):
            out = S.App(out, S.Var(i), span=t.span)
        return ("",) * k, out

    def prim(self, kw: str, args: tuple, sc: Scope, sp) -> S.Term:
        r = lambda a: self.term(a, sc)  # noqa: E731
        match kw:
            case "Id":
                return S.IdType(r(args[0]), r(args[1]), r(args[2]), span=sp)
            case "refl":
                return S.Refl(r(args[0]), span=sp)
            case "fst":
                return S.Fst(r(args[0]), span=sp)
            case "snd":
                return S.Snd(r(args[0]), span=sp)
            case "suc":
                return S.Suc(r(args[0]), span=sp)
            case "inl":
                return S.Inl(r(args[0]), span=sp)
            case "inr":
                return S.Inr(r(args[0]), span=sp)
            case "Sum":
                return S.Sum(r(args[0]), r(args[1]), span=sp)
            case "J":
                mn, m = self.opened(args[0], 3, sc)
                bn, b = self.opened(args[1], 1, sc)
                return S.J(m, b, r(args[2]), r(args[3]), r(args[4]), names=mn + bn, span=sp)
            case "natElim":
                mn, m = self.opened(args[0], 1, sc)
                sn, s = self.opened(args[2], 2, sc)
                return S.NatElim(m, r(args[1]), s, r(args[3]), names=mn + sn, span=sp)
            case "boolElim":
                mn, m = self.opened(args[0], 1, sc)
                return S.BoolElim(m, r(args[1]), r(args[2]), r(args[3]), names=mn, span=sp)
            case "sumElim":
                mn, m = self.opened(args[0], 1, sc)
                ln, lc = self.opened(args[1], 1, sc)
                rn, rc = self.opened(args[2], 1, sc)
                return S.SumElim(m, lc, rc, r(args[3]), names=mn + ln + rn, span=sp)
        raise TypeError(f"unknown keyword form {kw}")


def resolve_decl(d: A.Decl, lookup: Lookup) -> KernelDecl:
    """Resolve one declaration; parameters become a Pi prefix and a lambda prefix."""
    res = _Resolver(lookup)
    sc = Scope()
    ty = res.telescope(S.Pi, list(d.params), d.type, sc, d.type.span)
    body = None
    if d.body is not None:
        names = [n for n, _ in d.params]
        body = res.lam([(n, None) for n in names], d.body, sc, d.body.span)
    return KernelDecl(d.flavor, d.name, ty, body, d.span)


def resolve(module: A.ModuleFile, lookup: Lookup) -> list[KernelDecl]:
    """Resolve all declarations, each seeing its predecessors as globals."""
    declared: dict[str, str] = {}

    def scoped(name: str) -> Optional[str]:
        return declared.get(name) or lookup(name)

    out = []
    for d in module.decls:
        kd = resolve_decl(d, scoped)
        declared[d.name] = "axiom" if d.body is None else "global"
        out.append(kd)
    return out
