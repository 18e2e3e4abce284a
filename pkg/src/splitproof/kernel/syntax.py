"""Core terms of the object type theory.

Variables are de Bruijn indices (``Var(0)`` is the innermost binder).  Binder
name hints and source spans ride along on every node but are excluded from
equality, so ``==`` on terms is alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..span import Span


def _hint(default: str = ""):
    return field(default=default, compare=False, repr=False)


def _names(*defaults: str):
    return field(default=defaults, compare=False, repr=False)


_SPAN = dict(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Term:
    pass


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Universe(Term):
    level: int
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Pi(Term):
    domain: Term
    codomain: Term
    name: str = _hint()
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Lam(Term):
    body: Term
    name: str = _hint()
    # optional binder annotation; makes the lambda inferable, erased by elaboration
    domain: Optional[Term] = field(default=None, compare=False, repr=False)
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Sigma(Term):
    first: Term
    second: Term
    name: str = _hint()
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Pair(Term):
    first: Term
    second: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Fst(Term):
    pair: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Snd(Term):
    pair: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class IdType(Term):
    carrier: Term
    lhs: Term
    rhs: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Refl(Term):
    point: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class J(Term):
    """Path induction.  ``motive`` binds (x, y, p); ``base`` binds x."""

    motive: Term
    base: Term
    lhs: Term
    rhs: Term
    path: Term
    names: tuple = _names("x", "y", "p", "x")
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Nat(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Zero(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Suc(Term):
    n: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class NatElim(Term):
    """``motive`` binds n; ``scase`` binds (n, ih)."""

    motive: Term
    zcase: Term
    scase: Term
    target: Term
    names: tuple = _names("n", "n", "ih")
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Bool2(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class TT(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class FF(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class BoolElim(Term):
    motive: Term
    tcase: Term
    fcase: Term
    target: Term
    names: tuple = _names("b")
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Sum(Term):
    left: Term
    right: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Inl(Term):
    term: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Inr(Term):
    term: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class SumElim(Term):
    """``motive``, ``lcase`` and ``rcase`` each bind one variable."""

    motive: Term
    lcase: Term
    rcase: Term
    target: Term
    names: tuple = _names("w", "a", "b")
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Unit(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Star(Term):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Ann(Term):
    term: Term
    type: Term
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Global(Term):
    name: str
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class AxiomRef(Term):
    name: str
    span: Optional[Span] = field(**_SPAN)


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Suc(t)
    return t


def as_numeral(t: Term) -> Optional[int]:
    k = 0
    while isinstance(t, Suc):
        t, k = t.n, k + 1
    return k if isinstance(t, Zero) else None


def arrow(a: Term, b: Term) -> Pi:
    """Non-dependent function type; ``b`` is shifted under the binder."""
    return Pi(a, shift(b, 1), "_")


# number of variables bound by each subterm position, per constructor
_BINDERS: dict = {
    Pi: (0, 1),
    Lam: (1,),
    Sigma: (0, 1),
    J: (3, 1, 0, 0, 0),
    NatElim: (1, 0, 2, 0),
    BoolElim: (1, 0, 0, 0),
    SumElim: (1, 1, 1, 0),
}

_FIELDS: dict = {}


def children(t: Term) -> list[tuple[Term, int]]:
    """Immediate subterms paired with the number of binders they sit under."""
    cls = type(t)
    fields = _FIELDS.get(cls)
    if fields is None:
        fields = [
            f
            for f in cls.__dataclass_fields__
            if f not in ("span", "name", "names", "index", "level")
            and not (cls is Lam and f == "domain")
        ]
        _FIELDS[cls] = fields
    binders = _BINDERS.get(cls)
    out = []
    for i, f in enumerate(fields):
        sub = getattr(t, f)
        if isinstance(sub, Term):
            out.append((sub, binders[i] if binders else 0))
    if isinstance(t, Lam) and t.domain is not None:
        out.append((t.domain, 0))
    return out


def map_children(t: Term, fn) -> Term:
    """Rebuild ``t`` with ``fn(sub, k)`` applied to each subterm under ``k`` binders."""
    cls = type(t)
    children(t)  # populate _FIELDS
    fields = _FIELDS[cls]
    binders = _BINDERS.get(cls)
    kwargs = {}
    for f in cls.__dataclass_fields__:
        kwargs[f] = getattr(t, f)
    for i, f in enumerate(fields):
        sub = kwargs[f]
        if isinstance(sub, Term):
            kwargs[f] = fn(sub, binders[i] if binders else 0)
    if isinstance(t, Lam) and t.domain is not None:
        kwargs["domain"] = fn(t.domain, 0)
    return cls(**kwargs)


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0:
        return t
    if isinstance(t, Var):
        return Var(t.index + by, span=t.span) if t.index >= cutoff else t
    if not children(t):
        return t
    return map_children(t, lambda sub, k: shift(sub, by, cutoff + k))


def free_indices(t: Term, depth: int = 0) -> set[int]:
    """Free de Bruijn indices of ``t``, relative to its outermost scope."""
    if isinstance(t, Var):
        return {t.index - depth} if t.index >= depth else set()
    out: set[int] = set()
    for sub, k in children(t):
        out |= free_indices(sub, depth + k)
    return out


def is_well_scoped(t: Term, depth: int) -> bool:
    """Scope audit: every variable refers to one of ``depth`` ambient binders."""
    return all(i < depth for i in free_indices(t))


def references(t: Term) -> set[str]:
    """Names of globals and axioms mentioned anywhere in ``t``."""
    if isinstance(t, (Global, AxiomRef)):
        return {t.name}
    out: set[str] = set()
    for sub, _ in children(t):
        out |= references(sub)
    return out


def erase(t: Term) -> Term:
    """Drop annotations and lambda domains."""
    if isinstance(t, Ann):
        return erase(t.term)
    if isinstance(t, Lam):
        return Lam(erase(t.body), t.name, span=t.span)
    if not children(t):
        return t
    return map_children(t, lambda sub, k: erase(sub))


def size(t: Term) -> int:
    return 1 + sum(size(sub) for sub, _ in children(t))
