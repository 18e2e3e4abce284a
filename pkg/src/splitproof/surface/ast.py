"""Named-variable surface syntax produced by the parser."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..span import Span

_SPAN = dict(default=None, compare=False, repr=False)

Binder = tuple  # (name, Optional[STerm])


@dataclass(frozen=True, slots=True)
class STerm:
    pass


@dataclass(frozen=True, slots=True)
class Name(STerm):
    name: str
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Num(STerm):
    value: int
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Const(STerm):
    """Nullary keyword: a universe, a base type, or a constructor."""

    keyword: str
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Prim(STerm):
    """Fixed-arity keyword form such as ``Id A x y`` or ``natElim P z s n``."""

    keyword: str
    args: tuple
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Lam(STerm):
    binders: tuple  # of Binder; types may be None
    body: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class PiT(STerm):
    binders: tuple  # of Binder; "_" for a plain arrow
    codomain: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class SigT(STerm):
    binders: tuple  # "_" for a plain product
    body: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class App(STerm):
    fn: STerm
    arg: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Let(STerm):
    name: str
    type: Optional[STerm]
    value: STerm
    body: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Ann(STerm):
    term: STerm
    type: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Pair(STerm):
    first: STerm
    second: STerm
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class Decl:
    flavor: str  # "def" | "thm" | "axiom"
    name: str
    params: tuple  # of (name, STerm)
    type: STerm
    body: Optional[STerm]
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True, slots=True)
class ModuleFile:
    name: Optional[str]
    imports: tuple
    decls: tuple
    path: Optional[str] = None
