"""Bidirectional type checking against the semantic domain.

``infer`` and ``check`` return elaborated terms with annotations erased;
``check_declaration`` adds one top-level entry to a ``Signature``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import syntax as S
from .errors import (
    CannotInfer,
    ConversionFailure,
    DuplicateDeclaration,
    ExpectedFunction,
    ExpectedInductive,
    ExpectedPair,
    ExpectedType,
    TypeCheckError,
    UnboundName,
    UniverseOverflow,
    UnknownAxiom,
)
from .semantics import (
    V_BOOL2,
    V_FF,
    V_NAT,
    V_STAR,
    V_TT,
    V_UNIT,
    V_ZERO,
    Closure,
    Value,
    VId,
    VInl,
    VInr,
    VPi,
    VRefl,
    VSigma,
    VSuc,
    VSum,
    VUniverse,
    conv,
    conv_type,
    evaluate,
    fresh,
    quote,
    quote_type,
    vfst,
)

MAX_LEVEL = 2
DEFAULT_AXIOMS = frozenset({"funext"})


@dataclass
class GlobalEntry:
    name: str
    flavor: str  # "def" | "thm" | "axiom"
    type_term: S.Term
    type: Value
    body: Optional[S.Term] = None
    _value: Optional[Value] = field(default=None, repr=False)

    @property
    def opaque(self) -> bool:
        return self.flavor != "def"


class Signature:
    """Top-level declarations: transparent definitions, opaque theorems, axioms."""

    def __init__(self, allowlist: Iterable[str] = DEFAULT_AXIOMS):
        self.allowlist = frozenset(allowlist)
        self.entries: dict[str, GlobalEntry] = {}

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def is_axiom(self, name: str) -> bool:
        e = self.entries.get(name)
        return e is not None and e.flavor == "axiom"

    def unfold(self, name: str) -> Optional[Value]:
        e = self.entries[name]
        if e.opaque or e.body is None:
            return None
        if e._value is None:
            e._value = evaluate(self, None, e.body)
        return e._value

    def value_of(self, name: str) -> Value:
        """The value of ``name`` with its body unfolded even when opaque."""
        e = self.entries[name]
        if e.body is None:
            return evaluate(self, None, S.AxiomRef(name) if e.flavor == "axiom" else S.Global(name))
        if e._value is None:
            e._value = evaluate(self, None, e.body)
        return e._value

    def global_type(self, name: str) -> Value:
        return self.entries[name].type

    def axiom_type(self, name: str) -> Value:
        return self.entries[name].type

    def eval(self, t: S.Term) -> Value:
        return evaluate(self, None, t)


@dataclass(frozen=True)
class Context:
    """Local typing context; ``types[i]`` is the type of de Bruijn level ``i``."""

    sig: Signature
    names: tuple = ()
    types: tuple = ()
    env: object = None

    @property
    def depth(self) -> int:
        return len(self.types)

    def bind(self, name: str, ty: Value) -> "Context":
        v = fresh(self.depth, ty)
        return Context(self.sig, self.names + (name,), self.types + (ty,), (v, self.env))

    def eval(self, t: S.Term) -> Value:
        return evaluate(self.sig, self.env, t)

    def closure(self, body: S.Term, names: tuple = ("",)) -> Closure:
        return Closure(self.sig, self.env, body, names)


# hook used to render normal forms inside diagnostics; the surface printer
# installs itself here so the kernel has no import-time dependency on it
Renderer = Callable[[S.Term, tuple], str]
_renderer: Optional[Renderer] = None


def set_renderer(fn: Optional[Renderer]) -> None:
    global _renderer
    _renderer = fn


def render(t: S.Term, names: tuple = ()) -> str:
    if _renderer is None:
        return repr(t)
    try:
        return _renderer(t, names)
    except Exception:  # diagnostics must never mask the original error
        return repr(t)


def _conversion_failure(ctx: Context, expected: Value, actual: Value, span) -> ConversionFailure:
    exp = quote_type(ctx.depth, expected)
    act = quote_type(ctx.depth, actual)
    return ConversionFailure(exp, act, span, (render(exp, ctx.names), render(act, ctx.names)))


def _value_failure(ctx: Context, expected: Value, actual: Value, ty: Value, span) -> ConversionFailure:
    exp = quote(ctx.depth, expected, ty)
    act = quote(ctx.depth, actual, ty)
    return ConversionFailure(exp, act, span, (render(exp, ctx.names), render(act, ctx.names)))


def subtype(depth: int, a: Value, b: Value) -> bool:
    """``a`` may be used where ``b`` is expected (cumulativity, covariant in codomains)."""
    match a, b:
        case VUniverse(i), VUniverse(j):
            return i <= j
        case VPi(), VPi():
            if not conv_type(depth, a.domain, b.domain):
                return False
            x = fresh(depth, a.domain)
            return subtype(depth + 1, a.codomain(x), b.codomain(x))
        case VSigma(), VSigma():
            if not subtype(depth, a.first, b.first):
                return False
            x = fresh(depth, a.first)
            return subtype(depth + 1, a.second(x), b.second(x))
    return conv_type(depth, a, b)


# ---------------------------------------------------------------------------


def infer(ctx: Context, t: S.Term) -> Value:
    """The type of an inferable term."""
    return infer_elab(ctx, t)[1]


def check_type(ctx: Context, t: S.Term) -> tuple[S.Term, int]:
    """Check that ``t`` is a type; return it elaborated with its universe level."""
    term, ty = infer_elab(ctx, t)
    if not isinstance(ty, VUniverse):
        raise ExpectedType(
            f"expected a type, but this has type {render(quote_type(ctx.depth, ty), ctx.names)}", t.span
        )
    return term, ty.level


def _level(ctx: Context, level: int, span) -> VUniverse:
    if level > MAX_LEVEL:
        raise UniverseOverflow(f"universe level {level} exceeds Type{MAX_LEVEL}", span)
    return VUniverse(level)


def infer_elab(ctx: Context, t: S.Term) -> tuple[S.Term, Value]:
    try:
        return _infer(ctx, t)
    except TypeCheckError as e:
        raise e.with_span(t.span)


def _infer(ctx: Context, t: S.Term) -> tuple[S.Term, Value]:
    match t:
        case S.Var(i):
            if i >= ctx.depth:
                raise UnboundName(f"#{i}", t.span)
            return t, ctx.types[ctx.depth - 1 - i]
        case S.Global(name) | S.AxiomRef(name):
            if name not in ctx.sig:
                raise UnboundName(name, t.span)
            if ctx.sig.is_axiom(name):
                return S.AxiomRef(name, span=t.span), ctx.sig.entries[name].type
            return S.Global(name, span=t.span), ctx.sig.entries[name].type
        case S.Universe(level):
            if level + 1 > MAX_LEVEL:
                raise UniverseOverflow(f"Type{level} has no classifier below Type{MAX_LEVEL + 1}", t.span)
            return t, VUniverse(level + 1)
        case S.Nat() | S.Bool2() | S.Unit():
            return t, VUniverse(0)
        case S.Zero():
            return t, V_NAT
        case S.Suc(n):
            return S.Suc(check(ctx, n, V_NAT), span=t.span), V_NAT
        case S.TT() | S.FF():
            return t, V_BOOL2
        case S.Star():
            return t, V_UNIT
        case S.Pi(dom, cod):
            d, i = check_type(ctx, dom)
            c, j = check_type(ctx.bind(t.name, ctx.eval(d)), cod)
            return S.Pi(d, c, t.name, span=t.span), _level(ctx, max(i, j), t.span)
        case S.Sigma(a, b):
            a2, i = check_type(ctx, a)
            b2, j = check_type(ctx.bind(t.name, ctx.eval(a2)), b)
            return S.Sigma(a2, b2, t.name, span=t.span), _level(ctx, max(i, j), t.span)
        case S.Sum(a, b):
            a2, i = check_type(ctx, a)
            b2, j = check_type(ctx, b)
            return S.Sum(a2, b2, span=t.span), VUniverse(max(i, j))
        case S.IdType(a, x, y):
            a2, i = check_type(ctx, a)
            av = ctx.eval(a2)
            return S.IdType(a2, check(ctx, x, av), check(ctx, y, av), span=t.span), VUniverse(i)
        case S.Ann(term, ty):
            ty2, _ = check_type(ctx, ty)
            tyv = ctx.eval(ty2)
            return check(ctx, term, tyv), tyv
        case S.Lam(body) if t.domain is not None:
            d, _ = check_type(ctx, t.domain)
            dv = ctx.eval(d)
            inner = ctx.bind(t.name, dv)
            b, bty = infer_elab(inner, body)
            cod = quote_type(inner.depth, bty)
            return S.Lam(b, t.name, span=t.span), VPi(dv, ctx.closure(cod, (t.name,)))
        case S.App(fn, arg):
            f, fty = infer_elab(ctx, fn)
            if not isinstance(fty, VPi):
                raise ExpectedFunction(
                    f"cannot apply a term of type {render(quote_type(ctx.depth, fty), ctx.names)}", fn.span
                )
            a = check(ctx, arg, fty.domain)
            return S.App(f, a, span=t.span), fty.codomain(ctx.eval(a))
        case S.Fst(p):
            p2, pty = infer_elab(ctx, p)
            if not isinstance(pty, VSigma):
                raise ExpectedPair(f"fst of a term of type {render(quote_type(ctx.depth, pty), ctx.names)}", p.span)
            return S.Fst(p2, span=t.span), pty.first
        case S.Snd(p):
            p2, pty = infer_elab(ctx, p)
            if not isinstance(pty, VSigma):
                raise ExpectedPair(f"snd of a term of type {render(quote_type(ctx.depth, pty), ctx.names)}", p.span)
            return S.Snd(p2, span=t.span), pty.second(vfst(ctx.eval(p2)))
        case S.J():
            return _infer_j(ctx, t)
        case S.NatElim(motive, z, s, target):
            m = _check_motive(ctx, motive, ((t.names[0], V_NAT),))
            mclo = ctx.closure(m, t.names[:1])
            z2 = check(ctx, z, mclo(V_ZERO))
            n = fresh(ctx.depth, V_NAT)
            inner = ctx.bind(t.names[1], V_NAT).bind(t.names[2], mclo(n))
            s2 = check(inner, s, mclo(VSuc(n)))
            tg = check(ctx, target, V_NAT)
            out = S.NatElim(m, z2, s2, tg, names=t.names, span=t.span)
            return out, mclo(ctx.eval(tg))
        case S.BoolElim(motive, tc, fc, target):
            m = _check_motive(ctx, motive, ((t.names[0], V_BOOL2),))
            mclo = ctx.closure(m, t.names)
            tc2 = check(ctx, tc, mclo(V_TT))
            fc2 = check(ctx, fc, mclo(V_FF))
            tg = check(ctx, target, V_BOOL2)
            return S.BoolElim(m, tc2, fc2, tg, names=t.names, span=t.span), mclo(ctx.eval(tg))
        case S.SumElim(motive, lc, rc, target):
            tg, tty = infer_elab(ctx, target)
            if not isinstance(tty, VSum):
                raise ExpectedInductive(
                    f"sumElim on a term of type {render(quote_type(ctx.depth, tty), ctx.names)}", target.span
                )
            m = _check_motive(ctx, motive, ((t.names[0], tty),))
            mclo = ctx.closure(m, t.names[:1])
            a = fresh(ctx.depth, tty.left)
            lc2 = check(ctx.bind(t.names[1], tty.left), lc, mclo(VInl(a)))
            b = fresh(ctx.depth, tty.right)
            rc2 = check(ctx.bind(t.names[2], tty.right), rc, mclo(VInr(b)))
            return S.SumElim(m, lc2, rc2, tg, names=t.names, span=t.span), mclo(ctx.eval(tg))
        case S.Lam() | S.Pair() | S.Refl() | S.Inl() | S.Inr():
            raise CannotInfer(t, t.span)
    raise CannotInfer(t, t.span)


def _check_motive(ctx: Context, motive: S.Term, binders) -> S.Term:
    inner = ctx
    for name, ty in binders:
        inner = inner.bind(name, ty)
    m, _ = check_type(inner, motive)
    return m


def _infer_j(ctx: Context, t: S.J) -> tuple[S.Term, Value]:
    # the carrier comes from the path's type when inferable, else from lhs
    carrier = None
    path = None
    try:
        path, pty = infer_elab(ctx, t.path)
        if isinstance(pty, VId):
            carrier = pty.carrier
        else:
            raise ExpectedInductive(
                f"J on a term of type {render(quote_type(ctx.depth, pty), ctx.names)}", t.path.span
            )
    except CannotInfer:
        pass
    if carrier is None:
        try:
            _, carrier = infer_elab(ctx, t.lhs)
        except CannotInfer:
            _, carrier = infer_elab(ctx, t.rhs)
    lhs = check(ctx, t.lhs, carrier)
    rhs = check(ctx, t.rhs, carrier)
    lv, rv = ctx.eval(lhs), ctx.eval(rhs)
    id_ty = VId(carrier, lv, rv)
    if path is None:
        path = check(ctx, t.path, id_ty)
    else:
        pty = infer(ctx, path)
        if not conv_type(ctx.depth, pty, id_ty):
            raise _conversion_failure(ctx, id_ty, pty, t.path.span)
    xn, yn, pn, bn = t.names
    x = fresh(ctx.depth, carrier)
    y = fresh(ctx.depth + 1, carrier)
    inner = ctx.bind(xn, carrier).bind(yn, carrier).bind(pn, VId(carrier, x, y))
    m, _ = check_type(inner, t.motive)
    mclo = ctx.closure(m, (xn, yn, pn))
    bx = fresh(ctx.depth, carrier)
    base = check(ctx.bind(bn, carrier), t.base, mclo(bx, bx, VRefl(bx)))
    out = S.J(m, base, lhs, rhs, path, names=t.names, span=t.span)
    return out, mclo(lv, rv, ctx.eval(path))


def check(ctx: Context, t: S.Term, ty: Value) -> S.Term:
    """Check ``t`` against ``ty``; return the elaborated term."""
    try:
        return _check(ctx, t, ty)
    except TypeCheckError as e:
        raise e.with_span(t.span)


def _check(ctx: Context, t: S.Term, ty: Value) -> S.Term:
    match t, ty:
        case S.Lam(body), VPi(dom, cod):
            if t.domain is not None:
                d, _ = check_type(ctx, t.domain)
                dv = ctx.eval(d)
                if not conv_type(ctx.depth, dv, dom):
                    raise _conversion_failure(ctx, dom, dv, t.domain.span)
            x = fresh(ctx.depth, dom)
            b = check(ctx.bind(t.name, dom), body, cod(x))
            return S.Lam(b, t.name, span=t.span)
        case S.Lam(), _:
            raise ExpectedFunction(
                f"a function was given where {render(quote_type(ctx.depth, ty), ctx.names)} is expected", t.span
            )
        case S.Pair(a, b), VSigma(first, second):
            a2 = check(ctx, a, first)
            b2 = check(ctx, b, second(ctx.eval(a2)))
            return S.Pair(a2, b2, span=t.span)
        case S.Pair(), _:
            raise ExpectedPair(
                f"a pair was given where {render(quote_type(ctx.depth, ty), ctx.names)} is expected", t.span
            )
        case S.Refl(x), VId(carrier, lhs, rhs):
            x2 = check(ctx, x, carrier)
            xv = ctx.eval(x2)
            if not conv(ctx.depth, lhs, xv, carrier):
                raise _value_failure(ctx, lhs, xv, carrier, t.span)
            if not conv(ctx.depth, rhs, xv, carrier):
                raise _value_failure(ctx, rhs, xv, carrier, t.span)
            return S.Refl(x2, span=t.span)
        case S.Inl(x), VSum(left, _):
            return S.Inl(check(ctx, x, left), span=t.span)
        case S.Inr(x), VSum(_, right):
            return S.Inr(check(ctx, x, right), span=t.span)
        case S.Refl() | S.Inl() | S.Inr(), _:
            raise ExpectedInductive(
                f"constructor does not fit {render(quote_type(ctx.depth, ty), ctx.names)}", t.span
            )
        case S.Ann(term, aty), _:
            # keep checking mode when the annotation agrees, for better errors
            aty2, _ = check_type(ctx, aty)
            av = ctx.eval(aty2)
            if not subtype(ctx.depth, av, ty):
                raise _conversion_failure(ctx, ty, av, t.span)
            return check(ctx, term, av)
    term, actual = infer_elab(ctx, t)
    if not subtype(ctx.depth, actual, ty):
        raise _conversion_failure(ctx, ty, actual, t.span)
    return term


# ---------------------------------------------------------------------------


def check_declaration(
    sig: Signature,
    name: str,
    type_term: S.Term,
    body: Optional[S.Term],
    flavor: str = "def",
    span=None,
) -> GlobalEntry:
    """Check one top-level declaration and add it to ``sig``."""
    if name in sig:
        raise DuplicateDeclaration(name, span)
    ctx = Context(sig)
    ty_term, _ = check_type(ctx, type_term)
    ty = ctx.eval(ty_term)
    if body is None:
        if name not in sig.allowlist:
            raise UnknownAxiom(name, span)
        entry = GlobalEntry(name, "axiom", ty_term, ty)
    else:
        if flavor == "axiom":
            raise TypeCheckError(f"axiom '{name}' may not have a body", span)
        b = check(ctx, body, ty)
        entry = GlobalEntry(name, flavor, ty_term, ty, b)
    sig.entries[name] = entry
    return entry


def normalize(ctx: Context, t: S.Term, ty: Optional[Value] = None) -> S.Term:
    """Normal form of a checked term; type-directed when ``ty`` is given."""
    return quote(ctx.depth, ctx.eval(t), ty)


def normalize_type(ctx: Context, t: S.Term) -> S.Term:
    return quote_type(ctx.depth, ctx.eval(t))
