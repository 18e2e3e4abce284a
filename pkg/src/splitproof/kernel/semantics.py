"""Normalization by evaluation: values, ``evaluate``, ``quote`` and ``conv``.

Environments are cons lists ``(value, rest)`` so that extending under a binder
is O(1); index ``i`` is the ``i``-th cell from the front.  Neutral values keep
their type, and every elimination frame records the type of the neutral it was
applied to, which is what lets ``quote`` produce eta-long normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol

from . import syntax as S


class EvalError(Exception):
    """Raised when evaluation meets an ill-typed redex (never on checked code)."""


class Signature(Protocol):
    def unfold(self, name: str) -> Optional["Value"]: ...

    def global_type(self, name: str) -> "Value": ...

    def axiom_type(self, name: str) -> "Value": ...


Env = Optional[tuple]


def env_lookup(env: Env, index: int) -> "Value":
    for _ in range(index):
        env = env[1]
    return env[0]


def env_from_list(values) -> Env:
    env: Env = None
    for v in values:
        env = (v, env)
    return env


class Value:
    __slots__ = ()


class Closure:
    __slots__ = ("sig", "env", "body", "names")

    def __init__(self, sig: Signature, env: Env, body: S.Term, names: tuple = ("",)):
        self.sig = sig
        self.env = env
        self.body = body
        self.names = names

    def __call__(self, *args: Value) -> Value:
        env = self.env
        for a in args:
            env = (a, env)
        return evaluate(self.sig, env, self.body)

    @property
    def name(self) -> str:
        return self.names[0]


@dataclass(frozen=True, slots=True, eq=False)
class VUniverse(Value):
    level: int


@dataclass(frozen=True, slots=True, eq=False)
class VPi(Value):
    domain: Value
    codomain: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VLam(Value):
    closure: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VSigma(Value):
    first: Value
    second: Closure


@dataclass(frozen=True, slots=True, eq=False)
class VPair(Value):
    first: Value
    second: Value


@dataclass(frozen=True, slots=True, eq=False)
class VId(Value):
    carrier: Value
    lhs: Value
    rhs: Value


@dataclass(frozen=True, slots=True, eq=False)
class VRefl(Value):
    point: Value


@dataclass(frozen=True, slots=True, eq=False)
class VNat(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VZero(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VSuc(Value):
    n: Value


@dataclass(frozen=True, slots=True, eq=False)
class VBool2(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VTT(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VFF(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VSum(Value):
    left: Value
    right: Value


@dataclass(frozen=True, slots=True, eq=False)
class VInl(Value):
    value: Value


@dataclass(frozen=True, slots=True, eq=False)
class VInr(Value):
    value: Value


@dataclass(frozen=True, slots=True, eq=False)
class VUnit(Value):
    pass


@dataclass(frozen=True, slots=True, eq=False)
class VStar(Value):
    pass


# heads of neutral terms


@dataclass(frozen=True, slots=True)
class HVar:
    level: int


@dataclass(frozen=True, slots=True)
class HGlobal:
    name: str


@dataclass(frozen=True, slots=True)
class HAxiom:
    name: str


# elimination frames; ``ty`` is the type of the value being eliminated


@dataclass(frozen=True, slots=True, eq=False)
class FApp:
    arg: Value
    ty: Optional[Value]


@dataclass(frozen=True, slots=True, eq=False)
class FFst:
    ty: Optional[Value]


@dataclass(frozen=True, slots=True, eq=False)
class FSnd:
    ty: Optional[Value]


@dataclass(frozen=True, slots=True, eq=False)
class FNatElim:
    motive: Closure
    zcase: Value
    scase: Closure


@dataclass(frozen=True, slots=True, eq=False)
class FBoolElim:
    motive: Closure
    tcase: Value
    fcase: Value


@dataclass(frozen=True, slots=True, eq=False)
class FSumElim:
    motive: Closure
    lcase: Closure
    rcase: Closure
    ty: Optional[Value]


@dataclass(frozen=True, slots=True, eq=False)
class FJ:
    motive: Closure
    base: Closure
    lhs: Value
    rhs: Value
    ty: Optional[Value]


@dataclass(frozen=True, slots=True, eq=False)
class VNeutral(Value):
    type: Optional[Value]
    head: object
    spine: tuple = ()


V_NAT = VNat()
V_ZERO = VZero()
V_BOOL2 = VBool2()
V_TT = VTT()
V_FF = VFF()
V_UNIT = VUnit()
V_STAR = VStar()


def fresh(level: int, ty: Optional[Value]) -> VNeutral:
    return VNeutral(ty, HVar(level))


def _extend(n: VNeutral, frame, ty: Optional[Value]) -> VNeutral:
    return VNeutral(ty, n.head, n.spine + (frame,))


# ---------------------------------------------------------------------------
# eliminators on values


def vapp(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return f.closure(a)
    if isinstance(f, VNeutral):
        ty = f.type
        rty = ty.codomain(a) if isinstance(ty, VPi) else None
        return _extend(f, FApp(a, ty), rty)
    raise EvalError(f"cannot apply {type(f).__name__}")


def vfst(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.first
    if isinstance(p, VNeutral):
        ty = p.type
        return _extend(p, FFst(ty), ty.first if isinstance(ty, VSigma) else None)
    raise EvalError(f"cannot project from {type(p).__name__}")


def vsnd(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.second
    if isinstance(p, VNeutral):
        ty = p.type
        rty = ty.second(vfst(p)) if isinstance(ty, VSigma) else None
        return _extend(p, FSnd(ty), rty)
    raise EvalError(f"cannot project from {type(p).__name__}")


def vnatelim(motive: Closure, z: Value, s: Closure, target: Value) -> Value:
    # iterate over numerals to keep Python recursion shallow
    preds = []
    while isinstance(target, VSuc):
        preds.append(target.n)
        target = target.n
    if isinstance(target, VZero):
        acc = z
    elif isinstance(target, VNeutral):
        acc = _extend(target, FNatElim(motive, z, s), motive(target))
    else:
        raise EvalError(f"natElim on {type(target).__name__}")
    for n in reversed(preds):
        acc = s(n, acc)
    return acc


def vboolelim(motive: Closure, t: Value, f: Value, target: Value) -> Value:
    if isinstance(target, VTT):
        return t
    if isinstance(target, VFF):
        return f
    if isinstance(target, VNeutral):
        return _extend(target, FBoolElim(motive, t, f), motive(target))
    raise EvalError(f"boolElim on {type(target).__name__}")


def vsumelim(motive: Closure, l: Closure, r: Closure, target: Value) -> Value:
    if isinstance(target, VInl):
        return l(target.value)
    if isinstance(target, VInr):
        return r(target.value)
    if isinstance(target, VNeutral):
        return _extend(target, FSumElim(motive, l, r, target.type), motive(target))
    raise EvalError(f"sumElim on {type(target).__name__}")


def vj(motive: Closure, base: Closure, lhs: Value, rhs: Value, path: Value) -> Value:
    if isinstance(path, VRefl):
        return base(path.point)
    if isinstance(path, VNeutral):
        return _extend(path, FJ(motive, base, lhs, rhs, path.type), motive(lhs, rhs, path))
    raise EvalError(f"J on {type(path).__name__}")


# ---------------------------------------------------------------------------
# evaluation


def evaluate(sig: Signature, env: Env, t: S.Term) -> Value:
    match t:
        case S.Var(i):
            return env_lookup(env, i)
        case S.App(fn, arg):
            return vapp(evaluate(sig, env, fn), evaluate(sig, env, arg))
        case S.Global(name):
            v = sig.unfold(name)
            if v is not None:
                return v
            return VNeutral(sig.global_type(name), HGlobal(name))
        case S.Lam(body):
            return VLam(Closure(sig, env, body, (t.name,)))
        case S.Pi(dom, cod):
            return VPi(evaluate(sig, env, dom), Closure(sig, env, cod, (t.name,)))
        case S.Sigma(a, b):
            return VSigma(evaluate(sig, env, a), Closure(sig, env, b, (t.name,)))
        case S.Pair(a, b):
            return VPair(evaluate(sig, env, a), evaluate(sig, env, b))
        case S.Fst(p):
            return vfst(evaluate(sig, env, p))
        case S.Snd(p):
            return vsnd(evaluate(sig, env, p))
        case S.IdType(a, x, y):
            return VId(evaluate(sig, env, a), evaluate(sig, env, x), evaluate(sig, env, y))
        case S.Refl(x):
            return VRefl(evaluate(sig, env, x))
        case S.J(motive, base, lhs, rhs, path):
            return vj(
                Closure(sig, env, motive, t.names[:3]),
                Closure(sig, env, base, t.names[3:]),
                evaluate(sig, env, lhs),
                evaluate(sig, env, rhs),
                evaluate(sig, env, path),
            )
        case S.Universe(level):
            return VUniverse(level)
        case S.Nat():
            return V_NAT
        case S.Zero():
            return V_ZERO
        case S.Suc(n):
            return VSuc(evaluate(sig, env, n))
        case S.NatElim(motive, z, s, target):
            return vnatelim(
                Closure(sig, env, motive, t.names[:1]),
                evaluate(sig, env, z),
                Closure(sig, env, s, t.names[1:]),
                evaluate(sig, env, target),
            )
        case S.Bool2():
            return V_BOOL2
        case S.TT():
            return V_TT
        case S.FF():
            return V_FF
        case S.BoolElim(motive, tc, fc, target):
            return vboolelim(
                Closure(sig, env, motive, t.names),
                evaluate(sig, env, tc),
                evaluate(sig, env, fc),
                evaluate(sig, env, target),
            )
        case S.Sum(a, b):
            return VSum(evaluate(sig, env, a), evaluate(sig, env, b))
        case S.Inl(x):
            return VInl(evaluate(sig, env, x))
        case S.Inr(x):
            return VInr(evaluate(sig, env, x))
        case S.SumElim(motive, lc, rc, target):
            return vsumelim(
                Closure(sig, env, motive, t.names[:1]),
                Closure(sig, env, lc, t.names[1:2]),
                Closure(sig, env, rc, t.names[2:]),
                evaluate(sig, env, target),
            )
        case S.Unit():
            return V_UNIT
        case S.Star():
            return V_STAR
        case S.Ann(x, _):
            return evaluate(sig, env, x)
        case S.AxiomRef(name):
            return VNeutral(sig.axiom_type(name), HAxiom(name))
    raise EvalError(f"cannot evaluate {type(t).__name__}")


# ---------------------------------------------------------------------------
# quotation


def quote(depth: int, v: Value, ty: Optional[Value] = None) -> S.Term:
    """Read back ``v`` as a beta-normal term, eta-long at Pi, Sigma and Unit.

    ``ty`` is the type of ``v``; neutral values carry their own.  Without a
    type, lambdas and pairs are read back structurally and no eta-expansion
    happens below them.
    """
    if ty is None and isinstance(v, VNeutral):
        ty = v.type
    match ty:
        case VPi(dom, cod):
            x = fresh(depth, dom)
            name = v.closure.name if isinstance(v, VLam) else cod.name
            return S.Lam(quote(depth + 1, vapp(v, x), cod(x)), _binder_name(name))
        case VSigma(dom, cod):
            a = vfst(v)
            return S.Pair(quote(depth, a, dom), quote(depth, vsnd(v), cod(a)))
        case VUnit():
            return S.Star()
        case VUniverse():
            return quote_type(depth, v)
        case VId(carrier, _, _) if isinstance(v, VRefl):
            return S.Refl(quote(depth, v.point, carrier))
        case VSum(left, right) if isinstance(v, (VInl, VInr)):
            if isinstance(v, VInl):
                return S.Inl(quote(depth, v.value, left))
            return S.Inr(quote(depth, v.value, right))
    return _quote_untyped(depth, v)


def _binder_name(name: str) -> str:
    return "" if name == "_" else name


def _quote_untyped(depth: int, v: Value) -> S.Term:
    match v:
        case VNeutral():
            return quote_neutral(depth, v)
        case VZero():
            return S.Zero()
        case VSuc():
            k = 0
            while isinstance(v, VSuc):
                v, k = v.n, k + 1
            t = quote(depth, v, V_NAT)
            for _ in range(k):
                t = S.Suc(t)
            return t
        case VTT():
            return S.TT()
        case VFF():
            return S.FF()
        case VStar():
            return S.Star()
        case VRefl(x):
            return S.Refl(quote(depth, x))
        case VInl(x):
            return S.Inl(quote(depth, x))
        case VInr(x):
            return S.Inr(quote(depth, x))
        case VLam(clo):
            return S.Lam(quote(depth + 1, clo(fresh(depth, None))), clo.name)
        case VPair(a, b):
            return S.Pair(quote(depth, a), quote(depth, b))
    return quote_type(depth, v)


def quote_type(depth: int, v: Value) -> S.Term:
    match v:
        case VUniverse(level):
            return S.Universe(level)
        case VPi(dom, cod):
            x = fresh(depth, dom)
            return S.Pi(quote_type(depth, dom), quote_type(depth + 1, cod(x)), cod.name)
        case VSigma(dom, cod):
            x = fresh(depth, dom)
            return S.Sigma(quote_type(depth, dom), quote_type(depth + 1, cod(x)), cod.name)
        case VId(a, x, y):
            return S.IdType(quote_type(depth, a), quote(depth, x, a), quote(depth, y, a))
        case VNat():
            return S.Nat()
        case VBool2():
            return S.Bool2()
        case VUnit():
            return S.Unit()
        case VSum(a, b):
            return S.Sum(quote_type(depth, a), quote_type(depth, b))
        case VNeutral():
            return quote_neutral(depth, v)
    raise EvalError(f"cannot quote {type(v).__name__} as a type")


def _quote_head(depth: int, head) -> S.Term:
    if isinstance(head, HVar):
        return S.Var(depth - 1 - head.level)
    if isinstance(head, HGlobal):
        return S.Global(head.name)
    return S.AxiomRef(head.name)


def quote_neutral(depth: int, n: VNeutral) -> S.Term:
    t = _quote_head(depth, n.head)
    prefix = VNeutral(None, n.head)
    for frame in n.spine:
        match frame:
            case FApp(arg, ty):
                dom = ty.domain if isinstance(ty, VPi) else None
                t = S.App(t, quote(depth, arg, dom))
            case FFst():
                t = S.Fst(t)
            case FSnd():
                t = S.Snd(t)
            case FNatElim(motive, z, s):
                x = fresh(depth, V_NAT)
                ih = fresh(depth + 1, motive(x))
                t = S.NatElim(
                    quote_type(depth + 1, motive(x)),
                    quote(depth, z, motive(V_ZERO)),
                    quote(depth + 2, s(x, ih), motive(VSuc(x))),
                    t,
                    names=motive.names + s.names,
                )
            case FBoolElim(motive, tc, fc):
                x = fresh(depth, V_BOOL2)
                t = S.BoolElim(
                    quote_type(depth + 1, motive(x)),
                    quote(depth, tc, motive(V_TT)),
                    quote(depth, fc, motive(V_FF)),
                    t,
                    names=motive.names,
                )
            case FSumElim(motive, lc, rc, ty):
                left = ty.left if isinstance(ty, VSum) else None
                right = ty.right if isinstance(ty, VSum) else None
                w = fresh(depth, ty)
                a = fresh(depth, left)
                b = fresh(depth, right)
                t = S.SumElim(
                    quote_type(depth + 1, motive(w)),
                    quote(depth + 1, lc(a), motive(VInl(a))),
                    quote(depth + 1, rc(b), motive(VInr(b))),
                    t,
                    names=motive.names + lc.names + rc.names,
                )
            case FJ(motive, base, lhs, rhs, ty):
                carrier = ty.carrier if isinstance(ty, VId) else None
                x = fresh(depth, carrier)
                y = fresh(depth + 1, carrier)
                p = fresh(depth + 2, VId(carrier, x, y) if carrier is not None else None)
                bx = fresh(depth, carrier)
                t = S.J(
                    quote_type(depth + 3, motive(x, y, p)),
                    quote(depth + 1, base(bx), motive(bx, bx, VRefl(bx))),
                    quote(depth, lhs, carrier),
                    quote(depth, rhs, carrier),
                    t,
                    names=motive.names + base.names,
                )
        prefix = VNeutral(None, n.head, prefix.spine + (frame,))
    return t


# ---------------------------------------------------------------------------
# conversion


def conv(depth: int, a: Value, b: Value, ty: Optional[Value]) -> bool:
    """Type-directed definitional equality of two values of type ``ty``."""
    if a is b:
        return True
    if ty is None:
        if isinstance(a, VNeutral) and a.type is not None:
            ty = a.type
        elif isinstance(b, VNeutral) and b.type is not None:
            ty = b.type
    match ty:
        case VPi(dom, cod):
            x = fresh(depth, dom)
            return conv(depth + 1, vapp(a, x), vapp(b, x), cod(x))
        case VSigma(dom, cod):
            a1 = vfst(a)
            if not conv(depth, a1, vfst(b), dom):
                return False
            return conv(depth, vsnd(a), vsnd(b), cod(a1))
        case VUnit():
            return True
        case VUniverse():
            return conv_type(depth, a, b)
        case VNat():
            return _conv_nat(depth, a, b)
        case VId(carrier, _, _):
            if isinstance(a, VRefl) and isinstance(b, VRefl):
                return conv(depth, a.point, b.point, carrier)
        case VSum(left, right):
            if isinstance(a, VInl) and isinstance(b, VInl):
                return conv(depth, a.value, b.value, left)
            if isinstance(a, VInr) and isinstance(b, VInr):
                return conv(depth, a.value, b.value, right)
    return _conv_structural(depth, a, b)


def _conv_nat(depth: int, a: Value, b: Value) -> bool:
    while isinstance(a, VSuc) and isinstance(b, VSuc):
        a, b = a.n, b.n
    if isinstance(a, VZero) and isinstance(b, VZero):
        return True
    if isinstance(a, VNeutral) and isinstance(b, VNeutral):
        return conv_neutral(depth, a, b)
    return False


def _conv_structural(depth: int, a: Value, b: Value) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case VNeutral():
            return conv_neutral(depth, a, b)
        case VZero() | VTT() | VFF() | VStar():
            return True
        case VSuc():
            return _conv_nat(depth, a, b)
        case VRefl():
            return conv(depth, a.point, b.point, None)
        case VInl() | VInr():
            return conv(depth, a.value, b.value, None)
        case VLam():
            x = fresh(depth, None)
            return conv(depth + 1, vapp(a, x), vapp(b, x), None)
        case VPair():
            return conv(depth, a.first, b.first, None) and conv(depth, a.second, b.second, None)
    return conv_type(depth, a, b)


def conv_type(depth: int, a: Value, b: Value) -> bool:
    if a is b:
        return True
    if type(a) is not type(b):
        return False
    match a:
        case VUniverse(level):
            return level == b.level
        case VPi(dom, cod):
            if not conv_type(depth, dom, b.domain):
                return False
            x = fresh(depth, dom)
            return conv_type(depth + 1, cod(x), b.codomain(x))
        case VSigma(dom, cod):
            if not conv_type(depth, dom, b.first):
                return False
            x = fresh(depth, dom)
            return conv_type(depth + 1, cod(x), b.second(x))
        case VId(carrier, x, y):
            return (
                conv_type(depth, carrier, b.carrier)
                and conv(depth, x, b.lhs, carrier)
                and conv(depth, y, b.rhs, carrier)
            )
        case VSum(left, right):
            return conv_type(depth, left, b.left) and conv_type(depth, right, b.right)
        case VNat() | VBool2() | VUnit():
            return True
        case VNeutral():
            return conv_neutral(depth, a, b)
    return False


def conv_neutral(depth: int, a: VNeutral, b: VNeutral) -> bool:
    if a.head != b.head or len(a.spine) != len(b.spine):
        return False
    for fa, fb in zip(a.spine, b.spine):
        if type(fa) is not type(fb):
            return False
        match fa:
            case FApp(arg, ty):
                dom = ty.domain if isinstance(ty, VPi) else None
                if not conv(depth, arg, fb.arg, dom):
                    return False
            case FFst() | FSnd():
                pass
            case FNatElim(motive, z, s):
                x = fresh(depth, V_NAT)
                mx = motive(x)
                if not conv_type(depth + 1, mx, fb.motive(x)):
                    return False
                if not conv(depth, z, fb.zcase, motive(V_ZERO)):
                    return False
                ih = fresh(depth + 1, mx)
                if not conv(depth + 2, s(x, ih), fb.scase(x, ih), motive(VSuc(x))):
                    return False
            case FBoolElim(motive, tc, fc):
                x = fresh(depth, V_BOOL2)
                if not conv_type(depth + 1, motive(x), fb.motive(x)):
                    return False
                if not conv(depth, tc, fb.tcase, motive(V_TT)):
                    return False
                if not conv(depth, fc, fb.fcase, motive(V_FF)):
                    return False
            case FSumElim(motive, lc, rc, ty):
                left = ty.left if isinstance(ty, VSum) else None
                right = ty.right if isinstance(ty, VSum) else None
                w = fresh(depth, ty)
                if not conv_type(depth + 1, motive(w), fb.motive(w)):
                    return False
                x = fresh(depth, left)
                if not conv(depth + 1, lc(x), fb.lcase(x), motive(VInl(x))):
                    return False
                y = fresh(depth, right)
                if not conv(depth + 1, rc(y), fb.rcase(y), motive(VInr(y))):
                    return False
            case FJ(motive, base, lhs, rhs, ty):
                carrier = ty.carrier if isinstance(ty, VId) else None
                x = fresh(depth, carrier)
                y = fresh(depth + 1, carrier)
                p = fresh(depth + 2, VId(carrier, x, y) if carrier is not None else None)
                if not conv_type(depth + 3, motive(x, y, p), fb.motive(x, y, p)):
                    return False
                if not conv(depth + 1, base(x), fb.base(x), motive(x, x, VRefl(x))):
                    return False
                if not conv(depth, lhs, fb.lhs, carrier) or not conv(depth, rhs, fb.rhs, carrier):
                    return False
    return True
