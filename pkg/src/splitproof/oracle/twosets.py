"""Two-element sets and the product Z * W := (Z equivalent to W)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .endo import OracleError


@dataclass(frozen=True)
class TwoSet:
    elements: tuple

    def __post_init__(self):
        if len(self.elements) != 2 or self.elements[0] == self.elements[1]:
            raise OracleError(f"{self.elements} is not a two-element set")

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


@dataclass(frozen=True)
class Bij:
    """A bijection between two-sets, stored as its graph."""

    graph: frozenset  # {(z, w), (z', w')}

    def __post_init__(self):
        object.__setattr__(self, "graph", frozenset(self.graph))

    def __call__(self, z):
        for a, b in self.graph:
            if a == z:
                return b
        raise OracleError(f"{z} not in the domain of {self.graph}")

    def inverse(self) -> "Bij":
        return Bij(frozenset((b, a) for a, b in self.graph))


TWO = TwoSet((0, 1))


def bijections(Z: TwoSet, W: TwoSet) -> list[Bij]:
    return [Bij(tuple(zip(Z.elements, img))) for img in itertools.permutations(W.elements)]


def star_product(Z: TwoSet, W: TwoSet) -> TwoSet:
    return TwoSet(tuple(bijections(Z, W)))


def _is_bijection(fn, A: TwoSet, B: TwoSet) -> bool:
    return all(fn(a) in B for a in A) and len({fn(a) for a in A}) == 2


def sigma(Y: TwoSet, Z: TwoSet, W: TwoSet, e: Bij) -> Bij:
    """sigma(e)(z)(y) = e(y)(z), from Y * (Z * W) to Z * (Y * W)."""
    YW = star_product(Y, W)
    out = []
    for z in Z:
        graph = tuple((y, e(y)(z)) for y in Y)
        g = Bij(graph)
        if g not in YW:
            raise OracleError("sigma(e)(z) is not a bijection Y -> W")
        out.append((z, g))
    return Bij(tuple(out))


@dataclass
class LawReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, law: str, ok: bool, detail: str) -> None:
        self.checked[law] = self.checked.get(law, 0) + 1
        if not ok:
            self.failures.append(f"{law}: {detail}")

    @property
    def passed(self) -> bool:
        return not self.failures


def labelled_two_sets(count: int = 4) -> list[TwoSet]:
    """``count`` distinct two-sets, each in both orders."""
    return [TwoSet(order) for i in range(count) for order in ((f"a{i}", f"b{i}"), (f"b{i}", f"a{i}"))]


def star_laws(count: int = 4) -> LawReport:
    """Check the two-set laws exhaustively over labelled two-sets."""
    rep = LawReport()
    sets = labelled_two_sets(count) + [TWO]
    for Z, W in itertools.product(sets, repeat=2):
        ZW, WZ = star_product(Z, W), star_product(W, Z)
        rep.record("size", len(set(ZW)) == 2, f"{Z} * {W}")
        # symmetry: inversion Z*W -> W*Z, an involution
        flip = {e: e.inverse() for e in ZW}
        rep.record("symmetry", set(flip.values()) == set(WZ) and all(flip[e].inverse() == e for e in ZW), f"{Z} {W}")
        # unit: 2 * W -> W, e |-> e(1)
        rep.record("unit", _is_bijection(lambda e: e(1), star_product(TWO, W), W), f"{W}")
        # Z * (Z * W) -> W: g |-> g(z)(z), independent of z
        ok = True
        images = set()
        for g in star_product(Z, ZW):
            vals = {g(z)(z) for z in Z}
            ok &= len(vals) == 1
            images |= vals
        rep.record("self-inverse", ok and images == set(W), f"{Z} {W}")
    for Y, Z, W in itertools.product(sets, repeat=3):
        YZW = star_product(Y, star_product(Z, W))
        ZYW = star_product(Z, star_product(Y, W))
        try:
            images = {sigma(Y, Z, W, e) for e in YZW}
            back = all(sigma(Z, Y, W, sigma(Y, Z, W, e)) == e for e in YZW)
            rep.record("sigma-bijective", images == set(ZYW), f"{Y} {Z} {W}")
            rep.record("sigma-involutive", back, f"{Y} {Z} {W}")
        except OracleError as err:
            rep.record("sigma-well-defined", False, str(err))
            continue
        rep.record("sigma-well-defined", True, "")
    return rep
