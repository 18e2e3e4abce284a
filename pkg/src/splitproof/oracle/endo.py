"""Finite endofunctions, retractions and sequential limits, as plain tables."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

MAX_ENDO_SIZE = 6


class OracleError(ValueError):
    pass


def compose(g: tuple, f: tuple) -> tuple:
    """The table of g after f."""
    return tuple(g[x] for x in f)


@dataclass(frozen=True)
class FinEndo:
    size: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.size or any(not 0 <= v < self.size for v in self.table):
            raise OracleError(f"table {self.table} is not an endofunction on {self.size} points")

    @property
    def idempotent(self) -> bool:
        return all(self.table[v] == v for v in self.table)

    def fixed_points(self) -> list[int]:
        return [x for x in range(self.size) if self.table[x] == x]


@dataclass(frozen=True)
class FinRetraction:
    """A retract of X = {0..n-1}: r : X -> A and s : A -> X with r s = id."""

    size_x: int
    size_a: int
    r: tuple
    s: tuple

    def __post_init__(self):
        if len(self.r) != self.size_x or any(not 0 <= v < self.size_a for v in self.r):
            raise OracleError(f"r {self.r} is not a map from {self.size_x} to {self.size_a} points")
        if len(self.s) != self.size_a or any(not 0 <= v < self.size_x for v in self.s):
            raise OracleError(f"s {self.s} is not a map from {self.size_a} to {self.size_x} points")
        if compose(self.r, self.s) != tuple(range(self.size_a)):
            raise OracleError(f"r {self.r} is not a retraction of s {self.s}")

    def idempotent(self) -> FinEndo:
        return FinEndo(self.size_x, compose(self.s, self.r))


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_ENDO_SIZE:
        raise OracleError(f"size {n} out of range 1..{MAX_ENDO_SIZE}")


def all_endos(n: int) -> list[FinEndo]:
    _check_size(n)
    return [FinEndo(n, t) for t in itertools.product(range(n), repeat=n)]


def enumerate_idempotents(n: int) -> list[FinEndo]:
    """Idempotent tables on n points in lexicographic order, built from (image, projection) data."""
    _check_size(n)
    out = []
    for k in range(1, n + 1):
        for image in itertools.combinations(range(n), k):
            rest = [x for x in range(n) if x not in image]
            for targets in itertools.product(image, repeat=len(rest)):
                table = list(range(n))
                for x, y in zip(rest, targets):
                    table[x] = y
                out.append(FinEndo(n, tuple(table)))
    return sorted(out, key=lambda f: f.table)


def split_via_fix(f: FinEndo) -> FinRetraction:
    """A := fixed points, s := inclusion, r := corestriction of f."""
    if not f.idempotent:
        raise OracleError(f"{f.table} is not idempotent")
    fix = f.fixed_points()
    index = {x: i for i, x in enumerate(fix)}
    R = FinRetraction(f.size, len(fix), tuple(index[f.table[x]] for x in range(f.size)), tuple(fix))
    if R.idempotent() != f:
        raise OracleError(f"s r differs from f for {f.table}")
    return R


def enumerate_retractions(n: int, max_a: Optional[int] = None) -> dict[tuple, list[FinRetraction]]:
    """All retractions with |A| <= max_a, grouped by the table s r."""
    _check_size(n)
    max_a = n if max_a is None else max_a
    if not 1 <= max_a <= n:
        raise OracleError(f"max_a {max_a} out of range 1..{n}")
    groups: dict[tuple, list[FinRetraction]] = defaultdict(list)
    for m in range(1, max_a + 1):
        # r s = id forces s injective; r is free off the image of s
        for s in itertools.permutations(range(n), m):
            rest = [x for x in range(n) if x not in s]
            for vals in itertools.product(range(m), repeat=len(rest)):
                r = [0] * n
                for a, x in enumerate(s):
                    r[x] = a
                for x, v in zip(rest, vals):
                    r[x] = v
                R = FinRetraction(n, m, tuple(r), tuple(s))
                groups[compose(R.s, R.r)].append(R)
    return dict(sorted(groups.items()))


def enumerate_retractions_brute(n: int, max_a: Optional[int] = None) -> dict[tuple, list[FinRetraction]]:
    """Same grouping by filtering every pair of tables; only for cross-checks at small n."""
    max_a = n if max_a is None else max_a
    groups: dict[tuple, list[FinRetraction]] = defaultdict(list)
    for m in range(1, max_a + 1):
        for r in itertools.product(range(m), repeat=n):
            for s in itertools.product(range(n), repeat=m):
                if compose(r, s) == tuple(range(m)):
                    groups[compose(s, r)].append(FinRetraction(n, m, r, s))
    return dict(sorted(groups.items()))


def induced_map(R1: FinRetraction, R2: FinRetraction) -> tuple:
    """The comparison A1 -> A2 used for uniqueness of splittings: r2 after s1."""
    return compose(R2.r, R1.s)


def is_isomorphism(R1: FinRetraction, R2: FinRetraction, phi: tuple) -> bool:
    """phi : A1 -> A2 is a bijection with phi r1 = r2 and s2 phi = s1."""
    return (
        R1.size_a == R2.size_a
        and sorted(phi) == list(range(R2.size_a))
        and compose(phi, R1.r) == R2.r
        and compose(R2.s, phi) == R1.s
    )


def find_isomorphism(R1: FinRetraction, R2: FinRetraction) -> Optional[tuple]:
    """Exhaustive search for an isomorphism of retractions over X."""
    if R1.size_a != R2.size_a:
        return None
    for phi in itertools.permutations(range(R2.size_a)):
        if is_isomorphism(R1, R2, phi):
            return phi
    return None


@dataclass(frozen=True)
class LimitResult:
    sizes: tuple
    extendable: tuple
    stabilized: bool
    stable_from: Optional[int]
    cardinality: Optional[int]


def seq_limit_size(f: FinEndo, depth: int) -> LimitResult:
    """Count chains a_0 .. a_j with f(a_{i+1}) = a_i and certify the inverse limit.

    ``sizes[j]`` counts all chains of length j+1.  ``extendable[j]`` counts
    those that extend n further steps past level depth, where n is the size
    of the carrier.  A chain that extends n steps repeats a point, so its
    entries are periodic; this keeps tail chains that die just past the
    horizon from spoiling the certificate.  The limit is certified from
    level j0 on when every extendable chain at each level j0 <= j < depth
    has exactly one extendable one-step extension; its cardinality is then
    ``extendable[j0]``.
    """
    if depth < 2:
        raise OracleError("depth must be at least 2")
    n, t = f.size, f.table
    horizon = depth + n
    pre = [[y for y in range(n) if t[y] == x] for x in range(n)]
    levels = [[(x,) for x in range(n)]]
    for _ in range(horizon):
        levels.append([c + (y,) for c in levels[-1] for y in pre[c[-1]]])
    ext = [set(levels[horizon])]
    for j in range(horizon - 1, -1, -1):
        ext.append({c[:-1] for c in ext[-1]})
    ext.reverse()
    levels, ext = levels[: depth + 1], ext[: depth + 1]
    unique = []
    for j in range(depth):
        counts = defaultdict(int)
        for c in ext[j + 1]:
            counts[c[:-1]] += 1
        unique.append(all(counts[c] == 1 for c in ext[j]))
    stable_from = None
    for j0 in range(depth):
        if all(unique[j0:]):
            stable_from = j0
            break
    card = len(ext[stable_from]) if stable_from is not None else None
    return LimitResult(
        tuple(len(level) for level in levels),
        tuple(len(e) for e in ext),
        stable_from is not None,
        stable_from,
        card,
    )
