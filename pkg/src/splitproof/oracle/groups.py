"""Finite groups as multiplication tables: centers, automorphisms, 2-centers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .endo import OracleError

MAX_GROUP_ORDER = 8
MAX_SYMMETRIC = 5


@dataclass(frozen=True)
class FinGroup:
    name: str
    table: tuple  # table[a][b] = a * b
    identity: int
    inverse: tuple

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def validate(self) -> None:
        n = self.order
        els = range(n)
        if any(sorted(row) != list(els) for row in self.table):
            raise OracleError(f"{self.name}: table is not a Latin square")
        m = self.table
        for a, b, c in itertools.product(els, repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise OracleError(f"{self.name}: not associative at {a, b, c}")
        for a in els:
            if m[self.identity][a] != a or m[a][self.identity] != a:
                raise OracleError(f"{self.name}: {self.identity} is not a unit")
            if m[a][self.inverse[a]] != self.identity or m[self.inverse[a]][a] != self.identity:
                raise OracleError(f"{self.name}: bad inverse for {a}")


def from_elements(name: str, elements: list, op) -> FinGroup:
    """Tabulate a group given its elements and a multiplication on them."""
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    ident = next(i for i in range(len(elements)) if all(table[i][j] == j for j in range(len(elements))))
    inverse = tuple(next(j for j in range(len(elements)) if table[i][j] == ident) for i in range(len(elements)))
    G = FinGroup(name, table, ident, inverse)
    G.validate()
    return G


def cyclic_group(n: int) -> FinGroup:
    return from_elements(f"Z/{n}", list(range(n)), lambda a, b: (a + b) % n)


def trivial_group() -> FinGroup:
    return cyclic_group(1)


def product_group(G: FinGroup, H: FinGroup) -> FinGroup:
    els = list(itertools.product(range(G.order), range(H.order)))
    return from_elements(f"{G.name}x{H.name}", els, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])))


def _perm_compose(p: tuple, q: tuple) -> tuple:
    """(p q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def symmetric_group(n: int) -> FinGroup:
    if not 1 <= n <= MAX_SYMMETRIC:
        raise OracleError(f"symmetric group degree {n} out of range 1..{MAX_SYMMETRIC}")
    return from_elements(f"S{n}", list(itertools.permutations(range(n))), _perm_compose)


def generated_permutation_group(name: str, gens: list[tuple]) -> FinGroup:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return from_elements(name, sorted(seen), _perm_compose)


def dihedral_group(k: int) -> FinGroup:
    """Symmetries of a k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return generated_permutation_group(f"D{k}", [rot, ref])


def quaternion_group() -> FinGroup:
    # units as (sign, letter), letters 1 i j k
    rule = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def op(a, b):
        sign, letter = rule[(a[1], b[1])]
        return (a[0] * b[0] * sign, letter)

    els = [(s, x) for s in (1, -1) for x in "1ijk"]
    return from_elements("Q8", els, op)


def small_groups() -> list[FinGroup]:
    """One representative of every isomorphism class of groups of order at most 8."""
    z2 = cyclic_group(2)
    return [
        *(cyclic_group(n) for n in range(1, 9)),
        product_group(z2, z2),
        dihedral_group(3),
        product_group(cyclic_group(4), z2),
        product_group(product_group(z2, z2), z2),
        dihedral_group(4),
        quaternion_group(),
    ]


def center(G: FinGroup) -> list[int]:
    """Elements commuting with everything, by a double loop."""
    out = []
    for z in range(G.order):
        ok = True
        for g in range(G.order):
            if G.mul(z, g) != G.mul(g, z):
                ok = False
                break
        if ok:
            out.append(z)
    return out


def _check_order(G: FinGroup) -> None:
    if G.order > MAX_GROUP_ORDER:
        raise OracleError(f"group order {G.order} exceeds {MAX_GROUP_ORDER}")


def _generators(G: FinGroup) -> list[int]:
    """A generating set chosen greedily."""
    gens: list[int] = []
    span = {G.identity}
    for g in range(G.order):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for h in gens:
                    b = G.mul(a, h)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
    return gens


def automorphisms(G: FinGroup) -> list[tuple]:
    """Automorphisms as tables, found by choosing images of a generating set."""
    _check_order(G)
    gens = _generators(G)
    out = set()
    for images in itertools.permutations(range(G.order), len(gens)):
        phi = {G.identity: G.identity}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for g, ig in zip(gens, images):
                    b, ib = G.mul(a, g), G.mul(phi[a], ig)
                    if b in phi:
                        if phi[b] != ib:
                            ok = False
                            break
                    else:
                        phi[b] = ib
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(phi.values())) != G.order:
            continue
        table = tuple(phi[a] for a in range(G.order))
        if all(table[G.mul(a, b)] == G.mul(table[a], table[b]) for a in range(G.order) for b in range(G.order)):
            out.add(table)
    return sorted(out)


def inner_automorphisms(G: FinGroup) -> list[tuple]:
    return sorted({tuple(G.mul(G.mul(g, a), G.inverse[g]) for a in range(G.order)) for g in range(G.order)})


def aut_two_group_of_BG(G: FinGroup) -> tuple[int, int]:
    """Homotopy groups of the self-equivalences of BG: (|Out(G)|, |Z(G)|)."""
    _check_order(G)
    auts = automorphisms(G)
    inner = inner_automorphisms(G)
    # cosets of Inn(G) in Aut(G)
    cosets = {frozenset(tuple(phi[c] for c in conj) for conj in inner) for phi in auts}
    return len(cosets), len(center(G))


def two_center_size(G: FinGroup) -> int:
    """Central elements fixed by every automorphism."""
    _check_order(G)
    auts = automorphisms(G)
    return sum(1 for z in center(G) if all(phi[z] == z for phi in auts))


# independent restatements, used to cross-check the functions above


def center_by_comprehension(G: FinGroup) -> set[int]:
    e = G.identity
    commutator = lambda a, b: G.mul(G.mul(a, b), G.mul(G.inverse[a], G.inverse[b]))  # noqa: E731
    return {z for z in range(G.order) if all(commutator(z, g) == e for g in range(G.order))}


def automorphisms_brute(G: FinGroup) -> set[tuple]:
    _check_order(G)
    n = G.order
    return {
        phi
        for phi in itertools.permutations(range(n))
        if all(phi[G.mul(a, b)] == G.mul(phi[a], phi[b]) for a in range(n) for b in range(n))
    }


def two_center_by_comprehension(G: FinGroup) -> int:
    auts = automorphisms_brute(G)
    return len({z for z in center_by_comprehension(G) if {phi[z] for phi in auts} == {z}})


def out_order_by_lagrange(G: FinGroup) -> int:
    """|Aut(G)| / |Inn(G)|, with |Inn(G)| = |G| / |Z(G)|."""
    inn = G.order // len(center_by_comprehension(G))
    return len(automorphisms_brute(G)) // inn
