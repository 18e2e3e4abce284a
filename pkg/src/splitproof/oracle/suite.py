"""The oracle suites: configuration, checks, and a deterministic report."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .endo import (
    MAX_ENDO_SIZE,
    OracleError,
    all_endos,
    enumerate_idempotents,
    enumerate_retractions,
    find_isomorphism,
    induced_map,
    is_isomorphism,
    seq_limit_size,
    split_via_fix,
)
from .groups import (
    MAX_GROUP_ORDER,
    aut_two_group_of_BG,
    center,
    center_by_comprehension,
    cyclic_group,
    small_groups,
    symmetric_group,
    trivial_group,
    two_center_by_comprehension,
    two_center_size,
)
from .twosets import star_laws

SUITES = ("splitting", "limits", "retractions", "groups", "star")


@dataclass(frozen=True)
class OracleConfig:
    suites: tuple = SUITES
    max_n: int = 4
    limit_depth: int = 4
    max_group_order: int = 8
    two_sets: int = 4

    @classmethod
    def from_json(cls, data: dict) -> "OracleConfig":
        if not isinstance(data, dict):
            raise OracleError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise OracleError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(data)
        if "suites" in kw:
            kw["suites"] = tuple(kw["suites"])
        cfg = cls(**kw)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        for name in ("max_n", "limit_depth", "max_group_order", "two_sets"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise OracleError(f"{name} must be an integer")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise OracleError(f"unknown suites {bad}; choose from {list(SUITES)}")
        if not 1 <= self.max_n <= MAX_ENDO_SIZE:
            raise OracleError(f"max_n {self.max_n} out of range 1..{MAX_ENDO_SIZE}")
        if self.limit_depth < 2:
            raise OracleError("limit_depth must be at least 2")
        if not 1 <= self.max_group_order <= MAX_GROUP_ORDER:
            raise OracleError(f"max_group_order {self.max_group_order} out of range 1..{MAX_GROUP_ORDER}")
        if not 1 <= self.two_sets <= 4:
            raise OracleError("two_sets must be between 1 and 4")

    def to_json(self) -> dict:
        d = asdict(self)
        d["suites"] = list(self.suites)
        return d


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    count: int
    detail: str = ""


@dataclass
class OracleReport:
    config: OracleConfig
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "command": "oracle",
            "config": self.config.to_json(),
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def _splitting(cfg: OracleConfig) -> list[Check]:
    out = []
    for n in range(1, cfg.max_n + 1):
        idems = enumerate_idempotents(n)
        brute = [f for f in all_endos(n) if f.idempotent]
        out.append(Check("splitting", f"idempotents n={n}", idems == brute, len(idems),
                         f"{len(idems)} idempotents among {n ** n} tables"))
        bad = []
        for f in idems:
            R = split_via_fix(f)
            if [R.r[x] for x in R.s] != list(range(R.size_a)) or R.idempotent() != f:
                bad.append(f.table)
            # the witness induced by the splitting is f f = f again
            sr = R.idempotent().table
            if tuple(sr[x] for x in sr) != f.table:
                bad.append(f.table)
        out.append(Check("splitting", f"split_via_fix n={n}", not bad, len(idems),
                         f"failures: {bad}" if bad else "r s = id and s r = f"))
    return out


def _limits(cfg: OracleConfig) -> list[Check]:
    out = []
    for n in range(1, cfg.max_n + 1):
        bad = []
        idems = enumerate_idempotents(n)
        for f in idems:
            res = seq_limit_size(f, cfg.limit_depth)
            if not res.stabilized or res.cardinality != len(f.fixed_points()):
                bad.append((f.table, res.cardinality))
        out.append(Check("limits", f"limit = Fix n={n}", not bad, len(idems),
                         f"failures: {bad}" if bad else "stabilized, cardinality |Fix f|"))
    return out


def _retractions(cfg: OracleConfig) -> list[Check]:
    out = []
    for n in range(1, cfg.max_n + 1):
        groups = enumerate_retractions(n)
        idems = {f.table for f in enumerate_idempotents(n)}
        keys = set(groups)
        out.append(Check("retractions", f"keys idempotent n={n}", all(all(k[v] == v for v in k) for k in keys),
                         len(keys)))
        out.append(Check("retractions", f"surjective n={n}", keys == idems, len(idems),
                         f"{len(keys)} keys, {len(idems)} idempotents"))
        bad = []
        total = 0
        for key, fiber in groups.items():
            total += len(fiber)
            base = fiber[0]
            for R in fiber:
                if find_isomorphism(base, R) is None:
                    bad.append((key, R))
            fix = split_via_fix(base.idempotent())
            for R in fiber:
                # uniqueness of splittings: r' s is an isomorphism with inverse r s'
                if not is_isomorphism(fix, R, induced_map(fix, R)):
                    bad.append((key, R))
        out.append(Check("retractions", f"fibers single class n={n}", not bad, total,
                         f"{len(bad)} failures" if bad else f"{len(groups)} fibers"))
    return out


def _groups(cfg: OracleConfig) -> list[Check]:
    out = []

    def expect(name: str, actual, wanted) -> None:
        out.append(Check("groups", name, actual == wanted, 1, f"got {actual}, expected {wanted}"))

    # values fixed in advance; see the README for their sources
    expect("center(S2)", len(center(symmetric_group(2))), 2)
    expect("center(S3)", len(center(symmetric_group(3))), 1)
    expect("two_center(Z/2)", two_center_size(cyclic_group(2)), 2)
    expect("two_center(Z/3)", two_center_size(cyclic_group(3)), 1)
    expect("two_center(1)", two_center_size(trivial_group()), 1)
    expect("aut_two_group(Z/2)", aut_two_group_of_BG(cyclic_group(2)), (1, 2))
    expect("aut_two_group(Z/3)", aut_two_group_of_BG(cyclic_group(3)), (2, 3))
    expect("aut_two_group(1)", aut_two_group_of_BG(trivial_group()), (1, 1))
    bad = []
    gs = [G for G in small_groups() if G.order <= cfg.max_group_order]
    for G in gs:
        if set(center(G)) != center_by_comprehension(G) or two_center_size(G) != two_center_by_comprehension(G):
            bad.append(G.name)
        abelian = all(G.mul(a, b) == G.mul(b, a) for a in range(G.order) for b in range(G.order))
        if abelian and len(center(G)) != G.order:
            bad.append(G.name)
    out.append(Check("groups", "center and two_center cross-check", not bad, len(gs),
                     f"failures: {bad}" if bad else "double loop agrees with comprehension"))
    return out


def _star(cfg: OracleConfig) -> list[Check]:
    rep = star_laws(cfg.two_sets)
    out = []
    for law, count in rep.checked.items():
        fails = [f for f in rep.failures if f.startswith(law + ":")]
        out.append(Check("star", law, not fails, count, "; ".join(fails[:3])))
    return out


RUNNERS: dict[str, Callable[[OracleConfig], list[Check]]] = {
    "splitting": _splitting,
    "limits": _limits,
    "retractions": _retractions,
    "groups": _groups,
    "star": _star,
}


def run_suite(config: OracleConfig | None = None) -> OracleReport:
    cfg = config or OracleConfig()
    cfg.validate()
    start = time.perf_counter()
    report = OracleReport(cfg)
    for name in SUITES:  # fixed order regardless of how the config lists them
        if name in cfg.suites:
            report.checks.extend(RUNNERS[name](cfg))
    report.elapsed = time.perf_counter() - start
    return report
