"""Acceptance: one test per criterion, numbered as in the project's acceptance list."""

from __future__ import annotations

import contextlib
import io
import json
import random
import time

from splitproof.cli import run
from splitproof.kernel import syntax as S
from splitproof.kernel.checker import Context, normalize, normalize_type
from splitproof.kernel.semantics import conv_type, quote, quote_type
from splitproof.library import golden, run_deep
from splitproof.oracle import (
    aut_two_group_of_BG,
    center,
    cyclic_group,
    enumerate_idempotents,
    enumerate_retractions,
    find_isomorphism,
    seq_limit_size,
    split_via_fix,
    star_laws,
    symmetric_group,
    two_center_size,
)
from splitproof.oracle.endo import compose
from splitproof.surface.parser import parse_term
from splitproof.surface.printer import print_term
from splitproof.surface.resolve import Scope, resolve_term

from conftest import ROOT

QID = "((fun n => n, fun n => refl n, fun n => refl (refl n)) : QIdem Nat)"

# idem-module groups whose obligations never touch function extensionality
BASIC_GROUPS = {
    "structures",
    "split-maps-are-pre-idempotent",
    "split-maps-are-quasi-idempotent",
    "splittings-are-unique",
    "splitting-pre-idempotents-on-sets",
    "splitting-weakly-constant-pre-idempotents",
    "splitting-through-an-embedding",
}

LIMITATION = (
    "§4's non-splitting theorem and the §6/§7 univalence-dependent theorems are not formally checked, "
    "and are covered only by the finite shadows in criteria 6–7"
)


def quiet(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, json.loads(buf.getvalue())


def test_criterion_1_full_library_check_and_golden():
    t0 = time.perf_counter()
    code, doc = quiet(["check", "--json"])
    assert code == 0 and doc["failures"] == 0
    assert doc["modules"] == ["prelude", "cantor", "idem"]
    code, doc = quiet(["golden", "--json"])
    assert code == 0 and doc["drift"] == [] and doc["obligations"] > 0
    assert time.perf_counter() - t0 < 60


def test_criterion_2_every_quasi_idempotent_splits(library, manifest, elab):
    ob = next(o for o in manifest["obligations"] if o["name"] == "qidem_split")
    assert ob["type"] == "(X : Type0) -> (Q : QIdem X) -> SplittingOf X (fst Q)"
    assert golden(library, {"modules": manifest["modules"], "obligations": [ob]}) == []
    sp = f"fst (qidem_split Nat {QID})"
    for k in range(4):
        got = elab.nf(f"(ret_s Nat ({sp}) (ret_r Nat ({sp}) {k}) : Nat)")
        assert got == S.numeral(k)


def test_criterion_3_removing_funext_breaks_exactly_the_tagged_obligations(library_no_funext, manifest):
    failed = {r.name for r in library_no_funext.results() if not r.ok}
    tagged = {o["name"] for o in manifest["obligations"] if o["funext"]}
    assert failed == tagged
    basic = [o["name"] for o in manifest["obligations"] if o["module"] == "idem" and o["group"] in BASIC_GROUPS]
    assert basic and not set(basic) & failed


def test_criterion_4_witness_recovery(library, elab):
    # partial: the left-hand side reduces to a J-chain stuck on the funext postulate,
    # so only the elaboration and the right-hand side are compared at closed points
    for k in range(3):
        proof, ty = elab.infer(f"pre_witness_recovered Nat {QID} {k}")
        ty_nf = run_deep(quote_type, 0, ty)
        assert isinstance(ty_nf, S.IdType)
        assert ty_nf.rhs == S.Refl(S.numeral(k))
        rhs = elab.nf(f"(fst (snd {QID}) {k} : Id Nat {k} {k})")
        assert rhs == S.Refl(S.numeral(k))
        composite = (
            f"(concat Nat {k} {k} {k} (inv Nat {k} {k} (refl {k})) "
            f"(concat Nat {k} {k} {k} (refl {k}) (refl {k})) : Id Nat {k} {k})"
        )
        assert elab.nf(composite) == rhs
        lhs = elab.nf(f"(split_to_preidem Nat (fun n => n) (qidem_split Nat {QID}) {k} : Id Nat {k} {k})")
        assert "funext" in print_term(lhs)


def test_criterion_5_idempotents_split_and_limits_count_fixed_points():
    t0 = time.perf_counter()
    for n in range(1, 5):
        for f in enumerate_idempotents(n):
            R = split_via_fix(f)
            assert compose(R.r, R.s) == tuple(range(R.size_a))
            assert compose(R.s, R.r) == f.table
            res = seq_limit_size(f, 4)
            assert res.stabilized and res.cardinality == len(f.fixed_points())
    assert time.perf_counter() - t0 < 10


def test_criterion_6_retractions_group_onto_idempotents():
    for n in range(1, 5):
        groups = enumerate_retractions(n)
        assert set(groups) == {f.table for f in enumerate_idempotents(n)}
        for fiber in groups.values():
            base = fiber[0]
            assert all(find_isomorphism(base, other) is not None for other in fiber)


def test_criterion_7_group_numbers_and_star_laws():
    t0 = time.perf_counter()
    assert len(center(symmetric_group(2))) == 2
    assert two_center_size(cyclic_group(2)) == 2
    assert aut_two_group_of_BG(cyclic_group(2)) == (1, 2)
    rep = star_laws()
    assert rep.passed and not rep.failures
    assert time.perf_counter() - t0 < 5


def test_criterion_8_kernel_properties_over_the_library(library):
    def go():
        ctx = Context(library.sig)
        entries = library.sig.entries
        types = {n: normalize_type(ctx, e.type_term) for n, e in entries.items()}
        for n, t in types.items():
            assert normalize_type(ctx, t) == t, n
            assert quote_type(0, ctx.eval(t)) == t, n
        for n, e in entries.items():
            if e.body is None:
                continue
            printed = resolve_term(parse_term(print_term(e.body)), Scope(), library.lookup)
            assert S.erase(printed) == S.erase(e.body), n
        rng = random.Random(20261016)
        names = sorted(entries)
        for _ in range(1000):
            # half the draws reuse the previous name, so transitivity is exercised on convertible triples
            a = rng.choice(names)
            b = a if rng.random() < 0.5 else rng.choice(names)
            c = b if rng.random() < 0.5 else rng.choice(names)
            x, y, z = entries[a].type, ctx.eval(types[b]), ctx.eval(entries[c].type_term)
            assert conv_type(0, x, x)
            xy = conv_type(0, x, y)
            assert xy == conv_type(0, y, x)
            if xy and conv_type(0, y, z):
                assert conv_type(0, x, z)
            assert conv_type(0, entries[a].type, ctx.eval(types[a]))
        # bodies: normalization is idempotent where the normal form stays small
        for n in ("concat", "split_uniq", "qidem_split", "cantor_self_sum"):
            e = entries[n]
            once = normalize(ctx, e.body, e.type)
            assert normalize(ctx, once, e.type) == once
            assert quote(0, ctx.eval(once), e.type) == once

    run_deep(go)


def test_criterion_9_unchecked_theorems_are_stated_as_such(library):
    readme = (ROOT / "README.md").read_text(encoding="utf-8")
    assert LIMITATION in readme
    axioms = {n for n, e in library.sig.entries.items() if e.flavor == "axiom"}
    assert axioms == {"funext"}
