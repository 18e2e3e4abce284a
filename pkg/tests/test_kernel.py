"""Kernel behaviour: evaluation, quotation, conversion, inference and declarations."""

from __future__ import annotations

import pytest

from splitproof.kernel import syntax as S
from splitproof.kernel.checker import (
    Context,
    Signature,
    check,
    check_declaration,
    check_type,
    infer,
    infer_elab,
    normalize,
)
from splitproof.kernel.errors import (
    CannotInfer,
    ConversionFailure,
    DuplicateDeclaration,
    ExpectedFunction,
    UniverseOverflow,
    UnknownAxiom,
)
from splitproof.kernel.semantics import (
    VLam,
    VNeutral,
    VPair,
    VUniverse,
    conv,
    evaluate,
    fresh,
    quote,
    quote_type,
)
from splitproof.surface.loader import Session
from splitproof.surface.parser import parse_term
from splitproof.surface.resolve import Scope, resolve_term

ARITH = """
module arith
def plus (m n : Nat) : Nat := natElim (fun _ => Nat) n (fun _ ih => suc ih) m
"""


@pytest.fixture(scope="module")
def arith():
    s = Session()
    s.load_text(ARITH)
    return s


def term(session, text):
    return resolve_term(parse_term(text), Scope(), session.lookup)


def nf(session, text):
    ctx = Context(session.sig)
    t, ty = infer_elab(ctx, term(session, text))
    return normalize(ctx, t, ty)


# eval


def test_plus_computes(arith):
    assert nf(arith, "plus 2 3") == S.numeral(5)


def test_j_on_refl_computes_to_base(arith):
    got = nf(arith, "(J (fun x y p => Nat) (fun x => plus x 1) 4 4 (refl 4) : Nat)")
    assert got == S.numeral(5)


def test_eliminating_a_neutral_extends_the_spine():
    sig = Signature()
    f = fresh(0, evaluate(sig, None, S.arrow(S.Nat(), S.Nat())))
    v = evaluate(sig, (f, None), S.App(S.Var(0), S.Zero()))
    assert isinstance(v, VNeutral) and len(v.spine) == 1


# quote


def test_quote_identity_lambda():
    sig = Signature()
    assert quote(0, evaluate(sig, None, S.Lam(S.Var(0)))) == S.Lam(S.Var(0))


def test_quote_eta_expands_functions():
    sig = Signature()
    f = fresh(0, evaluate(sig, None, S.arrow(S.Nat(), S.Nat())))
    assert quote(1, f) == S.Lam(S.App(S.Var(1), S.Var(0)))


def test_quote_eta_expands_pairs():
    sig = Signature()
    p = fresh(0, evaluate(sig, None, S.Sigma(S.Nat(), S.Bool2())))
    assert quote(1, p) == S.Pair(S.Fst(S.Var(0)), S.Snd(S.Var(0)))


# normalize


def test_normalize_beta(arith):
    assert nf(arith, "(fun (x : Nat) => x) 4") == S.numeral(4)


def test_normalize_projection(arith):
    assert nf(arith, "fst ((1, tt) : Sig (n : Nat), Bool2)") == S.numeral(1)


def test_normalize_is_idempotent_on_a_term(arith):
    ctx = Context(arith.sig)
    t, ty = infer_elab(ctx, term(arith, "fun (n : Nat) => plus n 2"))
    once = normalize(ctx, t, ty)
    assert normalize(ctx, once, ty) == once


# conv


def _pi_nat():
    return evaluate(Signature(), None, S.arrow(S.Nat(), S.Nat()))


def test_conv_eta_for_functions():
    ty = _pi_nat()
    f = fresh(0, ty)
    lam = VLam(evaluate(Signature(), (f, None), S.Lam(S.App(S.Var(1), S.Var(0)))).closure)
    assert conv(1, lam, f, ty)


def test_conv_eta_for_pairs():
    sig = Signature()
    ty = evaluate(sig, None, S.Sigma(S.Nat(), S.Bool2()))
    p = fresh(0, ty)
    pair = evaluate(sig, (p, None), S.Pair(S.Fst(S.Var(0)), S.Snd(S.Var(0))))
    assert isinstance(pair, VPair) and conv(1, pair, p, ty)


def test_conv_no_eta_for_identity_types():
    sig = Signature()
    ty = evaluate(sig, None, S.IdType(S.Nat(), S.Zero(), S.Zero()))
    p = fresh(0, ty)
    assert not conv(1, evaluate(sig, None, S.Refl(S.Zero())), p, ty)


def test_conv_unit_singleton():
    sig = Signature()
    u = evaluate(sig, None, S.Unit())
    assert conv(1, fresh(0, u), evaluate(sig, None, S.Star()), u)


# infer


def test_infer_universes():
    ctx = Context(Signature())
    assert infer(ctx, S.Nat()).level == 0
    assert infer(ctx, S.Universe(0)).level == 1
    assert infer(ctx, S.Universe(1)).level == 2


def test_universe_overflow():
    with pytest.raises(UniverseOverflow):
        infer(Context(Signature()), S.Universe(2))


def test_bare_lambda_cannot_infer():
    with pytest.raises(CannotInfer):
        infer(Context(Signature()), S.Lam(S.Var(0)))


def test_application_of_non_function(arith):
    with pytest.raises(ExpectedFunction):
        infer(Context(arith.sig), term(arith, "(0 : Nat) 1"))


def test_infer_ap(library, elab, deep):
    expected = elab.type(
        "(A B : Type0) -> (f : A -> B) -> (x y : A) -> Id A x y -> Id B (f x) (f y)"
    )
    ctx = Context(library.sig)
    got = deep(infer, ctx, S.Global("ap"))
    assert quote_type(0, got) == quote_type(0, ctx.eval(expected))


# check


def test_check_identity():
    ctx = Context(Signature())
    ty = evaluate(ctx.sig, None, S.arrow(S.Nat(), S.Nat()))
    check(ctx, S.Lam(S.Var(0)), ty)


def test_check_refl_by_conversion(arith):
    ctx = Context(arith.sig)
    ty, _ = check_type(ctx, term(arith, "Id Nat 0 (plus 0 0)"))
    check(ctx, S.Refl(S.Zero()), ctx.eval(ty))


def test_check_refl_failure_reports_normal_forms(arith):
    ctx = Context(arith.sig)
    ty, _ = check_type(ctx, term(arith, "Id Nat 0 (plus 0 1)"))
    with pytest.raises(ConversionFailure) as e:
        check(ctx, S.Refl(S.Zero()), ctx.eval(ty))
    assert {e.value.expected, e.value.actual} == {S.numeral(0), S.numeral(1)}


def test_cumulativity_accepts_type0_where_type1_expected():
    ctx = Context(Signature())
    check(ctx, S.Nat(), VUniverse(1))


# declarations

FUNEXT_TYPE = (
    "(A : Type0) -> (B : A -> Type0) -> (f g : (x : A) -> B x) -> "
    "((x : A) -> Id (B x) (f x) (g x)) -> Id ((x : A) -> B x) f g"
)


def test_declare_allowlisted_axiom():
    s = Session()
    s.load_text(f"module ax\naxiom funext : {FUNEXT_TYPE}\n")
    assert s.sig.is_axiom("funext")
    assert s.results()[0].ok


def test_redeclaring_is_an_error(library):
    sig = library.sig
    t = sig.entries["concat"].type_term
    with pytest.raises(DuplicateDeclaration):
        check_declaration(sig, "concat", t, sig.entries["concat"].body)


def test_unknown_axiom():
    with pytest.raises(UnknownAxiom):
        check_declaration(Signature(), "my_axiom", S.Nat(), None, "axiom")


def test_failed_declaration_is_skipped():
    s = Session()
    s.load_text("module m\ndef bad : Nat := tt\ndef good : Nat := bad\n")
    a, b = s.results()
    assert not a.ok and type(a.error).__name__ == "ConversionFailure"
    assert not b.ok and type(b.error).__name__ == "UnboundName"
