"""Lexer, parser, resolver and printer."""

from __future__ import annotations

import pytest

from splitproof.kernel import syntax as S
from splitproof.kernel.errors import TypeCheckError, UnboundName
from splitproof.surface import ast as A
from splitproof.surface.lexer import LexError, tokenize
from splitproof.surface.loader import ModuleError, Session
from splitproof.surface.parser import ParseError, parse_module_text, parse_term
from splitproof.surface.printer import print_term
from splitproof.surface.resolve import Scope, resolve_term


def no_globals(name):
    return None


def resolve(text, lookup=no_globals):
    return resolve_term(parse_term(text), Scope(), lookup)


# tokenize


def test_token_count():
    assert len(tokenize("fun (x : Nat) => x")) == 9  # eight tokens and end of input


def test_block_comment_skipped():
    toks = tokenize("{- c -} 0")
    assert [t.kind for t in toks] == ["number", "eof"]


def test_line_comment_skipped():
    assert [t.text for t in tokenize("x -- trailing\ny")][:2] == ["x", "y"]


def test_non_ascii_rejected():
    with pytest.raises(LexError) as e:
        tokenize("∀")
    assert e.value.span.line == 1


# parse


def test_parse_definition():
    m = parse_module_text("def id : (A : Type0) -> A -> A := fun A x => x")
    assert len(m.decls) == 1 and m.decls[0].flavor == "def" and m.decls[0].name == "id"


def test_parse_axiom():
    m = parse_module_text("axiom funext : Nat")
    assert m.decls[0].flavor == "axiom" and m.decls[0].body is None


def test_missing_body_is_a_syntax_error():
    with pytest.raises(ParseError) as e:
        parse_module_text("def f : Nat := ")
    assert e.value.span is not None and e.value.expected


def test_arrow_is_right_associative():
    assert resolve("Nat -> Nat -> Nat") == S.arrow(S.Nat(), S.arrow(S.Nat(), S.Nat()))


def test_application_is_left_associative():
    t = parse_term("f x y")
    assert isinstance(t, A.App) and isinstance(t.fn, A.App)
    r = resolve("fun f x y => f x y")
    assert r.body.body.body == S.App(S.App(S.Var(2), S.Var(1)), S.Var(0))


def test_numerals_desugar():
    assert resolve("2") == S.Suc(S.Suc(S.Zero()))


# resolve


def test_de_bruijn_innermost_first():
    assert resolve("fun x => fun y => x") == S.Lam(S.Lam(S.Var(1)))


def test_global_reference():
    t = resolve("fun x => concat", lambda n: "global" if n == "concat" else None)
    assert t == S.Lam(S.Global("concat"))


def test_unbound_name():
    with pytest.raises(UnboundName):
        resolve("fun x => y")


def test_local_shadows_global():
    t = resolve("fun concat => concat", lambda n: "global" if n == "concat" else None)
    assert t == S.Lam(S.Var(0))


# print


def test_print_identity():
    assert print_term(S.Lam(S.Var(0))) == "fun x0 => x0"


def test_print_precedence():
    # names are listed outermost first, so Var(0) is x
    t = S.App(S.Var(2), S.App(S.Var(1), S.Var(0)))
    assert print_term(t, ("f", "g", "x")) == "f (g x)"


def test_print_roundtrip_small():
    t = resolve("fun (A : Type0) (x : A) => (refl x : Id A x x)")
    assert resolve(print_term(t)) == t


# modules


def test_import_cycle(tmp_path):
    (tmp_path / "a.itt").write_text("module a\nimport b\n")
    (tmp_path / "b.itt").write_text("module b\nimport a\n")
    with pytest.raises(ModuleError):
        Session(paths=[str(tmp_path)]).load_name("a")


def test_missing_module():
    with pytest.raises(ModuleError):
        Session().load_name("no_such_module_here")


def test_search_path_env(tmp_path, monkeypatch):
    (tmp_path / "extra.itt").write_text("module extra\ndef three : Nat := 3\n")
    monkeypatch.setenv("SPLITPROOF_PATH", str(tmp_path))
    s = Session()
    assert s.load_name("extra").ok


def test_errors_carry_spans_inside_the_faulted_declaration():
    text = "module m\ndef a : Nat := 0\ndef b : Bool2 := a\n"
    s = Session()
    s.load_text(text, "m.itt")
    bad = s.results()[1]
    assert isinstance(bad.error, TypeCheckError)
    assert bad.error.span is not None and bad.error.span.line == 3
