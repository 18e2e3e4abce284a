"""The splitproof command line, run in-process."""

from __future__ import annotations

import json

import jsonschema
import pytest

from splitproof.cli import run
from splitproof.library import MANIFEST


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def invoke_json(capsys, schema, *argv):
    code, out, _ = invoke(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    return code, doc


@pytest.fixture(scope="module")
def check_json():
    """One JSON run of `check` over the shipped library, shared by several tests."""
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(["check", "--json"])
    return code, json.loads(buf.getvalue())


# check


def test_check_library_passes(check_json, schema):
    code, doc = check_json
    jsonschema.validate(doc, schema)
    assert code == 0 and doc["ok"] and doc["failures"] == 0
    assert doc["modules"] == ["prelude", "cantor", "idem"]


def test_check_without_funext_fails_first_at_the_sequential_limit(capsys):
    code, out, _ = invoke(capsys, "check", "--axioms=")
    assert code == 1
    assert "module idem: 13 failures, first in seq_limit_path" in out
    assert "module prelude: 6 failures, first in funext" in out


def test_check_without_funext_json(capsys, schema):
    code, doc = invoke_json(capsys, schema, "check", "--axioms=")
    assert code == 1 and doc["axioms"] == []
    assert doc["first_failure"]["idem"] == "seq_limit_path"


def test_check_syntax_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.itt"
    bad.write_text("module bad\ndef f : Nat := (\n")
    code, _, err = invoke(capsys, "check", str(bad))
    assert code == 2 and "bad.itt:3:1" in err and "ParseError" in err


def test_check_syntax_error_json(capsys, tmp_path, schema):
    bad = tmp_path / "bad.itt"
    bad.write_text("module bad\ndef f : Nat := (\n")
    code, doc = invoke_json(capsys, schema, "check", str(bad))
    assert code == 2 and not doc["ok"] and "ParseError" in doc["error"]


def test_check_type_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "wrong.itt"
    bad.write_text("module wrong\ndef f : Nat := tt\n")
    code, out, _ = invoke(capsys, "check", str(bad))
    assert code == 1 and "FAIL" in out and "wrong.f" in out


def test_check_user_file_importing_the_prelude(capsys, tmp_path):
    f = tmp_path / "mine.itt"
    f.write_text("module mine\nimport prelude\ndef two_paths : Id Nat 2 2 := concat Nat 2 2 2 (refl 2) (refl 2)\n")
    code, out, _ = invoke(capsys, "check", str(f))
    assert code == 0 and "mine.two_paths" in out


def test_missing_file_is_bad_input(capsys, tmp_path):
    code, _, err = invoke(capsys, "check", str(tmp_path / "absent.itt"))
    assert code == 2 and err.startswith("error:")


def test_unknown_flag_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        run(["check", "--frobnicate"])
    assert e.value.code == 2


def test_color_never_has_no_escapes(capsys):
    _, out, _ = invoke(capsys, "oracle", "--color", "never")
    assert "\x1b[" not in out


# dump


def test_dump_qidem_split(capsys):
    # the type is printed in normal form: quasi-idempotence data in, a splitting out
    code, out, _ = invoke(capsys, "dump", "qidem_split", "--no-body")
    assert code == 0
    head, ty = out.splitlines()
    assert head == "def qidem_split"
    assert ty.startswith("  : (X : Type0) -> (Q : Sig (f : X -> X), Sig (I : (x : X) -> Id X (f (f x)) (f x))")
    assert "-> Sig (R : Sig (A : Type0), Sig (r : X -> A), Sig (s : A -> X)" in ty


def test_dump_qidem_split_json(capsys, schema):
    code, doc = invoke_json(capsys, schema, "dump", "qidem_split")
    assert code == 0 and doc["flavor"] == "def"
    assert doc["body"].startswith("fun X Q => ")


def test_dump_opaque_theorem(capsys):
    code, out, _ = invoke(capsys, "dump", "isSet_Nat")
    assert code == 0 and out.startswith("thm isSet_Nat") and "opaque theorem" in out


def test_dump_definition_shows_body(capsys):
    code, out, _ = invoke(capsys, "dump", "concat")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "def concat" and lines[1].startswith("  : ") and lines[2].startswith("  := ")


def test_dump_no_body(capsys):
    code, out, _ = invoke(capsys, "dump", "concat", "--no-body")
    assert code == 0 and ":=" not in out


def test_dump_unknown_name(capsys):
    code, out, err = invoke(capsys, "dump", "nosuchname")
    assert code == 1 and "unknown declaration 'nosuchname'" in err and out == ""


def test_dump_unknown_name_json(capsys, schema):
    code, doc = invoke_json(capsys, schema, "dump", "nosuchname")
    assert code == 1 and not doc["ok"]


def test_dump_loaded_file(capsys, tmp_path):
    f = tmp_path / "extra.itt"
    f.write_text("module extra\nimport prelude\ndef three : Nat := 3\n")
    code, out, _ = invoke(capsys, "dump", "three", "--load", str(f))
    assert code == 0 and out.splitlines() == ["def three", "  : Nat", "  := 3"]


# golden


def test_golden_passes(capsys, schema):
    code, doc = invoke_json(capsys, schema, "golden")
    assert code == 0 and doc["drift"] == [] and doc["obligations"] == 147


def test_golden_detects_an_edited_obligation(capsys, tmp_path, schema):
    data = json.loads(MANIFEST.read_text())
    for ob in data["obligations"]:
        if ob["name"] == "qidem_split":
            ob["type"] = "(X : Type0) -> QIdem X -> PreIdem X"
    edited = tmp_path / "obligations.json"
    edited.write_text(json.dumps(data))
    code, doc = invoke_json(capsys, schema, "golden", str(edited))
    assert code == 1
    assert [d["name"] for d in doc["drift"]] == ["qidem_split"]


def test_golden_detects_a_flavor_change(capsys, tmp_path):
    data = json.loads(MANIFEST.read_text())
    for ob in data["obligations"]:
        if ob["name"] == "split_uniq":
            ob["flavor"] = "thm"
    edited = tmp_path / "obligations.json"
    edited.write_text(json.dumps(data))
    code, out, _ = invoke(capsys, "golden", str(edited))
    assert code == 1 and "DRIFT split_uniq" in out


def test_golden_empty_manifest_warns(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"modules": ["prelude"], "obligations": []}))
    code, out, _ = invoke(capsys, "golden", str(empty))
    assert code == 0 and "warning: manifest lists 0 obligations" in out


def test_golden_malformed_manifest(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = invoke(capsys, "golden", str(bad))
    assert code == 2


# oracle


def test_oracle_passes(capsys, schema):
    code, doc = invoke_json(capsys, schema, "oracle")
    assert code == 0 and doc["passed"] and "elapsed_s" in doc


def test_oracle_no_timing_is_byte_identical(capsys):
    _, a, _ = invoke(capsys, "oracle", "--json", "--no-timing")
    _, b, _ = invoke(capsys, "oracle", "--json", "--no-timing")
    assert a == b and "elapsed_s" not in json.loads(a)


def test_oracle_config_out_of_range(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_n": 7}))
    code, _, err = invoke(capsys, "oracle", "--config", str(cfg))
    assert code == 2 and "max_n" in err


def test_oracle_config_selects_suites(capsys, tmp_path, schema):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": ["groups"], "max_group_order": 4}))
    code, doc = invoke_json(capsys, schema, "oracle", "--config", str(cfg))
    assert code == 0 and {c["suite"] for c in doc["checks"]} == {"groups"}
