"""Command-line driver: ``splitproof check|dump|golden|oracle``.

Exit codes: 0 success, 1 type error / drift / failed check, 2 IO, parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .kernel.checker import DEFAULT_AXIOMS, Context, normalize, normalize_type
from .kernel.errors import TypeCheckError
from .library import LIBRARY_MODULES, MANIFEST, golden, load_library, read_manifest, run_deep
from .oracle import OracleConfig, OracleError, run_suite
from .surface.lexer import SurfaceError
from .surface.loader import DeclResult, Session
from .surface.printer import print_term

OK, FAILED, BAD_INPUT = 0, 1, 2


class Output:
    """Plain lines by default; with ``--json`` one document at the end."""

    def __init__(self, as_json: bool, color: str):
        self.as_json = as_json
        self.color = color == "always" or (color == "auto" and sys.stdout.isatty())

    def paint(self, text: str, code: str) -> str:
        return f"\033[{code}m{text}\033[0m" if self.color else text

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text)

    def doc(self, data: dict) -> None:
        if self.as_json:
            print(json.dumps(data, indent=2))


def _axioms(arg: Optional[str]) -> frozenset:
    if arg is None:
        return DEFAULT_AXIOMS
    return frozenset(a.strip() for a in arg.split(",") if a.strip())


def _span_json(span) -> Optional[dict]:
    if span is None:
        return None
    return {"file": span.file, "line": span.line, "col": span.col}


def _decl_json(r: DeclResult) -> dict:
    out = {"module": r.module, "name": r.name, "flavor": r.flavor, "ok": r.ok, "elapsed_s": round(r.elapsed, 4)}
    if r.error is not None:
        out["error"] = {"kind": r.error.kind, "message": r.error.message, "span": _span_json(r.error.span)}
    return out


def cmd_check(args, out: Output) -> int:
    paths = list(args.path) + sorted({str(Path(f).resolve().parent) for f in args.files})
    session = Session(axioms=_axioms(args.axioms), paths=paths)
    if args.files:
        for f in args.files:
            session.load_file(f)
    else:
        for m in LIBRARY_MODULES:
            session.load_name(m)
    results = session.results()
    for r in results:
        if r.ok:
            out.line(f"{out.paint('ok  ', '32')} {r.module}.{r.name} [{r.flavor}] {r.elapsed:.3f}s")
        else:
            out.line(f"{out.paint('FAIL', '31')} {r.module}.{r.name} [{r.flavor}] {r.elapsed:.3f}s")
            out.line(f"  {r.error}")
    failures = [r for r in results if not r.ok]
    for m in session.order:
        bad = m.failures()
        if bad:
            out.line(f"module {m.name}: {len(bad)} failures, first in {bad[0].name}")
    total = sum(r.elapsed for r in results)
    out.line(f"checked {len(results)} declarations, {len(failures)} failures in {total:.2f}s")
    out.doc({
        "command": "check",
        "ok": not failures,
        "axioms": sorted(session.sig.allowlist),
        "modules": [m.name for m in session.order],
        "declarations": [_decl_json(r) for r in results],
        "failures": len(failures),
        "first_failure": {m.name: m.failures()[0].name for m in session.order if m.failures()},
    })
    return FAILED if failures else OK


def cmd_dump(args, out: Output) -> int:
    session = load_library(_axioms(args.axioms), args.path)
    for f in args.load:
        session.load_file(f)
    entry = session.sig.entries.get(args.name)
    if entry is None:
        msg = f"unknown declaration '{args.name}'"
        out.doc({"command": "dump", "name": args.name, "ok": False, "error": msg})
        if not out.as_json:
            print(msg, file=sys.stderr)
        return FAILED
    ctx = Context(session.sig)
    ty = print_term(normalize_type(ctx, entry.type_term))
    body = None
    if entry.flavor == "def" and entry.body is not None and not args.no_body:
        body = print_term(normalize(ctx, entry.body, entry.type))
    out.line(f"{entry.flavor} {args.name}")
    out.line(f"  : {ty}")
    if body is not None:
        out.line(f"  := {body}")
    elif entry.flavor != "def":
        out.line(f"  ({'opaque theorem' if entry.flavor == 'thm' else 'axiom'}; no body shown)")
    out.doc({"command": "dump", "name": args.name, "ok": True, "flavor": entry.flavor, "type": ty, "body": body})
    return OK


def cmd_golden(args, out: Output) -> int:
    manifest = read_manifest(args.manifest)
    session = load_library(_axioms(args.axioms), args.path, manifest["modules"])
    drift = golden(session, manifest)
    n = len(manifest["obligations"])
    if n == 0:
        out.line("warning: manifest lists 0 obligations")
    for d in drift:
        out.line(f"{out.paint('DRIFT', '31')} {d.name}: {d.reason}")
    out.line(f"{n} obligations, {len(drift)} drifted")
    out.doc({
        "command": "golden",
        "ok": not drift,
        "manifest": str(args.manifest),
        "obligations": n,
        "drift": [{"name": d.name, "reason": d.reason} for d in drift],
    })
    return FAILED if drift else OK


def cmd_oracle(args, out: Output) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = OracleConfig.from_json(json.load(fh))
    else:
        cfg = OracleConfig()
    report = run_suite(cfg)
    for c in report.checks:
        mark = out.paint("ok  ", "32") if c.passed else out.paint("FAIL", "31")
        out.line(f"{mark} {c.suite}: {c.name} ({c.count}) {c.detail}".rstrip())
    out.line(f"{len(report.checks)} checks, {sum(not c.passed for c in report.checks)} failed "
             f"in {report.elapsed:.2f}s")
    out.doc(report.to_json(timing=not args.no_timing))
    return OK if report.passed else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitproof", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document instead of plain lines")
    common.add_argument("--color", choices=("auto", "always", "never"), default="auto")
    lib = argparse.ArgumentParser(add_help=False)
    lib.add_argument("--axioms", default=None, metavar="LIST",
                     help="comma-separated axiom allowlist (default: funext); --axioms= empties it")
    lib.add_argument("--path", action="append", default=[], metavar="DIR", help="module search directory")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common, lib], help="type-check modules")
    c.add_argument("files", nargs="*", help="source files (default: the shipped library)")
    c.set_defaults(run=cmd_check)

    d = sub.add_parser("dump", parents=[common, lib], help="print a declaration's normal forms")
    d.add_argument("name")
    d.add_argument("--load", action="append", default=[], metavar="FILE", help="extra file to check first")
    d.add_argument("--no-body", action="store_true", help="print only the type")
    d.set_defaults(run=cmd_dump)

    g = sub.add_parser("golden", parents=[common, lib], help="compare the library against a manifest")
    g.add_argument("manifest", nargs="?", default=str(MANIFEST))
    g.set_defaults(run=cmd_golden)

    o = sub.add_parser("oracle", parents=[common], help="run the finite-model oracle")
    o.add_argument("--config", metavar="FILE", help="JSON config (see docs/oracle-schema.json)")
    o.add_argument("--no-timing", action="store_true", help="omit wall time so reports compare byte for byte")
    o.set_defaults(run=cmd_oracle)
    return p


def run(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.json, args.color)
    try:
        return run_deep(args.run, args, out)
    except (SurfaceError, OSError, ValueError, OracleError) as e:
        # parse errors, unreadable files, malformed manifests or configs
        msg = str(e)
        if out.as_json:
            out.doc({"command": args.command, "ok": False, "error": msg})
        else:
            print(f"error: {msg}", file=sys.stderr)
        return BAD_INPUT
    except TypeCheckError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED


def main(argv: Optional[list[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
