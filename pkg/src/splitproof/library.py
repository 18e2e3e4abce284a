"""The shipped library: loading, dependency tags, and the golden manifest."""

from __future__ import annotations

import json
import re
import sys
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, TypeVar

from .kernel import syntax as S
from .kernel.checker import DEFAULT_AXIOMS, Context, check_type
from .kernel.errors import TypeCheckError
from .kernel.semantics import conv_type
from .surface.lexer import SurfaceError
from .surface.loader import DEFAULT_LIB, Session
from .surface.parser import parse_term
from .surface.printer import print_term
from .surface.resolve import Scope, resolve_term

LIBRARY_MODULES = ("prelude", "cantor", "idem")
MANIFEST = DEFAULT_LIB / "obligations.json"

T = TypeVar("T")

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 200_000


def run_deep(fn: Callable[..., T], *args, **kwargs) -> T:
    """Run ``fn`` on a thread with a large stack; the evaluator recurses deeply."""
    box: dict = {}

    def target():
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as e:  # re-raised on the calling thread
            box["error"] = e

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    threading.stack_size(STACK_BYTES)
    try:
        th = threading.Thread(target=target)
        th.start()
        th.join()
    finally:
        threading.stack_size(old_size)
    if "error" in box:
        raise box["error"]
    return box["value"]


def load_library(
    axioms: Iterable[str] = DEFAULT_AXIOMS,
    paths: Iterable[str] = (),
    modules: Iterable[str] = LIBRARY_MODULES,
) -> Session:
    session = Session(axioms=axioms, paths=paths)
    for m in modules:
        session.load_name(m)
    return session


def dependencies(session: Session) -> dict[str, set[str]]:
    """Transitive closure of the globals and axioms each declaration mentions."""
    out: dict[str, set[str]] = {}
    for name, e in session.sig.entries.items():
        direct = S.references(e.type_term)
        if e.body is not None:
            direct |= S.references(e.body)
        closure = set(direct)
        for d in direct:
            closure |= out.get(d, set())
        out[name] = closure
    return out


def funext_dependent(session: Session) -> set[str]:
    return {n for n, deps in dependencies(session).items() if n == "funext" or "funext" in deps}


# section headers in library sources: a line comment standing alone as a paragraph
_HEADER = re.compile(r"^-- ([A-Z].*)$")
_DECL = re.compile(r"^(def|thm|axiom)\s+([A-Za-z_][A-Za-z0-9_']*)")


def section_groups(path: Path) -> dict[str, str]:
    """Map each declaration in a source file to the slug of its section header."""
    lines = path.read_text(encoding="utf-8").splitlines()
    group = path.stem
    out: dict[str, str] = {}
    for i, line in enumerate(lines):
        m = _HEADER.match(line)
        alone = (i == 0 or not lines[i - 1].strip()) and (i + 1 == len(lines) or not lines[i + 1].strip())
        if m and alone:
            group = re.sub(r"[^a-z0-9]+", "-", m.group(1).lower()).strip("-")
            continue
        d = _DECL.match(line)
        if d:
            out[d.group(2)] = group
    return out


@dataclass
class Obligation:
    name: str
    module: str
    flavor: str
    group: str
    type: str
    funext: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "module": self.module,
            "flavor": self.flavor,
            "group": self.group,
            "type": self.type,
            "funext": self.funext,
        }


def build_manifest(session: Session) -> dict:
    """Obligations for every checked declaration, in file order."""
    tagged = funext_dependent(session)
    groups: dict[str, str] = {}
    for m in session.order:
        if m.path:
            groups.update(section_groups(Path(m.path)))
    obligations = []
    for r in session.results():
        if not r.ok:
            raise ValueError(f"cannot build a manifest from a failing library: {r.name}")
        e = session.sig.entries[r.name]
        ob = Obligation(r.name, r.module, e.flavor, groups.get(r.name, r.module),
                        print_term(e.type_term), r.name in tagged)
        obligations.append(ob.to_json())
    return {"modules": [m.name for m in session.order], "obligations": obligations}


def read_manifest(path: str | Path = MANIFEST) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not isinstance(data.get("obligations", []), list):
        raise ValueError(f"{path}: expected an object with an 'obligations' list")
    data.setdefault("obligations", [])
    data.setdefault("modules", list(LIBRARY_MODULES))
    return data


@dataclass
class Drift:
    name: str
    reason: str


def golden(session: Session, manifest: dict) -> list[Drift]:
    """Re-check every expected type and compare it with the declared one by conversion."""
    drift = []
    ctx = Context(session.sig)
    for ob in manifest["obligations"]:
        name = ob["name"]
        entry = session.sig.entries.get(name)
        if entry is None:
            drift.append(Drift(name, "not declared, or failed to check"))
            continue
        if "flavor" in ob and ob["flavor"] != entry.flavor:
            drift.append(Drift(name, f"flavor is {entry.flavor}, manifest says {ob['flavor']}"))
            continue
        try:
            expected, _ = check_type(ctx, resolve_term(parse_term(ob["type"], f"<{name}>"), Scope(), session.lookup))
        except (SurfaceError, TypeCheckError) as e:
            drift.append(Drift(name, f"expected type does not check: {e}"))
            continue
        if not conv_type(0, ctx.eval(expected), entry.type):
            drift.append(Drift(name, f"declared type {print_term(entry.type_term)} differs from manifest"))
    return drift


def find_result(session: Session, name: str):
    for r in session.results():
        if r.name == name:
            return r
    return None


def first_failure(session: Session, module: Optional[str] = None):
    for r in session.results():
        if not r.ok and (module is None or r.module == module):
            return r
    return None
