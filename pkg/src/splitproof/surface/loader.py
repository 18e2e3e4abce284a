"""Module loading: search paths, imports, and per-declaration checking."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..kernel import checker
from ..kernel.checker import DEFAULT_AXIOMS, Signature, check_declaration
from ..kernel.errors import TypeCheckError
from . import ast as A
from .lexer import SurfaceError, tokenize
from .parser import parse_module
from .printer import print_term
from .resolve import KernelDecl, resolve_decl

checker.set_renderer(print_term)

DEFAULT_LIB = Path(__file__).resolve().parents[3] / "lib"


class ModuleError(SurfaceError):
    kind = "ModuleError"


def search_path(extra: Iterable[str] = ()) -> list[Path]:
    """``--path`` entries, then ``SPLITPROOF_PATH``, then the bundled library."""
    out = [Path(p) for p in extra]
    env = os.environ.get("SPLITPROOF_PATH")
    if env:
        out.extend(Path(p) for p in env.split(os.pathsep) if p)
    out.append(DEFAULT_LIB)
    return out


@dataclass
class DeclResult:
    module: str
    name: str
    flavor: str
    ok: bool
    elapsed: float
    error: Optional[TypeCheckError] = None
    decl: Optional[KernelDecl] = None


@dataclass
class ModuleResult:
    name: str
    path: Optional[str]
    results: list[DeclResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[DeclResult]:
        return [r for r in self.results if not r.ok]


class Session:
    """One checking run: a shared signature plus every module loaded so far.

    A declaration that fails to check is reported and skipped; checking
    continues, and later declarations that mention it fail to resolve.
    """

    def __init__(self, axioms: Iterable[str] = DEFAULT_AXIOMS, paths: Iterable[str] = ()):
        self.sig = Signature(axioms)
        self.paths = search_path(paths)
        self.modules: dict[str, ModuleResult] = {}
        self.order: list[ModuleResult] = []
        self.decls: dict[str, KernelDecl] = {}
        self._loading: list[str] = []

    def lookup(self, name: str) -> Optional[str]:
        if name not in self.sig:
            return None
        return "axiom" if self.sig.is_axiom(name) else "global"

    def find_module(self, name: str) -> Path:
        for d in self.paths:
            p = d / f"{name}.itt"
            if p.is_file():
                return p
        raise ModuleError(f"module '{name}' not found on search path {[str(p) for p in self.paths]}")

    def load_name(self, name: str) -> ModuleResult:
        if name in self.modules:
            return self.modules[name]
        return self.load_file(self.find_module(name))

    def load_file(self, path: str | Path) -> ModuleResult:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ModuleError(f"cannot read {path}: {e.strerror}") from e
        return self.load_text(text, str(path), default_name=path.stem)

    def load_text(self, text: str, file: str = "<input>", default_name: str = "main") -> ModuleResult:
        module = parse_module(tokenize(text, file), file)
        return self.load_module(module, default_name)

    def load_module(self, module: A.ModuleFile, default_name: str = "main") -> ModuleResult:
        name = module.name or default_name
        if name in self.modules:
            return self.modules[name]
        if name in self._loading:
            cycle = " -> ".join(self._loading[self._loading.index(name):] + [name])
            raise ModuleError(f"import cycle: {cycle}")
        self._loading.append(name)
        try:
            for imp in module.imports:
                self.load_name(imp)
            result = ModuleResult(name, module.path)
            for d in module.decls:
                result.results.append(self.check_decl(name, d))
        finally:
            self._loading.pop()
        self.modules[name] = result
        self.order.append(result)
        return result

    def check_decl(self, module: str, d: A.Decl) -> DeclResult:
        start = time.perf_counter()
        kd = None
        try:
            kd = resolve_decl(d, self.lookup)
            check_declaration(self.sig, kd.name, kd.type, kd.body, kd.flavor, kd.span)
            self.decls[kd.name] = kd
            return DeclResult(module, d.name, d.flavor, True, time.perf_counter() - start, decl=kd)
        except TypeCheckError as e:
            e.with_span(d.span)
            return DeclResult(module, d.name, d.flavor, False, time.perf_counter() - start, e, kd)

    def results(self) -> list[DeclResult]:
        return [r for m in self.order for r in m.results]
