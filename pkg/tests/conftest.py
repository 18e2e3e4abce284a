from __future__ import annotations

import json
from pathlib import Path

import pytest

from splitproof.kernel.checker import Context, check, check_type, infer_elab, normalize
from splitproof.library import load_library, read_manifest, run_deep
from splitproof.surface.parser import parse_term
from splitproof.surface.resolve import Scope, resolve_term

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def deep():
    """Call a function on a thread with a large stack."""
    return run_deep


@pytest.fixture(scope="session")
def library():
    return run_deep(load_library)


@pytest.fixture(scope="session")
def library_no_funext():
    return run_deep(load_library, axioms=())


@pytest.fixture(scope="session")
def manifest():
    return read_manifest()


@pytest.fixture(scope="session")
def schema():
    return json.loads((ROOT / "docs" / "oracle-schema.json").read_text())


class Elab:
    """Parse, resolve and elaborate closed surface terms against a session."""

    def __init__(self, session):
        self.session = session
        self.ctx = Context(session.sig)

    def resolve(self, text: str):
        return resolve_term(parse_term(text), Scope(), self.session.lookup)

    def infer(self, text: str):
        return run_deep(infer_elab, self.ctx, self.resolve(text))

    def type(self, text: str):
        return run_deep(check_type, self.ctx, self.resolve(text))[0]

    def check(self, text: str, type_text: str):
        ty = self.ctx.eval(self.type(type_text))
        return run_deep(check, self.ctx, self.resolve(text), ty)

    def nf(self, text: str):
        """Normal form of an inferable closed term."""

        def go():
            t, ty = infer_elab(self.ctx, self.resolve(text))
            return normalize(self.ctx, t, ty)

        return run_deep(go)


@pytest.fixture(scope="session")
def elab(library):
    return Elab(library)
