from __future__ import annotations

from typing import Optional

from ..span import Span


class TypeCheckError(Exception):
    """Base class for kernel type errors.  Every error may carry a source span."""

    kind = "TypeError"

    def __init__(self, message: str, span: Optional[Span] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def with_span(self, span: Optional[Span]) -> "TypeCheckError":
        if self.span is None and span is not None:
            self.span = span
        return self

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.kind}: {self.message}"


class UnboundName(TypeCheckError):
    kind = "UnboundName"

    def __init__(self, name: str, span: Optional[Span] = None):
        super().__init__(f"unbound name '{name}'", span)
        self.name = name


class ExpectedFunction(TypeCheckError):
    kind = "ExpectedFunction"


class ExpectedPair(TypeCheckError):
    kind = "ExpectedPair"


class ExpectedType(TypeCheckError):
    kind = "ExpectedType"


class ExpectedInductive(TypeCheckError):
    """An eliminator was applied to something that is not of the matching type former."""

    kind = "ExpectedInductive"


class ConversionFailure(TypeCheckError):
    kind = "ConversionFailure"

    def __init__(self, expected, actual, span: Optional[Span] = None, rendered: Optional[tuple] = None):
        # expected/actual are normal-form terms; rendered holds their printed text
        self.expected = expected
        self.actual = actual
        exp, act = rendered if rendered else (repr(expected), repr(actual))
        super().__init__(f"expected\n    {exp}\n  but got\n    {act}", span)


class CannotInfer(TypeCheckError):
    kind = "CannotInfer"

    def __init__(self, head, span: Optional[Span] = None):
        super().__init__(f"cannot infer a type for {type(head).__name__}; add an annotation", span)
        self.head = head


class UniverseOverflow(TypeCheckError):
    kind = "UniverseOverflow"


class DuplicateDeclaration(TypeCheckError):
    kind = "DuplicateDeclaration"

    def __init__(self, name: str, span: Optional[Span] = None):
        super().__init__(f"'{name}' is already declared", span)
        self.name = name


class UnknownAxiom(TypeCheckError):
    kind = "UnknownAxiom"

    def __init__(self, name: str, span: Optional[Span] = None):
        super().__init__(f"'{name}' has no body and is not on the axiom allowlist", span)
        self.name = name
