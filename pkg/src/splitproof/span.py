from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open character range ``[start, end)`` in a source file."""

    file: str
    start: int
    end: int
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"

    def contains(self, other: "Span") -> bool:
        return self.file == other.file and self.start <= other.start and other.end <= self.end

    def join(self, other: "Span") -> "Span":
        if other.start < self.start:
            return other.join(self)
        return Span(self.file, self.start, max(self.end, other.end), self.line, self.col)
