"""A small intensional type-theory kernel with a library on splitting idempotents."""

__version__ = "0.1.0"
