"""Errors raised by the RDF layer."""

from __future__ import annotations


class RdfError(Exception):
    """Base class for RDF reading, writing, and canonicalization errors."""


class TurtleParseError(RdfError):
    """Syntax or resolution error in a Turtle document.

    Carries the 1-based line and column of the offending position plus a
    short snippet of the token that triggered the failure.
    """

    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}: {message}"
        if token:
            where += f" (near {token!r})"
        super().__init__(where)


class CanonicalizationError(RdfError):
    """Raised when a triple set cannot be rendered as canonical N-Triples."""
