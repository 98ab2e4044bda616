"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SgflowError(Exception):
    """Base class for all library errors."""


class PreconditionError(SgflowError, ValueError):
    """Input violates the hypothesis of the requested operation."""


class GateExceeded(SgflowError):
    """Instance is larger than an exhaustive routine is allowed to handle."""


class TheoremViolation(SgflowError, AssertionError):
    """A construction backed by an existence theorem failed.

    Raised only when an internal invariant breaks; seeing it means a bug
    (or a counterexample to a published theorem).
    """


class ParseError(SgflowError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
