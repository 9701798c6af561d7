"""Exception types shared across the package."""

from __future__ import annotations


class PreconditionError(ValueError):
    """An operation was called outside its contract (bad input, failed hypothesis)."""


class GuardExceeded(PreconditionError):
    """A size or degree guard would be exceeded by this computation."""


class InternalDefect(RuntimeError):
    """An invariant the implementation is supposed to guarantee failed to hold."""


class ConstructionFailure(InternalDefect):
    """A witness construction produced an object that fails its own checks."""


class CycleParseError(PreconditionError):
    """Malformed cycle notation; records the 1-based column of the bad token."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"{message} (column {column})")
        self.reason = message
        self.column = column
