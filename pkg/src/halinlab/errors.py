"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HalinLabError(Exception):
    """Base class for all library errors."""


class PreconditionError(HalinLabError):
    """An operation was called with inputs outside its stated contract."""


class ParseError(HalinLabError):
    """Malformed input text; carries a byte/line offset when known."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class BudgetExhausted(HalinLabError):
    """A solver ran out of its node or time budget; result is unknown."""


class FalsificationError(HalinLabError):
    """A constructively guaranteed step failed while its verified
    preconditions held.

    This is never retried or swallowed: it would contradict a proved
    statement, so it aborts with a diagnostic dump for inspection.
    """

    def __init__(self, message: str, dump: dict | None = None):
        self.dump = dump or {}
        super().__init__(message)
