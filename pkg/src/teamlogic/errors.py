"""Exception hierarchy shared by every module."""

from __future__ import annotations


class TeamLogicError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(TeamLogicError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ProfileViolation(TeamLogicError):
    """A formula uses a construct its logic does not admit."""


class UndefinedClause(TeamLogicError):
    """An evaluation clause that the logic leaves undefined was requested."""


class BoundsExceeded(TeamLogicError):
    """A vocabulary, model or formula exceeds an enumeration cap."""


class NotApplicable(TeamLogicError):
    """A construction's precondition fails; ``witness`` explains why."""

    def __init__(self, message: str, witness: object = None):
        self.witness = witness
        super().__init__(message)
