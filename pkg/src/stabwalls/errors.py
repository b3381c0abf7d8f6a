"""Exception hierarchy shared by every module."""

from __future__ import annotations


class StabWallsError(ValueError):
    """Base class for all input and computation errors raised by stabwalls."""


class InvalidSurface(StabWallsError):
    pass


class InvalidCharacter(StabWallsError):
    pass


class ZeroRank(StabWallsError):
    """Raised by operations that are only defined for positive rank."""


class NonPositiveRadius(StabWallsError):
    pass


class OutOfRegion(StabWallsError):
    pass


class NonTerminating(StabWallsError):
    """The requested enumeration has no finite search region."""
