"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2), unmet
mathematical preconditions from :class:`PreconditionError` (exit code 3) and
self-check failures from :class:`ConsistencyError` (exit code 4).
"""
from __future__ import annotations


class ReidemeisterError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ReidemeisterError, ValueError):
    """Malformed or invalid input data."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatinSquare(InputError):
    pass


class NoIdentity(InputError):
    pass


class NoInverse(InputError):
    pass


class NotAssociative(InputError):
    pass


class NotHomomorphism(InputError):
    pass


class NotBijective(InputError):
    pass


class NotSubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class NotInvariant(InputError):
    pass


class NotUnimodular(InputError):
    pass


class OrderLimitExceeded(InputError):
    pass


class PreconditionError(ReidemeisterError):
    """A mathematical hypothesis of the requested computation fails."""


class HypothesisViolated(PreconditionError, ValueError):
    pass


class InfiniteReidemeister(PreconditionError):
    pass


class InfiniteFixedSet(PreconditionError):
    pass


class InfiniteValueEncountered(PreconditionError):
    pass


class EnumerationTooLarge(PreconditionError):
    pass


class WitnessNotFound(PreconditionError):
    pass


class PrimeSearchFailed(PreconditionError):
    pass


class ConsistencyError(ReidemeisterError):
    """Two independent computations that must agree did not."""


class RowMatchFailed(ConsistencyError):
    pass
