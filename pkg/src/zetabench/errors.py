"""Exception hierarchy.

Every error a caller can trigger with well-formed but mathematically invalid
input derives from :class:`DomainError`; the CLI maps those to exit code 1.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input is syntactically fine but outside an operation's domain."""


class ZeroDenominator(DomainError, ZeroDivisionError):
    pass


class NonSquare(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class EvenOrCompositeModulus(DomainError):
    pass


class BadReduction(DomainError):
    pass


class EvenPrime(DomainError):
    pass


class EnumerationBoundExceeded(DomainError):
    pass


class NegativeEntry(DomainError):
    pass


class BandViolation(DomainError):
    pass


class NonUnitConstantTerm(DomainError):
    pass


class DirectionOutOfRange(DomainError):
    pass


class BudgetExceeded(DomainError):
    """Closure exploration hit its seed budget; ``report`` holds the partial result."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PoleError(DomainError):
    pass


class PoleAtOne(PoleError):
    pass


class ConvergenceDomain(DomainError):
    pass


class NonFiniteResult(DomainError):
    pass
