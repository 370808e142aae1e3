"""Exception hierarchy.

Domain errors (bad parameters, violated preconditions) and convergence
errors (series, scans, quadrature, root brackets) are kept apart so the
CLI can map them onto distinct exit codes.
"""


class HyperposError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HyperposError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InvalidParameters(DomainError):
    pass


class UndefinedDenominator(DomainError):
    """A denominator Pochhammer value vanishes inside the summation range."""


class BalanceViolated(DomainError):
    """Saalschutzian balance 1 + sum(numerators) = sum(denominators) fails."""


class LemmaViolated(DomainError):
    """Parameters do not satisfy the positivity lemma's hypotheses."""


class ConditionViolated(DomainError):
    """Parameters do not satisfy the translated coefficient conditions."""


class ConvergenceError(HyperposError, ArithmeticError):
    """A numerical procedure failed to deliver a trustworthy result."""


class NotConverged(ConvergenceError):
    pass


class CancellationBudgetExceeded(ConvergenceError):
    """Summation lost more digits to cancellation than the budget allows."""


class ScanExhausted(ConvergenceError):
    pass


class QuadratureFailed(ConvergenceError):
    pass


class BracketFailed(ConvergenceError):
    """No sign change found; for the root solvers this contradicts the
    existence/uniqueness theorem they rely on."""
