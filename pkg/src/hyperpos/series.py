"""Pochhammer symbols and generalized hypergeometric series.

Three evaluation paths share one term-ratio recursion:

* :func:`eval_pfq` -- double precision with compensated accumulation.  It
  refuses (``CancellationBudgetExceeded``) to return a value whose digits
  were eaten by cancellation, which is what happens to ``1F2(-x^2/4)`` and
  ``0F1(-x^2/4)`` once ``x`` grows past ~20.
* :func:`eval_pfq_extended` -- the same recursion in MPFR arithmetic with a
  working precision sized from the largest term.
* :func:`eval_pfq_auto` -- picks one of the two from the term magnitudes.

Terminating series (one numerator equal to ``-n``) have their own exact
finite-sum routine, :func:`eval_terminating`, with an exact rational mode.
"""

from __future__ import annotations

import math
import operator
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2

from .errors import (
    CancellationBudgetExceeded,
    DomainError,
    NotConverged,
    UndefinedDenominator,
)

__all__ = [
    "HyperParams",
    "SeriesValue",
    "pochhammer",
    "eval_pfq",
    "eval_pfq_extended",
    "eval_pfq_auto",
    "eval_terminating",
    "terminating_terms",
    "hyp0f1",
    "hyp1f2",
]

EPS = 2.0 ** -52
DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10_000
DEFAULT_BUDGET = 1e12
# Scale floor in the cancellation ratio max_term / max(|value|, floor); keeps
# genuine zeros of the summed function from tripping the budget.
CANCELLATION_FLOOR = 1e-10
# Absolute rounding error tolerated before eval_pfq_auto escalates precision.
AUTO_ABS_TOL = 1e-13


def _is_nonpositive_integer(x) -> bool:
    return x <= 0 and x == math.floor(x)


@dataclass(frozen=True)
class HyperParams:
    """Numerator and denominator parameters of a pFq series.

    A denominator that is zero or a negative integer ``-m`` makes the series
    undefined, unless some numerator ``-n`` with ``n <= m`` terminates the
    sum before the offending Pochhammer factor is reached.
    """

    numerators: tuple
    denominators: tuple

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(self.numerators))
        object.__setattr__(self, "denominators", tuple(self.denominators))
        for v in self.numerators + self.denominators:
            if isinstance(v, float) and not math.isfinite(v):
                raise DomainError(f"non-finite parameter {v!r}")
        degree = self.terminating_degree
        for b in self.denominators:
            if _is_nonpositive_integer(b) and (degree is None or degree > -b):
                raise UndefinedDenominator(
                    f"denominator parameter {b!r} is a nonpositive integer"
                )

    @property
    def p(self) -> int:
        return len(self.numerators)

    @property
    def q(self) -> int:
        return len(self.denominators)

    @property
    def terminating_degree(self) -> int | None:
        """Smallest ``n`` such that ``-n`` is a numerator, else None."""
        degrees = [int(-a) for a in self.numerators if _is_nonpositive_integer(a)]
        return min(degrees) if degrees else None


@dataclass(frozen=True)
class SeriesValue:
    value: float
    abs_error_estimate: float
    terms_used: int
    max_term_magnitude: float
    converged: bool
    precision_bits: int = 53

    @property
    def cancellation(self) -> float:
        """Digits-lost diagnostic: largest term over the size of the sum."""
        return self.max_term_magnitude / max(abs(self.value), CANCELLATION_FLOOR)


def pochhammer(alpha, k: int):
    """Rising factorial ``(alpha)_k``; ``(alpha)_0 == 1``.

    Integer and Fraction arguments stay exact.  A float result that
    overflows comes back as ``inf`` with a ``RuntimeWarning``.
    """
    k = operator.index(k)
    if k < 0:
        raise DomainError(f"pochhammer index must be nonnegative, got {k}")
    result = 1
    for i in range(k):
        result *= alpha + i
    if isinstance(result, float) and math.isinf(result):
        warnings.warn(f"pochhammer({alpha!r}, {k}) overflowed", RuntimeWarning, stacklevel=2)
    return result


class _Neumaier:
    """Running compensated sum (Kahan-Babuska / Neumaier)."""

    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


def _check_summable(params: HyperParams) -> None:
    if params.p > params.q + 1 and params.terminating_degree is None:
        raise DomainError(
            f"{params.p}F{params.q} with p > q+1 diverges unless it terminates"
        )


def eval_pfq(
    params: HyperParams,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    budget: float = DEFAULT_BUDGET,
) -> SeriesValue:
    """Sum ``pFq(params; z)`` in double precision.

    Stops after three consecutive terms with ``|t| <= tol * |partial sum|``;
    a single small term is not trusted because 1F2 terms grow before they
    decay.  Raises ``CancellationBudgetExceeded`` when the largest term
    exceeds ``budget * max(|sum|, CANCELLATION_FLOOR)``.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    _check_summable(params)
    z = float(z)
    nums = [float(a) for a in params.numerators]
    dens = [float(b) for b in params.denominators]

    acc = _Neumaier()
    acc.add(1.0)
    term = 1.0
    max_term = 1.0
    small = 0
    k = 0
    terminated = False
    while True:
        if k + 1 >= max_terms:
            raise NotConverged(f"no convergence within {max_terms} terms (z={z!r})")
        num = z
        for a in nums:
            num *= a + k
        if num == 0.0:
            terminated = True
            break
        den = float(k + 1)
        for b in dens:
            den *= b + k
        term *= num / den
        k += 1
        acc.add(term)
        mag = abs(term)
        if mag > max_term:
            max_term = mag
        if not math.isfinite(acc.total):
            raise CancellationBudgetExceeded(f"term overflow at k={k} (z={z!r})")
        if mag <= tol * abs(acc.value):
            small += 1
            if small == 3:
                break
        else:
            small = 0

    value = acc.value
    truncation = 0.0 if terminated else abs(term)
    result = SeriesValue(
        value=value,
        abs_error_estimate=truncation + (k + 1) * EPS * max_term,
        terms_used=k + 1,
        max_term_magnitude=max_term,
        converged=True,
    )
    if result.cancellation > budget:
        err = CancellationBudgetExceeded(
            f"max term {max_term:.3g} vs sum {value:.3g} exceeds budget {budget:.0e}"
        )
        err.partial = result
        raise err
    return result


def _log_max_term(params: HyperParams, z: float, max_terms: int) -> float:
    """Natural log of the largest term magnitude, via a log-space pass."""
    if z == 0.0:
        return 0.0
    log_z = math.log(abs(z))
    logt = 0.0
    best = 0.0
    for k in range(max_terms):
        step = log_z - math.log(k + 1)
        for a in params.numerators:
            if a + k == 0:
                return best
            step += math.log(abs(a + k))
        for b in params.denominators:
            step -= math.log(abs(b + k))
        logt += step
        best = max(best, logt)
        # past the peak and far below it
        if step < 0 and logt < best - 80.0:
            return best
    raise NotConverged(f"term magnitudes still growing after {max_terms} terms")


def eval_pfq_extended(
    params: HyperParams,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    precision_bits: int | None = None,
    log2_max_term: float | None = None,
) -> SeriesValue:
    """Sum ``pFq(params; z)`` in MPFR arithmetic.

    The default working precision is 53 + 40 bits beyond the binary
    exponent of the largest term, so the result carries full double
    precision even where the double-precision sum has no correct digits.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    _check_summable(params)
    if log2_max_term is None:
        log2_max_term = _log_max_term(params, float(z), max_terms) / math.log(2.0)
    log2_max = log2_max_term
    if precision_bits is None:
        precision_bits = 93 + max(0, math.ceil(log2_max))
    noise = 2.0 ** (log2_max - precision_bits)

    with gmpy2.context(precision=precision_bits):
        nums = [gmpy2.mpfr(a) for a in params.numerators]
        dens = [gmpy2.mpfr(b) for b in params.denominators]
        zz = gmpy2.mpfr(z)
        term = gmpy2.mpfr(1)
        total = gmpy2.mpfr(1)
        max_term = 1.0
        small = 0
        k = 0
        terminated = False
        while True:
            if k + 1 >= max_terms:
                raise NotConverged(f"no convergence within {max_terms} terms (z={z!r})")
            num = zz
            for a in nums:
                num *= a + k
            if num == 0:
                terminated = True
                break
            den = gmpy2.mpfr(k + 1)
            for b in dens:
                den *= b + k
            term = term * num / den
            k += 1
            total += term
            mag = abs(float(term))
            max_term = max(max_term, mag)
            if mag <= tol * abs(float(total)) or mag <= noise:
                small += 1
                if small == 3:
                    break
            else:
                small = 0
        value = float(total)
        last = 0.0 if terminated else abs(float(term))

    return SeriesValue(
        value=value,
        abs_error_estimate=last + (k + 1) * noise + EPS * abs(value),
        terms_used=k + 1,
        max_term_magnitude=max_term,
        converged=True,
        precision_bits=precision_bits,
    )


def eval_pfq_auto(
    params: HyperParams,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    abs_tol: float = AUTO_ABS_TOL,
) -> SeriesValue:
    """Double precision when it is accurate to ``abs_tol``, MPFR otherwise.

    The choice is made up front from a log-space pass over the term
    magnitudes, so large arguments never pay for a doomed double sum.
    """
    _check_summable(params)
    log_max = _log_max_term(params, float(z), max_terms)
    # ~100 terms is a generous count for the arguments reached here
    if log_max < math.log(abs_tol / (100 * EPS)):
        try:
            sv = eval_pfq(params, z, tol=tol, max_terms=max_terms)
        except CancellationBudgetExceeded:
            pass
        else:
            rounding = sv.terms_used * EPS * sv.max_term_magnitude
            if rounding <= max(abs_tol, 1e-12 * abs(sv.value)):
                return sv
    return eval_pfq_extended(
        params, z, tol=tol, max_terms=max_terms, log2_max_term=log_max / math.log(2.0)
    )


def hyp0f1(b: float, z: float) -> float:
    return eval_pfq_auto(HyperParams((), (b,)), z).value


def hyp1f2(a: float, b: float, c: float, z: float) -> float:
    return eval_pfq_auto(HyperParams((a,), (b, c)), z).value


def _terminating_setup(params: HyperParams, n: int):
    n = operator.index(n)
    if n < 0:
        raise DomainError(f"terminating degree must be nonnegative, got {n}")
    if n > 0 and not any(a == -n for a in params.numerators):
        raise DomainError(f"no numerator equals -{n}; series is not terminating at n={n}")
    for b in params.denominators:
        if _is_nonpositive_integer(b) and -b <= n - 1:
            raise UndefinedDenominator(
                f"denominator {b!r}: Pochhammer value vanishes for k <= {n}"
            )
    return n


def terminating_terms(params: HyperParams, n: int, z: float = 1.0) -> list[float]:
    """The ``n + 1`` float terms of a terminating series, k = 0..n."""
    n = _terminating_setup(params, n)
    z = float(z)
    nums = [float(a) for a in params.numerators]
    dens = [float(b) for b in params.denominators]
    terms = [1.0]
    t = 1.0
    for k in range(n):
        num = z
        for a in nums:
            num *= a + k
        den = float(k + 1)
        for b in dens:
            den *= b + k
        t *= num / den
        terms.append(t)
    return terms


def _terminating_exact(params: HyperParams, n: int, z) -> Fraction:
    # Horner from the innermost ratio outward on integer numerator /
    # denominator pairs; a single gcd happens when the Fraction is built.
    nums = [Fraction(a) for a in params.numerators]
    dens = [Fraction(b) for b in params.denominators]
    zf = Fraction(z)
    h_num, h_den = 1, 1
    for k in range(n - 1, -1, -1):
        r_num = zf.numerator
        r_den = zf.denominator * (k + 1)
        for a in nums:
            s = a + k
            r_num *= s.numerator
            r_den *= s.denominator
        for b in dens:
            s = b + k
            r_num *= s.denominator
            r_den *= s.numerator
        h_num, h_den = r_den * h_den + r_num * h_num, r_den * h_den
    return Fraction(h_num, h_den)


def eval_terminating(params: HyperParams, n: int, z=1.0, exact: bool = False):
    """Finite sum ``sum_{k=0}^{n} (-1)^k C(n,k) prod(a)_k / prod(b)_k z^k``.

    ``params`` must contain ``-n`` among its numerators.  The float path
    sums with ``math.fsum``; ``exact=True`` converts every parameter to the
    Fraction it represents and returns the exact rational sum.
    """
    n = _terminating_setup(params, n)
    if exact:
        return _terminating_exact(params, n, z)
    return math.fsum(terminating_terms(params, n, z))


def pfq_params(numerators: Sequence, denominators: Sequence) -> HyperParams:
    return HyperParams(tuple(numerators), tuple(denominators))
