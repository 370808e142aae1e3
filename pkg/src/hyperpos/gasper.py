"""Sums-of-squares expansion of Phi(x) = 1F2(a; b, c; -x^2/4).

For any nu with 2nu not a negative integer,

    Phi(x) = JJ_nu(x/2)^2
             + sum_{n>=1} C(n,nu) (2n+2nu)/(n+2nu) (2nu+1)_n/n!
                          * [(x/4)^n / (nu+1)_n]^2 * JJ_{nu+n}(x/2)^2,

with ``JJ`` the normalized Bessel function and
``C(n,nu) = 4F3[-n, n+2nu, nu+1, a; nu+1/2, b, c]``.  Writing the squares
through ``JJ`` rather than ``J`` folds the ``Gamma^2(nu+1) (x/4)^(-2nu)``
prefactor into the weights, which keeps every quantity finite for
negative ``nu``.  The choice ``nu = (b+c-a-3/2)/2`` makes each coefficient
a balanced 4F3, so positivity of the weights reduces to the Theta lemma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bessel import jj
from .errors import ConditionViolated, DomainError
from .identities import SaalschutzParams
from .regions import F12Point
from .series import HyperParams, SeriesValue, eval_terminating, pochhammer, terminating_terms

__all__ = [
    "DEFAULT_N_TERMS",
    "ExpansionContext",
    "W5Report",
    "ExpansionCertificate",
    "saalschutzian_nu",
    "exact_saalschutzian_nu",
    "coefficient_params",
    "saalschutz_params_for",
    "c_coefficient",
    "phi_by_squares",
    "w5_conditions",
    "certify_expansion_positive",
]

DEFAULT_N_TERMS = 60


def _two_nu_forbidden(nu: float) -> bool:
    two = 2 * nu
    return two < 0 and two == math.floor(two)


@dataclass(frozen=True)
class ExpansionContext:
    point: F12Point
    nu: float
    n_terms: int = DEFAULT_N_TERMS

    def __post_init__(self):
        if _two_nu_forbidden(self.nu):
            raise DomainError(f"2*nu must not be a negative integer, got nu={self.nu!r}")
        if self.n_terms < 1:
            raise DomainError("n_terms must be at least 1")

    @classmethod
    def balanced(cls, point: F12Point, n_terms: int = DEFAULT_N_TERMS) -> "ExpansionContext":
        return cls(point, saalschutzian_nu(point), n_terms)


def saalschutzian_nu(p: F12Point) -> float:
    """The nu that makes every C(n, nu) a balanced 4F3."""
    return (p.b + p.c - p.a - 1.5) / 2


def exact_saalschutzian_nu(p: F12Point) -> Fraction:
    """Rational nu for which the balance holds exactly for the given floats."""
    return (Fraction(p.b) + Fraction(p.c) - Fraction(p.a) - Fraction(3, 2)) / 2


def coefficient_params(n: int, nu: float, p: F12Point) -> HyperParams:
    return HyperParams((-n, n + 2 * nu, nu + 1, p.a), (nu + 0.5, p.b, p.c))


def saalschutz_params_for(p: F12Point, nu: float | None = None) -> SaalschutzParams:
    """The Theta-lemma parameters (2nu, nu+1, a; nu+1/2, b, c)."""
    nu = saalschutzian_nu(p) if nu is None else nu
    return SaalschutzParams(2 * nu, nu + 1, p.a, nu + 0.5, p.b, p.c)


def c_coefficient(n: int, nu, p: F12Point, exact: bool = False):
    """C(n, nu); a Fraction when ``exact``, else a float.

    The float sum alternates and loses many digits once n grows; the exact
    path carries ``nu`` and the point as rationals (pass the value from
    ``exact_saalschutzian_nu`` to keep the balance exact).
    """
    if n < 0:
        raise DomainError(f"coefficient index must be nonnegative, got {n}")
    if n == 0:
        return Fraction(1) if exact else 1.0
    if exact:
        nu = Fraction(nu)
        params = HyperParams(
            (-n, n + 2 * nu, nu + 1, Fraction(p.a)),
            (nu + Fraction(1, 2), Fraction(p.b), Fraction(p.c)),
        )
        return eval_terminating(params, n, 1.0, exact=True)
    return eval_terminating(coefficient_params(n, nu, p), n, 1.0)


def phi_by_squares(ctx: ExpansionContext, x: float) -> SeriesValue:
    """Phi(x) summed through the squared-Bessel expansion.

    The weights (2nu+1)_n/n! grow only polynomially in n while the squared
    Bessel factors decay like ((x/4)^n/n!)^2, so truncation after
    ``n_terms`` is harmless for moderate x; the last included term is
    reported as the error estimate.
    """
    nu = ctx.nu
    if not nu > -0.5:
        raise DomainError(f"phi_by_squares needs nu > -1/2, got {nu!r}")
    if not x > 0:
        raise DomainError(f"phi_by_squares needs x > 0, got {x!r}")
    half = x / 2
    terms = [jj(nu, half) ** 2]
    peak = abs(terms[0])
    for n in range(1, ctx.n_terms + 1):
        scale = (x / 4) ** n / pochhammer(nu + 1, n)
        weight = (2 * n + 2 * nu) / (n + 2 * nu) * pochhammer(2 * nu + 1, n) / math.factorial(n)
        term = c_coefficient(n, nu, ctx.point) * weight * scale * scale * jj(nu + n, half) ** 2
        terms.append(term)
        peak = max(peak, abs(term))
    return SeriesValue(
        value=math.fsum(terms),
        abs_error_estimate=abs(terms[-1]),
        terms_used=len(terms),
        max_term_magnitude=peak,
        converged=True,
    )


@dataclass(frozen=True)
class W5Report:
    """The three (b, c) conditions, each evaluated literally."""

    shifted_diagonal: bool  # c > b - a + 1/2 with b >= a - 1/2
    balance_line: bool  # c > 3a + 1/2 - b with b > a
    hyperbola: bool  # c >= a + a/(2(b - a)), read with b > a

    @property
    def all_hold(self) -> bool:
        return self.shifted_diagonal and self.balance_line and self.hyperbola


def w5_conditions(p: F12Point) -> W5Report:
    a, b, c = p.a, p.b, p.c
    return W5Report(
        shifted_diagonal=c > b - a + 0.5 and b >= a - 0.5,
        balance_line=c > 3 * a + 0.5 - b and b > a,
        hyperbola=b > a and 2 * (b - a) * (c - a) >= a,
    )


@dataclass(frozen=True)
class ExpansionCertificate:
    point: F12Point
    nu: float
    coefficients: tuple
    slack: float
    first_ok: bool
    failures: tuple = ()

    @property
    def verdict(self) -> bool:
        return self.first_ok and not self.failures


def certify_expansion_positive(p: F12Point, n_max: int = 40) -> ExpansionCertificate:
    """Check C(1,nu) >= -eps and C(n,nu) > 0 for 2 <= n <= n_max.

    Coefficients are summed exactly in rationals with nu solved exactly from
    the balance, so the reported signs are free of rounding.
    """
    report = w5_conditions(p)
    if not report.all_hold:
        raise ConditionViolated(f"coefficient conditions fail for {(p.a, p.b, p.c)}: {report}")
    nu = exact_saalschutzian_nu(p)
    slack = 1e-12 * (1 + sum(abs(t) for t in terminating_terms(coefficient_params(1, float(nu), p), 1)))
    exact = [c_coefficient(n, nu, p, exact=True) for n in range(1, n_max + 1)]
    return ExpansionCertificate(
        point=p,
        nu=float(nu),
        coefficients=tuple(float(v) for v in exact),
        slack=slack,
        first_ok=exact[0] >= -Fraction(slack),
        failures=tuple(n for n, v in enumerate(exact[1:], start=2) if not v > 0),
    )
