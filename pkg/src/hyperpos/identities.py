"""Saalschutz summation, Whipple's transformation and the positivity engine
for balanced terminating 4F3 series

    Theta_n = 4F3[-n, n+a1, a2, a3; b1, b2, b3],   1 + a1 + a2 + a3 = b1 + b2 + b3.

Whipple's transformation rewrites ``Theta_n = Omega_n / ((1+s)_n (b3)_n)``
with ``s = a1 + a2 - b3``, where ``Omega_n = sum_k A(n,k) B(k)`` carries no
alternating factor.  That form is both the proof device and the
numerically stable way to evaluate Theta_n when the parameters satisfy the
lemma's hypotheses (all terms but the first are then nonnegative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BalanceViolated, LemmaViolated, UndefinedDenominator
from .series import HyperParams, eval_terminating, pochhammer, terminating_terms

__all__ = [
    "BALANCE_TOL",
    "SaalschutzParams",
    "LemmaConditionReport",
    "ThetaCertificate",
    "saalschutz_sum",
    "theta_direct",
    "theta_terms",
    "whipple_rhs",
    "omega_series",
    "omega1_closed",
    "a_coefficient",
    "b_coefficient",
    "growth_factor",
    "check_lemma_conditions",
    "certify_theta_positive",
]

BALANCE_TOL = 1e-12


@dataclass(frozen=True)
class SaalschutzParams:
    alpha1: float
    alpha2: float
    alpha3: float
    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self):
        gap = 1 + self.alpha1 + self.alpha2 + self.alpha3 - (self.beta1 + self.beta2 + self.beta3)
        if abs(gap) > BALANCE_TOL:
            raise BalanceViolated(f"1 + sum(alpha) - sum(beta) = {gap:.3e}")

    @classmethod
    def balanced(cls, alpha1, alpha2, alpha3, beta1, beta2) -> "SaalschutzParams":
        """Build from five free parameters, solving the balance for beta3."""
        beta3 = 1 + alpha1 + alpha2 + alpha3 - beta1 - beta2
        return cls(alpha1, alpha2, alpha3, beta1, beta2, beta3)

    @property
    def sigma(self) -> float:
        return self.alpha1 + self.alpha2 - self.beta3

    def astuple(self) -> tuple:
        return (self.alpha1, self.alpha2, self.alpha3, self.beta1, self.beta2, self.beta3)

    def theta_params(self, n: int) -> HyperParams:
        return HyperParams(
            (-n, n + self.alpha1, self.alpha2, self.alpha3),
            (self.beta1, self.beta2, self.beta3),
        )

    def exact_theta_params(self, n: int) -> HyperParams:
        """Rational parameters with beta3 re-solved so the balance is exact.

        Off the balanced manifold the alternating sum is violently
        ill-conditioned, so even the one-ulp imbalance of the float
        parameters (or of ``n + alpha1``) would move Theta_n visibly.
        """
        a1, a2, a3, b1, b2 = (Fraction(v) for v in self.astuple()[:5])
        return HyperParams((-n, n + a1, a2, a3), (b1, b2, 1 + a1 + a2 + a3 - b1 - b2))


@dataclass(frozen=True)
class LemmaConditionReport:
    a1_holds: bool
    a2_holds: bool
    a3_holds: bool
    a4_holds: bool

    @property
    def all_hold(self) -> bool:
        return self.a1_holds and self.a2_holds and self.a3_holds and self.a4_holds


@dataclass(frozen=True)
class ThetaCertificate:
    """Per-n values of Theta_n and the positivity verdict.

    ``theta`` holds the exact rational sums rounded to float, so their signs
    are certain for the (exactly rebalanced) parameters given; ``theta_whipple`` is the
    independent double-precision value from the Omega route.
    """

    params: SaalschutzParams
    theta: tuple
    theta_whipple: tuple
    slack: float
    theta1_ok: bool
    failures: tuple = field(default=())

    @property
    def verdict(self) -> bool:
        return self.theta1_ok and not self.failures


def _check_denominators(values, n: int) -> None:
    for b in values:
        if b <= 0 and b == math.floor(b) and -b <= n - 1:
            raise UndefinedDenominator(f"(b)_k vanishes for b={b!r}, k <= {n}")


def saalschutz_sum(n: int, alpha1: float, alpha2: float, beta1: float, beta2: float) -> float:
    """Closed form of the balanced 3F2[-n, n+a1, a2; b1, b2]."""
    gap = 1 + alpha1 + alpha2 - beta1 - beta2
    if abs(gap) > BALANCE_TOL:
        raise BalanceViolated(f"1 + a1 + a2 - b1 - b2 = {gap:.3e}")
    den = pochhammer(beta1, n) * pochhammer(beta2, n)
    if den == 0:
        raise UndefinedDenominator(f"(b1)_n (b2)_n vanishes for n={n}")
    return pochhammer(beta1 - alpha2, n) * pochhammer(beta2 - alpha2, n) / den


def theta_direct(p: SaalschutzParams, n: int, exact: bool = True) -> float:
    """Theta_n by direct terminating summation.

    The alternating sum loses up to ~26 digits in double precision by
    n = 30, so by default it is summed exactly in rationals (on the exactly
    balanced parameters) and rounded once.
    """
    if exact:
        return float(eval_terminating(p.exact_theta_params(n), n, 1.0, exact=True))
    return eval_terminating(p.theta_params(n), n, 1.0)


def theta_terms(p: SaalschutzParams, n: int) -> list[float]:
    return terminating_terms(p.theta_params(n), n)


def whipple_rhs(p: SaalschutzParams, n: int) -> float:
    """Right-hand side of Whipple's formula: a prefactor times a 7F6."""
    s = p.sigma
    a1, a2, a3, b1, b2, b3 = p.astuple()
    den = pochhammer(1 + s, n) * pochhammer(b3, n)
    if den == 0:
        raise UndefinedDenominator("(1+sigma)_n (beta3)_n vanishes")
    pre = pochhammer(1 + a1 - b3, n) * pochhammer(b3 - a2, n) / den
    series = HyperParams(
        (s, 1 + s / 2, -n, n + a1, a2, b1 - a3, b2 - a3),
        (s / 2, n + 1 + s, -n + 1 + a2 - b3, 1 + a1 - b3, b2, b1),
    )
    return pre * float(eval_terminating(series, n, exact=True))


def _whipple_factor(s: float, k: int) -> float:
    # (s)_k (1+s/2)_k / (s/2)_k, read as (1+s)_{k-1} (2k+s) so that s = 0
    # is harmless
    if k == 0:
        return 1.0
    return pochhammer(1 + s, k - 1) * (2 * k + s)


def a_coefficient(p: SaalschutzParams, n: int, k: int) -> float:
    """A(n,k) = C(n,k) (k+1+a1-b3)_{n-k} (b3-a2)_{n-k} (n+a1)_k / (n+1+s)_k."""
    s = p.sigma
    return (
        math.comb(n, k)
        * pochhammer(k + 1 + p.alpha1 - p.beta3, n - k)
        * pochhammer(p.beta3 - p.alpha2, n - k)
        * pochhammer(n + p.alpha1, k)
        / pochhammer(n + 1 + s, k)
    )


def b_coefficient(p: SaalschutzParams, k: int) -> float:
    """B(k) = (a2)_k (b1-a3)_k (b2-a3)_k / ((b1)_k (b2)_k) times the sigma factor."""
    return (
        pochhammer(p.alpha2, k)
        * pochhammer(p.beta1 - p.alpha3, k)
        * pochhammer(p.beta2 - p.alpha3, k)
        / (pochhammer(p.beta1, k) * pochhammer(p.beta2, k))
        * _whipple_factor(p.sigma, k)
    )


def omega_series(p: SaalschutzParams, n: int) -> float:
    """Omega_n = sum_{k=0}^{n} A(n,k) B(k)."""
    _check_denominators((p.beta1, p.beta2), n + 1)
    _check_denominators((n + 1 + p.sigma,), n + 1)
    return math.fsum(a_coefficient(p, n, k) * b_coefficient(p, k) for k in range(n + 1))


def omega1_closed(p: SaalschutzParams) -> float:
    a1, a2, a3, b1, b2, b3 = p.astuple()
    if b1 * b2 == 0:
        raise UndefinedDenominator("beta1 * beta2 == 0")
    return (b1 + b2 - a3) * (b1 * b2 * b3 - (1 + a1) * a2 * a3) / (b1 * b2)


def growth_factor(p: SaalschutzParams, n: int) -> float:
    """(n+1)(n+1+a1-b3)(n+1+s)/(n+a1), the Omega_n -> Omega_{n+1} multiplier."""
    return (n + 1) * (n + 1 + p.alpha1 - p.beta3) * (n + 1 + p.sigma) / (n + p.alpha1)


def check_lemma_conditions(p: SaalschutzParams) -> LemmaConditionReport:
    a1, a2, a3, b1, b2, b3 = p.astuple()
    return LemmaConditionReport(
        a1_holds=abs(1 + a1 + a2 + a3 - (b1 + b2 + b3)) <= BALANCE_TOL,
        a2_holds=0 < a2 < b3 <= 2 + a1,
        a3_holds=0 < a3 < min(b1, b2),
        a4_holds=(1 + a1) * a2 * a3 <= b1 * b2 * b3,
    )


def certify_theta_positive(
    p: SaalschutzParams, n_max: int = 50, require_conditions: bool = True
) -> ThetaCertificate:
    """Check Theta_1 >= -eps and Theta_n > 0 for n = 2..n_max.

    Signs come from exact rational summation on the exactly balanced
    parameters, so the verdict does not depend on cancellation in the
    alternating sum.
    ``eps = 1e-12 * (1 + sum |terms of Theta_1|)``.
    """
    if require_conditions and not check_lemma_conditions(p).all_hold:
        raise LemmaViolated(f"hypotheses of the positivity lemma fail for {p.astuple()}")
    slack = 1e-12 * (1 + sum(abs(t) for t in theta_terms(p, 1)))
    exact = [eval_terminating(p.exact_theta_params(n), n, exact=True) for n in range(1, n_max + 1)]
    whipple = []
    for n in range(1, n_max + 1):
        den = pochhammer(1 + p.sigma, n) * pochhammer(p.beta3, n)
        whipple.append(omega_series(p, n) / den if den else math.nan)
    theta1_ok = exact[0] >= -Fraction(slack)
    failures = tuple(n for n, v in enumerate(exact[1:], start=2) if not v > 0)
    return ThetaCertificate(
        params=p,
        theta=tuple(float(v) for v in exact),
        theta_whipple=tuple(whipple),
        slack=slack,
        theta1_ok=theta1_ok,
        failures=failures,
    )
