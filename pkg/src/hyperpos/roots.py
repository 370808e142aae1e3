"""Integrals of t^-beta J_alpha(t), the functionals A and G, and the
thresholds beta(alpha) and alpha-bar.

Termwise integration gives

    int_0^x t^-beta J_alpha(t) dt
        = x^(alpha-beta+1) / (2^alpha (alpha-beta+1) Gamma(alpha+1))
          * 1F2((alpha-beta+1)/2; alpha+1, (alpha-beta+3)/2; -x^2/4),

which is what the root solvers evaluate.  ``integral_quadrature`` computes
the same integral without the hypergeometric machinery (power series near
0, adaptive Gauss-Kronrod beyond) and serves as the independent check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from scipy import integrate, special

from .bessel import bessel_zero
from .errors import BracketFailed, DomainError, QuadratureFailed
from .series import hyp1f2

__all__ = [
    "ROOT_TOL",
    "ALPHA_BAR_TOL",
    "BRACKET_INSET",
    "RootResult",
    "BetaTableRow",
    "psi",
    "sigma",
    "integral_closed_form",
    "weighted_integral_closed_form",
    "integral_quadrature",
    "second_zero",
    "a_function",
    "g_function",
    "solve_bracketed",
    "beta_root",
    "alpha_bar",
    "beta_table",
]

ROOT_TOL = 1e-9
ALPHA_BAR_TOL = 1e-10
BRACKET_INSET = 1e-6
QUAD_ABS_TOL = 1e-11


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple
    residual: float
    iterations: int


@dataclass(frozen=True)
class BetaTableRow:
    alpha: float
    beta_of_alpha: float
    upper_bound: float
    gap: float


def _check_askey(alpha: float, beta: float) -> None:
    if not alpha > -1:
        raise DomainError(f"need alpha > -1, got {alpha!r}")
    if not beta < alpha + 1:
        raise DomainError(f"need beta < alpha + 1, got beta={beta!r}, alpha={alpha!r}")


def psi(alpha: float, beta: float, x: float) -> float:
    """Normalized integral: the 1F2 factor alone, equal to 1 at x = 0."""
    _check_askey(alpha, beta)
    a = (alpha - beta + 1) / 2
    return hyp1f2(a, alpha + 1, a + 1, -x * x / 4)


def sigma(alpha: float, beta: float, gamma: float, x: float) -> float:
    """Normalized weighted integral, the 1F2 factor of the (x^2-t^2)^gamma case."""
    _check_askey(alpha, beta)
    if not gamma > -1:
        raise DomainError(f"need gamma > -1, got {gamma!r}")
    a = (alpha - beta + 1) / 2
    return hyp1f2(a, alpha + 1, a + gamma + 1, -x * x / 4)


def integral_closed_form(alpha: float, beta: float, x: float) -> float:
    """int_0^x t^-beta J_alpha(t) dt via its 1F2 representation."""
    _check_askey(alpha, beta)
    if not x > 0:
        raise DomainError(f"need x > 0, got {x!r}")
    s = alpha - beta + 1
    pre = x**s / (2**alpha * s * math.gamma(alpha + 1))
    return pre * psi(alpha, beta, x)


def weighted_integral_closed_form(alpha: float, beta: float, gamma: float, x: float) -> float:
    """int_0^x (x^2 - t^2)^gamma t^-beta J_alpha(t) dt."""
    _check_askey(alpha, beta)
    if not gamma > -1:
        raise DomainError(f"need gamma > -1, got {gamma!r}")
    if not x > 0:
        raise DomainError(f"need x > 0, got {x!r}")
    half = (alpha - beta + 1) / 2
    pre = special.beta(gamma + 1, half) / (2 ** (alpha + 1) * math.gamma(alpha + 1))
    return pre * x ** (alpha - beta + 2 * gamma + 1) * sigma(alpha, beta, gamma, x)


def _head_series(alpha: float, beta: float, eps: float) -> float:
    # termwise integral of the J_alpha power series times t^-beta over [0, eps]
    total = 0.0
    k = 0
    while True:
        power = alpha - beta + 2 * k + 1
        term = (-1) ** k * eps**power / (
            math.factorial(k) * math.gamma(alpha + k + 1) * 2 ** (alpha + 2 * k) * power
        )
        total += term
        if abs(term) <= 1e-18 * max(1.0, abs(total)) or k > 60:
            return total
        k += 1


def integral_quadrature(alpha: float, beta: float, x: float) -> float:
    """Independent evaluation of int_0^x t^-beta J_alpha(t) dt.

    [0, eps] with eps = min(1/2, x/4) is integrated through the power series
    (which handles the t^(alpha-beta) endpoint singularity exactly); the
    rest goes to adaptive Gauss-Kronrod quadrature with scipy's J_alpha.
    """
    _check_askey(alpha, beta)
    if not x > 0:
        raise DomainError(f"need x > 0, got {x!r}")
    eps = min(0.5, x / 4)
    head = _head_series(alpha, beta, eps)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        tail, err, info, *rest = integrate.quad(
            lambda t: t**-beta * special.jv(alpha, t),
            eps,
            x,
            epsabs=QUAD_ABS_TOL,
            epsrel=1e-12,
            limit=200,
            full_output=True,
        )
    if rest or err > 1e3 * QUAD_ABS_TOL:
        raise QuadratureFailed(f"quadrature did not converge on [{eps}, {x}]: error {err:.2e}")
    return head + tail


@lru_cache(maxsize=512)
def second_zero(alpha: float) -> float:
    """j_{alpha,2}, cached per order."""
    return bessel_zero(alpha, 2).value


def _check_threshold_order(alpha: float) -> None:
    if not -1 < alpha <= 0.5:
        raise DomainError(f"threshold problems need -1 < alpha <= 1/2, got {alpha!r}")


def a_function(alpha: float, beta: float) -> float:
    """A(beta) = int_0^{j_{alpha,2}} t^-beta J_alpha(t) dt."""
    _check_threshold_order(alpha)
    return integral_closed_form(alpha, beta, second_zero(alpha))


def g_function(alpha: float) -> float:
    """G(alpha) = A(beta = alpha)."""
    if not alpha > -0.5:
        raise DomainError(f"G needs alpha > -1/2, got {alpha!r}")
    return a_function(alpha, alpha)


def solve_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    f_lo: float | None = None,
    f_hi: float | None = None,
    max_iter: int = 200,
) -> RootResult:
    """Illinois false position guarded by bisection.

    Every iterate stays inside the current bracket, and a bisection step is
    forced whenever two consecutive steps fail to halve it.  Iteration stops
    once both the bracket width and the smaller endpoint residual are within
    ``tol``, or the bracket has collapsed to a few ulps.
    """
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0:
        return RootResult(lo, (lo, lo), 0.0, 0)
    if f_hi == 0:
        return RootResult(hi, (hi, hi), 0.0, 0)
    if (f_lo < 0) == (f_hi < 0):
        raise BracketFailed(f"no sign change on [{lo}, {hi}]: f = ({f_lo:.3e}, {f_hi:.3e})")
    side = 0
    width_before = hi - lo
    slow = 0
    it = 0
    best = min(abs(f_lo), abs(f_hi))
    while (hi - lo > tol or best > tol) and hi - lo > 4e-16 * max(abs(lo), abs(hi)) and it < max_iter:
        it += 1
        if slow >= 2:
            m = 0.5 * (lo + hi)
            slow = 0
        else:
            m = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
            if not lo < m < hi:
                m = 0.5 * (lo + hi)
        fm = f(m)
        if fm == 0:
            return RootResult(m, (m, m), 0.0, it)
        best = min(best, abs(fm))
        if (fm < 0) == (f_lo < 0):
            lo, f_lo = m, fm
            if side == -1:
                f_hi *= 0.5
            side = -1
        else:
            hi, f_hi = m, fm
            if side == 1:
                f_lo *= 0.5
            side = 1
        width = hi - lo
        slow = slow + 1 if width > 0.5 * width_before else 0
        if slow == 0:
            width_before = width
    # Illinois halving distorts the stored endpoint values; re-evaluate
    r_lo, r_hi = abs(f(lo)), abs(f(hi))
    value, residual = (lo, r_lo) if r_lo <= r_hi else (hi, r_hi)
    return RootResult(value, (lo, hi), residual, it)


def _expand_bracket(f, lo, hi, floor, ceiling, f_lo, f_hi):
    step = BRACKET_INSET
    for _ in range(40):
        if (f_lo < 0) != (f_hi < 0) or f_lo == 0 or f_hi == 0:
            return lo, hi, f_lo, f_hi
        step *= 2
        new_lo = max(lo - step, floor)
        new_hi = min(hi + step, ceiling)
        if new_lo == lo and new_hi == hi:
            break
        if new_lo != lo:
            lo, f_lo = new_lo, f(new_lo)
        if new_hi != hi:
            hi, f_hi = new_hi, f(new_hi)
    if (f_lo < 0) != (f_hi < 0) or f_lo == 0 or f_hi == 0:
        return lo, hi, f_lo, f_hi
    raise BracketFailed(
        f"A(beta) keeps one sign on [{lo}, {hi}]; this contradicts the uniqueness of beta(alpha)"
    )


def beta_root(alpha: float, tol: float = ROOT_TOL) -> RootResult:
    """beta(alpha): the zero of A on the a-priori bracket, widened if needed.

    The starting bracket is (max(-alpha-1, -1/2) + 1e-6, -(alpha+1)/3].  At
    alpha = 1/2 that interval is empty (the root sits at -1/2 exactly), so
    the search starts from a 2e-6 window centred on the upper bound.
    """
    _check_threshold_order(alpha)
    f = lambda beta: a_function(alpha, beta)
    lo = max(-alpha - 1, -0.5) + BRACKET_INSET
    hi = -(alpha + 1) / 3
    if lo >= hi:
        lo, hi = hi - BRACKET_INSET, hi + BRACKET_INSET
    floor = -alpha - 1 + 0.5 * BRACKET_INSET
    ceiling = alpha + 1 - 0.5 * BRACKET_INSET
    lo, hi, f_lo, f_hi = _expand_bracket(f, lo, hi, floor, ceiling, f(lo), f(hi))
    return solve_bracketed(f, lo, hi, tol, f_lo, f_hi)


def alpha_bar(tol: float = ALPHA_BAR_TOL) -> RootResult:
    """The zero of G on (-1/2 + 1e-6, -1/4]."""
    lo, hi = -0.5 + BRACKET_INSET, -0.25
    f_lo, f_hi = g_function(lo), g_function(hi)
    if (f_lo < 0) == (f_hi < 0):
        raise BracketFailed(f"G keeps one sign on [{lo}, {hi}]: ({f_lo:.3e}, {f_hi:.3e})")
    return solve_bracketed(g_function, lo, hi, tol, f_lo, f_hi)


def beta_table(alphas: Iterable[float], tol: float = ROOT_TOL) -> list[BetaTableRow]:
    rows = []
    for alpha in alphas:
        value = beta_root(alpha, tol).value
        upper = -(alpha + 1) / 3
        rows.append(BetaTableRow(alpha, value, upper, upper - value))
    return rows
