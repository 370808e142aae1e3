"""Bessel functions of the first kind through their 0F1 representation.

The normalized function ``jj(alpha, x) = 0F1(alpha+1; -x^2/4)`` equals
``Gamma(alpha+1) (x/2)^(-alpha) J_alpha(x)``: it is entire in ``x``, equals 1
at the origin and has the same positive zeros as ``J_alpha``.  Zeros are
therefore located on ``jj`` so that the ``t^alpha`` prefactor (singular at
0 for negative orders) never enters the sign test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ScanExhausted
from .series import HyperParams, SeriesValue, eval_pfq_auto

__all__ = [
    "ZeroResult",
    "jj",
    "jj_series",
    "bessel_j",
    "bessel_zero",
    "check_interlacing",
]

SCAN_STEP = math.pi / 8
SCAN_START = 1e-3
SCAN_LIMIT = 200.0
ZERO_RTOL = 1e-13


@dataclass(frozen=True)
class ZeroResult:
    order: float
    index: int
    value: float
    bracket: tuple
    residual: float


def _check_order(alpha: float) -> None:
    if not alpha > -1:
        raise DomainError(f"Bessel order must exceed -1, got {alpha!r}")


def jj_series(alpha: float, x: float) -> SeriesValue:
    _check_order(alpha)
    return eval_pfq_auto(HyperParams((), (alpha + 1,)), -x * x / 4)


def jj(alpha: float, x: float) -> float:
    """Normalized Bessel function 0F1(alpha+1; -x^2/4)."""
    return jj_series(alpha, x).value


def bessel_j(alpha: float, t: float) -> float:
    """J_alpha(t) = (t/2)^alpha / Gamma(alpha+1) * jj(alpha, t), t >= 0."""
    _check_order(alpha)
    if t < 0:
        raise DomainError(f"bessel_j needs t >= 0, got {t!r}")
    if t == 0:
        if alpha == 0:
            return 1.0
        return 0.0 if alpha > 0 else math.inf
    return (t / 2) ** alpha / math.gamma(alpha + 1) * jj(alpha, t)


def bessel_zero(alpha: float, k: int, step: float = SCAN_STEP, limit: float = SCAN_LIMIT) -> ZeroResult:
    """k-th positive zero of J_alpha.

    Scans ``jj`` forward from 1e-3 in steps of ``step`` counting strict sign
    changes, then bisects the k-th bracket down to ``1e-13 * value``.
    """
    _check_order(alpha)
    if k < 1:
        raise DomainError(f"zero index must be positive, got {k}")
    lo = SCAN_START
    f_lo = jj(alpha, lo)
    found = 0
    while True:
        hi = lo + step
        if hi > limit:
            raise ScanExhausted(f"found {found} of {k} zeros of J_{alpha} below {limit}")
        f_hi = jj(alpha, hi)
        if f_hi == 0.0:
            found += 1
            if found == k:
                return ZeroResult(alpha, k, hi, (hi, hi), 0.0)
            # restart just past an exact zero so it is not counted twice
            lo, f_lo = hi, jj(alpha, hi + 1e-9 * hi)
            continue
        if f_lo * f_hi < 0:
            found += 1
            if found == k:
                break
        lo, f_lo = hi, f_hi

    a, b, fa = lo, hi, f_lo
    while b - a > ZERO_RTOL * a:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = jj(alpha, mid)
        if fm == 0.0:
            a = b = mid
            break
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    value = 0.5 * (a + b)
    return ZeroResult(alpha, k, value, (a, b), abs(jj(alpha, value)))


def check_interlacing(alpha: float, k_max: int) -> bool:
    """j_{alpha,k} < j_{alpha+1,k} < j_{alpha,k+1} for k = 1..k_max."""
    zeros = [bessel_zero(alpha, k).value for k in range(1, k_max + 2)]
    shifted = [bessel_zero(alpha + 1, k).value for k in range(1, k_max + 1)]
    return all(zeros[k] < shifted[k] < zeros[k + 1] for k in range(k_max))
