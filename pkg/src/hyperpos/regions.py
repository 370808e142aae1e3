"""Positivity regions for Phi(x) = 1F2(a; b, c; -x^2/4) and its two
integral applications.

Every classifier is a direct transcription of inequalities on the
parameters; the only tolerance is for the measure-zero corner set
``Lambda = {(a+1/2, 2a), (2a, a+1/2)}``.

Regions in the (b, c) plane for fixed a > 0:

* ``P_a``   Newton diagram of Lambda (nonnegativity; strict off Lambda)
* ``O_a``   two strips where the classical criterion is silent
* ``N_a``   complement of P_a and O_a (Phi alternates in sign)
* ``P_a*``  rational extension: b > a, c > a, c >= 3a+1/2-b and
            c >= a + a/(2(b-a)), strictly positive off Lambda
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = [
    "LAMBDA_TOL",
    "Verdict",
    "Justification",
    "ClassifyMode",
    "RegionLabel",
    "F12Point",
    "AskeyPoint",
    "GasperPoint",
    "RegionGrid",
    "lambda_membership",
    "in_newton_diagram",
    "in_o_strip",
    "in_n_region",
    "in_p_star",
    "classify_f12",
    "askey_to_f12",
    "gasper_to_f12",
    "in_askey_p",
    "in_askey_p_star",
    "in_gasper_s",
    "in_gasper_s_star",
    "classify_askey",
    "classify_gasper",
    "region_grid",
]

LAMBDA_TOL = 1e-12


class Verdict(str, enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    NONNEGATIVE_WITH_ZEROS = "NonnegativeWithZeros"
    ALTERNATES_IN_SIGN = "AlternatesInSign"
    FAILS_NECESSARY = "FailsNecessary"
    UNKNOWN = "Unknown"


class Justification(str, enum.Enum):
    THM_A = "ThmA"  # Askey's classical region
    THM_B = "ThmB"  # transcendental threshold beta(alpha), exact mode only
    THM_N1 = "ThmN1"  # Newton-diagram criterion
    THM_N2 = "ThmN2"  # rational extension P_a*
    THM_N3 = "ThmN3"  # Askey-Szego region P*
    THM_N4 = "ThmN4"  # weighted (Gasper) region S_gamma*
    LAMBDA = "Lambda"
    NECESSITY = "Necessity"
    NONE = "none"


class ClassifyMode(str, enum.Enum):
    THEOREMS_ONLY = "theorems"
    EXACT = "exact"


_LEGAL = {
    Verdict.STRICTLY_POSITIVE: {
        Justification.THM_N2,
        Justification.THM_N3,
        Justification.THM_N4,
        Justification.THM_A,
        Justification.THM_B,
    },
    Verdict.NONNEGATIVE_WITH_ZEROS: {Justification.LAMBDA, Justification.THM_B},
    Verdict.ALTERNATES_IN_SIGN: {Justification.THM_N1},
    Verdict.FAILS_NECESSARY: {Justification.NECESSITY},
    Verdict.UNKNOWN: {Justification.NONE},
}


@dataclass(frozen=True)
class RegionLabel:
    verdict: Verdict
    justification: Justification
    # weighted problem only: membership in Gasper's original region S_gamma
    gasper_original: bool | None = None

    def __post_init__(self):
        if self.justification not in _LEGAL[self.verdict]:
            raise ValueError(f"illegal label {self.verdict.value}/{self.justification.value}")


UNKNOWN = RegionLabel(Verdict.UNKNOWN, Justification.NONE)


@dataclass(frozen=True)
class F12Point:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise DomainError(f"1F2 parameters must be positive, got {(self.a, self.b, self.c)}")

    def swapped(self) -> "F12Point":
        return F12Point(self.a, self.c, self.b)


@dataclass(frozen=True)
class AskeyPoint:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta < self.alpha + 1):
            raise DomainError(f"need alpha > -1 and beta < alpha + 1, got {(self.alpha, self.beta)}")


@dataclass(frozen=True)
class GasperPoint:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.gamma > -1 and self.beta < self.alpha + 1):
            raise DomainError(
                "need alpha > -1, gamma > -1, beta < alpha + 1, got "
                f"{(self.alpha, self.beta, self.gamma)}"
            )


# ---------------------------------------------------------------- 1F2 regions


def lambda_membership(p: F12Point, tol: float = LAMBDA_TOL) -> bool:
    a, b, c = p.a, p.b, p.c
    return (abs(b - (a + 0.5)) <= tol and abs(c - 2 * a) <= tol) or (
        abs(b - 2 * a) <= tol and abs(c - (a + 0.5)) <= tol
    )


def in_newton_diagram(p: F12Point) -> bool:
    """Closed convex hull of the two quadrants anchored at Lambda.

    Both corners lie on the line b + c = 3a + 1/2, so the hull is cut out by
    b >= m, c >= m (m the smaller corner coordinate) and that line.
    """
    m = min(p.a + 0.5, 2 * p.a)
    return p.b >= m and p.c >= m and p.b + p.c >= 3 * p.a + 0.5


def in_o_strip(p: F12Point) -> bool:
    a, b, c = p.a, p.b, p.c
    upper = a + 0.5 if a >= 0.5 else 2 * a
    line = 3 * a + 0.5
    return (a < b < upper and c >= line - b) or (a < c < upper and b >= line - c)


def in_n_region(p: F12Point) -> bool:
    return not (in_newton_diagram(p) or in_o_strip(p))


def in_p_star(p: F12Point) -> bool:
    """Rational extension of the Newton diagram.

    The hyperbola c >= a + a/(2(b-a)) is tested as 2(b-a)(c-a) >= a, which
    is the same set once b > a and avoids the division.
    """
    a, b, c = p.a, p.b, p.c
    return b > a and c > a and b + c >= 3 * a + 0.5 and 2 * (b - a) * (c - a) >= a


def classify_f12(p: F12Point) -> RegionLabel:
    if lambda_membership(p):
        return RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.LAMBDA)
    if in_p_star(p):
        return RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_N2)
    if in_n_region(p):
        return RegionLabel(Verdict.ALTERNATES_IN_SIGN, Justification.THM_N1)
    return UNKNOWN


# ------------------------------------------------------- parameter translation


def askey_to_f12(q: AskeyPoint) -> F12Point:
    """Parameters of the 1F2 behind int_0^x t^-beta J_alpha(t) dt."""
    a = (q.alpha - q.beta + 1) / 2
    return F12Point(a, q.alpha + 1, a + 1)


def gasper_to_f12(q: GasperPoint) -> F12Point:
    """Parameters of the 1F2 behind int_0^x (x^2-t^2)^gamma t^-beta J_alpha(t) dt."""
    a = (q.alpha - q.beta + 1) / 2
    return F12Point(a, q.alpha + 1, a + q.gamma + 1)


# ------------------------------------------------------------- (alpha, beta)


def in_askey_p(alpha: float, beta: float) -> bool:
    """Askey's classical positivity region."""
    return (alpha > -1 and 0 <= beta < alpha + 1) or (
        alpha >= 0 and max(-alpha, -0.5) <= beta <= 0
    )


def in_askey_p_star(alpha: float, beta: float) -> bool:
    return alpha > -1 and max(-0.5, -(alpha + 1) / 3) <= beta < alpha + 1


def in_gasper_s(alpha: float, beta: float, gamma: float) -> bool:
    """Gasper's original region S_gamma."""
    if -1 < gamma <= -0.5:
        return alpha >= gamma + 0.5 and alpha - 2 * gamma - 1 <= beta < alpha + 1
    if gamma > -0.5:
        return (alpha > -1 and 0 <= beta < alpha + 1) or (
            alpha >= gamma + 0.5 and -(gamma + 0.5) <= beta <= 0
        )
    return False


def in_gasper_s_star(alpha: float, beta: float, gamma: float) -> bool:
    slope = (2 * gamma + 1) / (2 * gamma + 3)
    return alpha > -1 and max(-(gamma + 0.5), -slope * (alpha + 1)) <= beta < alpha + 1


def _askey_theorems(alpha: float, beta: float) -> RegionLabel:
    # necessity first, so grid cells on the domain edge still get it
    if beta < -0.5 or beta <= -alpha - 1:
        return RegionLabel(Verdict.FAILS_NECESSARY, Justification.NECESSITY)
    if not (alpha > -1 and beta < alpha + 1):
        return UNKNOWN
    if abs(alpha - 0.5) <= LAMBDA_TOL and abs(beta + 0.5) <= LAMBDA_TOL:
        return RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.LAMBDA)
    if in_askey_p(alpha, beta):
        return RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_A)
    if in_askey_p_star(alpha, beta):
        return RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_N3)
    return UNKNOWN


def classify_askey(
    q: AskeyPoint,
    mode: ClassifyMode | str = ClassifyMode.THEOREMS_ONLY,
    beta_threshold: Callable[[float], float] | None = None,
) -> RegionLabel:
    """Sign behaviour of psi(x) = int_0^x t^-beta J_alpha(t) dt.

    ``exact`` mode settles the leftover points with -1 < alpha <= 1/2 by
    comparing beta with the transcendental threshold beta(alpha); pass
    ``beta_threshold`` to reuse a cached solver.
    """
    mode = ClassifyMode(mode)
    label = _askey_theorems(q.alpha, q.beta)
    if label.verdict is not Verdict.UNKNOWN or mode is ClassifyMode.THEOREMS_ONLY:
        return label
    if not q.alpha <= 0.5:
        return label
    if beta_threshold is None:
        from .roots import beta_root

        threshold = beta_root(q.alpha).value
    else:
        threshold = beta_threshold(q.alpha)
    if abs(q.beta - threshold) <= 1e-9:
        return RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.THM_B)
    if q.beta > threshold:
        return RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_B)
    return RegionLabel(Verdict.FAILS_NECESSARY, Justification.NECESSITY)


def _gasper_label(alpha: float, beta: float, gamma: float) -> RegionLabel:
    original = in_gasper_s(alpha, beta, gamma)
    if beta < -(gamma + 0.5) or beta <= -alpha - 1:
        return RegionLabel(Verdict.FAILS_NECESSARY, Justification.NECESSITY, original)
    if not (alpha > -1 and gamma > -1 and beta < alpha + 1):
        return RegionLabel(Verdict.UNKNOWN, Justification.NONE, original)
    tol = LAMBDA_TOL
    if (abs(alpha - (gamma + 0.5)) <= tol and abs(beta + gamma + 0.5) <= tol) or (
        abs(gamma + 0.5) <= tol and abs(beta) <= tol
    ):
        return RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.LAMBDA, original)
    if in_gasper_s_star(alpha, beta, gamma):
        return RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_N4, original)
    return RegionLabel(Verdict.UNKNOWN, Justification.NONE, original)


def classify_gasper(q: GasperPoint) -> RegionLabel:
    """Sign behaviour of int_0^x (x^2-t^2)^gamma t^-beta J_alpha(t) dt."""
    return _gasper_label(q.alpha, q.beta, q.gamma)


# -------------------------------------------------------------------- grids


@dataclass(frozen=True)
class RegionGrid:
    """Labels on a rectangle; ``labels[i][j]`` sits at (axis1[i], axis2[j])."""

    kind: str
    axis_names: tuple
    axis1: tuple
    axis2: tuple
    labels: tuple
    fixed: dict

    def cells(self):
        for i, u in enumerate(self.axis1):
            for j, v in enumerate(self.axis2):
                yield u, v, self.labels[i][j]


_DEFAULT_RANGES = {
    "f12": ((0.05, 4.0), (0.05, 4.0)),
    "askey": ((-1.0, 3.0), (-1.0, 3.0)),
    "gasper": ((-1.0, 3.0), (-1.0, 3.0)),
}


def _f12_cell(a: float, b: float, c: float) -> RegionLabel:
    if not (a > 0 and b > 0 and c > 0):
        return UNKNOWN
    return classify_f12(F12Point(a, b, c))


def region_grid(
    kind: str,
    resolution: int | tuple = 200,
    range1: tuple | None = None,
    range2: tuple | None = None,
    *,
    a: float | None = None,
    gamma: float | None = None,
    mode: ClassifyMode | str = ClassifyMode.THEOREMS_ONLY,
) -> RegionGrid:
    """Classify every node of a rectangular grid.

    ``f12`` spans (b, c) at fixed ``a``; ``askey`` and ``gasper`` span
    (alpha, beta), the latter at fixed ``gamma``.  Cells outside a kind's
    parameter domain are labelled Unknown unless a necessary condition
    already fails there.
    """
    if kind not in _DEFAULT_RANGES:
        raise DomainError(f"unknown grid kind {kind!r}")
    n1, n2 = (resolution, resolution) if isinstance(resolution, int) else resolution
    if n1 < 2 or n2 < 2:
        raise DomainError("grid resolution must be at least 2 per axis")
    r1 = range1 or _DEFAULT_RANGES[kind][0]
    r2 = range2 or _DEFAULT_RANGES[kind][1]
    axis1 = tuple(float(v) for v in np.linspace(r1[0], r1[1], n1))
    axis2 = tuple(float(v) for v in np.linspace(r2[0], r2[1], n2))

    if kind == "f12":
        if a is None or not a > 0:
            raise DomainError("f12 grid needs a > 0")
        fixed = {"a": a}
        names = ("b", "c")
        cell = lambda u, v: _f12_cell(a, u, v)
    elif kind == "askey":
        fixed = {}
        names = ("alpha", "beta")
        mode = ClassifyMode(mode)
        if mode is ClassifyMode.EXACT:
            from .roots import beta_root

            cache: dict = {}

            def threshold(al: float) -> float:
                if al not in cache:
                    cache[al] = beta_root(al).value
                return cache[al]

            def cell(u, v):
                label = _askey_theorems(u, v)
                if label.verdict is Verdict.UNKNOWN and u > -1 and v < u + 1:
                    return classify_askey(AskeyPoint(u, v), mode, threshold)
                return label
        else:
            cell = _askey_theorems
    else:
        if gamma is None or not gamma > -1:
            raise DomainError("gasper grid needs gamma > -1")
        fixed = {"gamma": gamma}
        names = ("alpha", "beta")
        cell = lambda u, v: _gasper_label(u, v, gamma)

    labels = tuple(tuple(cell(u, v) for v in axis2) for u in axis1)
    return RegionGrid(kind, names, axis1, axis2, labels, fixed)
