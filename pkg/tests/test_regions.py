from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from hyperpos.bessel import jj
from hyperpos.errors import DomainError
from hyperpos.regions import (
    AskeyPoint,
    ClassifyMode,
    F12Point,
    GasperPoint,
    Justification,
    RegionLabel,
    Verdict,
    askey_to_f12,
    classify_askey,
    classify_f12,
    classify_gasper,
    gasper_to_f12,
    in_askey_p,
    in_gasper_s,
    in_n_region,
    in_newton_diagram,
    in_o_strip,
    in_p_star,
    lambda_membership,
    region_grid,
)
from hyperpos.series import hyp1f2

pos = st.floats(0.01, 6.0, allow_nan=False)


# --------------------------------------------------------------- point types


def test_point_invariants():
    with pytest.raises(DomainError):
        F12Point(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        AskeyPoint(-1.0, 0.0)
    with pytest.raises(DomainError):
        AskeyPoint(0.0, 1.0)
    with pytest.raises(DomainError):
        GasperPoint(0.0, 0.0, -1.0)


def test_label_pairs_are_checked():
    with pytest.raises(ValueError):
        RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.LAMBDA)
    with pytest.raises(ValueError):
        RegionLabel(Verdict.UNKNOWN, Justification.THM_N1)
    RegionLabel(Verdict.FAILS_NECESSARY, Justification.NECESSITY)


# ------------------------------------------------------------ f12 predicates


def test_lambda_membership():
    assert lambda_membership(F12Point(1, 1.5, 2))
    assert lambda_membership(F12Point(1, 2, 1.5))
    assert not lambda_membership(F12Point(1, 1.5, 2.1))
    assert lambda_membership(F12Point(0.5, 1.0, 1.0))


def test_newton_diagram_examples():
    assert in_newton_diagram(F12Point(1, 1.5, 2))
    assert in_newton_diagram(F12Point(1, 1.55, 1.96))
    assert not in_newton_diagram(F12Point(1, 1.5, 1.9))
    # below a = 1/2 the corners are (a+1/2, 2a) with 2a the smaller coordinate
    assert in_newton_diagram(F12Point(0.25, 0.5, 1.0))
    assert not in_newton_diagram(F12Point(0.25, 0.45, 2.0))


def test_o_strip_examples():
    assert in_o_strip(F12Point(1, 1.2, 2.4))
    assert not in_o_strip(F12Point(1, 1.2, 2.2))
    assert in_o_strip(F12Point(0.25, 0.3, 1.0))
    assert in_o_strip(F12Point(1, 2.4, 1.2))
    # the strip is open at b = a
    assert not in_o_strip(F12Point(1, 1.0, 5.0))


def test_p_star_examples():
    assert in_p_star(F12Point(1, 3, 3))
    assert not in_p_star(F12Point(1, 1.2, 2.4))
    assert in_p_star(F12Point(1, 1.5, 2))


def test_classify_f12_examples():
    assert classify_f12(F12Point(1, 1.5, 2)) == RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.LAMBDA)
    assert classify_f12(F12Point(1, 1.2, 1.2)) == RegionLabel(Verdict.ALTERNATES_IN_SIGN, Justification.THM_N1)
    assert classify_f12(F12Point(1, 1.2, 2.4)).verdict is Verdict.UNKNOWN
    assert classify_f12(F12Point(1, 3, 3)) == RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_N2)


@settings(max_examples=500)
@given(a=pos, b=pos, c=pos)
def test_partition_and_symmetry(a, b, c):
    p = F12Point(a, b, c)
    parts = [
        lambda_membership(p),
        in_p_star(p) and not lambda_membership(p),
        in_n_region(p),
        in_o_strip(p) and not in_p_star(p) and not in_newton_diagram(p),
    ]
    assert sum(parts) == 1
    assert in_p_star(p) == in_p_star(p.swapped())
    assert classify_f12(p) == classify_f12(p.swapped())
    if in_newton_diagram(p):
        assert in_p_star(p)
    assert not (in_p_star(p) and in_n_region(p))


@settings(max_examples=300)
@given(a=pos)
def test_lambda_corners_on_hyperbola(a):
    b, c = a + 0.5, 2 * a
    assert lambda_membership(F12Point(a, b, c))
    assert classify_f12(F12Point(a, c, b)).justification is Justification.LAMBDA
    assert abs(2 * (b - a) * (c - a) - a) <= 1e-12 * max(1.0, a)


# ----------------------------------------------------------------- parameter maps


def test_askey_map_examples():
    p = askey_to_f12(AskeyPoint(0.5, -0.5))
    assert (p.a, p.b, p.c) == (1.0, 1.5, 2.0)
    p = askey_to_f12(AskeyPoint(0.0, 0.0))
    assert (p.a, p.b, p.c) == (0.5, 1.0, 1.5)
    p = askey_to_f12(AskeyPoint(1.7, 1.7))
    assert_allclose((p.a, p.b, p.c), (0.5, 2.7, 1.5))


def test_gasper_map_examples():
    for gamma in (-0.75, 0.0, 1.3):
        g = gamma + 0.5
        p = gasper_to_f12(GasperPoint(g, -g, gamma))
        assert_allclose((p.a, p.b, p.c), (gamma + 1, gamma + 1.5, 2 * (gamma + 1)))
    p = gasper_to_f12(GasperPoint(1.2, 0.0, -0.5))
    assert_allclose((p.a, p.b, p.c), (1.1, 2.2, 1.6))
    q = AskeyPoint(0.3, -0.2)
    assert gasper_to_f12(GasperPoint(0.3, -0.2, 0.0)) == askey_to_f12(q)


# ------------------------------------------------------------------ Askey


def test_classify_askey_examples():
    assert classify_askey(AskeyPoint(0, 0)).verdict is Verdict.STRICTLY_POSITIVE
    assert classify_askey(AskeyPoint(0.5, -0.5)) == RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.LAMBDA)
    assert classify_askey(AskeyPoint(0, -0.34)).verdict is Verdict.UNKNOWN
    exact = classify_askey(AskeyPoint(0, -0.34), ClassifyMode.EXACT)
    assert exact == RegionLabel(Verdict.STRICTLY_POSITIVE, Justification.THM_B)
    below = classify_askey(AskeyPoint(0, -0.36), ClassifyMode.EXACT)
    assert below.verdict is Verdict.FAILS_NECESSARY
    assert classify_askey(AskeyPoint(0, -0.6)).verdict is Verdict.FAILS_NECESSARY
    assert classify_askey(AskeyPoint(-0.8, -0.2)).verdict is Verdict.FAILS_NECESSARY


def test_askey_tags():
    assert classify_askey(AskeyPoint(2.0, -0.4)).justification is Justification.THM_A
    assert classify_askey(AskeyPoint(0.0, -0.3)).justification is Justification.THM_N3


def test_exact_mode_only_below_one_half():
    # outside -1 < alpha <= 1/2 the theorems leave nothing open; exact changes nothing
    for q in (AskeyPoint(1.0, -0.45), AskeyPoint(3.0, 0.2)):
        assert classify_askey(q, ClassifyMode.EXACT) == classify_askey(q)


def test_exact_mode_equality_gives_zeros():
    label = classify_askey(AskeyPoint(0.0, -0.3), ClassifyMode.EXACT, beta_threshold=lambda a: -0.3)
    assert label.verdict is Verdict.STRICTLY_POSITIVE  # in P* already
    label = classify_askey(AskeyPoint(0.0, -0.34), ClassifyMode.EXACT, beta_threshold=lambda a: -0.34)
    assert label == RegionLabel(Verdict.NONNEGATIVE_WITH_ZEROS, Justification.THM_B)


def test_p_star_corner_included():
    # beta = -1/2 = -(alpha+1)/3 at alpha = 1/2 is the Lambda point itself;
    # nearby boundary points of P* are strictly positive
    assert classify_askey(AskeyPoint(0.6, -0.5)).verdict is Verdict.STRICTLY_POSITIVE
    assert classify_askey(AskeyPoint(0.2, -0.39)).verdict is Verdict.STRICTLY_POSITIVE


@settings(max_examples=400)
@given(alpha=st.floats(-0.999, 5.0), beta=st.floats(-3.0, 6.0))
def test_askey_consistency(alpha, beta):
    assume(beta < alpha + 1)
    q = AskeyPoint(alpha, beta)
    label = classify_askey(q)
    f12 = classify_f12(askey_to_f12(q))
    if label.verdict is Verdict.FAILS_NECESSARY:
        assert f12.verdict is Verdict.ALTERNATES_IN_SIGN
    elif label.verdict is not Verdict.UNKNOWN:
        assert f12.verdict is label.verdict


@settings(max_examples=300)
@given(alpha=st.floats(-0.999, 0.4999), beta=st.floats(-0.5, 0.0))
def test_triangle_coverage(alpha, beta):
    assume(beta < min(0.0, -alpha) and beta >= -(alpha + 1) / 3)
    assume(not (alpha == 0.5 and beta == -0.5))
    assert classify_askey(AskeyPoint(alpha, beta)).verdict is Verdict.STRICTLY_POSITIVE


def test_classical_region_inside_p_star():
    for alpha in np.linspace(-0.9, 3, 14):
        for beta in np.linspace(-0.5, alpha + 0.9, 14):
            if in_askey_p(alpha, beta):
                assert classify_askey(AskeyPoint(alpha, beta)).verdict is not Verdict.UNKNOWN


# ----------------------------------------------------------------- Gasper


def test_classify_gasper_examples():
    label = classify_gasper(GasperPoint(2, -0.5, 1))
    assert label.verdict is Verdict.STRICTLY_POSITIVE
    assert label.justification is Justification.THM_N4
    assert label.gasper_original is True
    assert classify_gasper(GasperPoint(1, 0, -0.5)).verdict is Verdict.NONNEGATIVE_WITH_ZEROS
    assert classify_gasper(GasperPoint(0.5, -0.5, 0)).verdict is Verdict.NONNEGATIVE_WITH_ZEROS
    assert classify_gasper(GasperPoint(0.0, -2.0, 1.0)).verdict is Verdict.FAILS_NECESSARY


def test_gasper_original_region():
    assert in_gasper_s(1.0, -0.75, 0.5)
    assert not in_gasper_s(0.5, -0.75, 0.5)  # needs alpha >= gamma + 1/2
    assert in_gasper_s(0.0, 0.6, -0.75)
    assert not in_gasper_s(0.0, 0.0, -0.75)  # below beta = alpha - 2 gamma - 1
    assert not in_gasper_s(-0.5, 0.6, -0.75)
    # the new region strictly enlarges the original one here
    label = classify_gasper(GasperPoint(0.0, -0.3, 0.5))
    assert label.verdict is Verdict.STRICTLY_POSITIVE and label.gasper_original is False


@settings(max_examples=300)
@given(alpha=st.floats(-0.999, 4.0), beta=st.floats(-3.0, 5.0), gamma=st.floats(-0.999, 3.0))
def test_gasper_consistency_with_f12(alpha, beta, gamma):
    assume(beta < alpha + 1)
    label = classify_gasper(GasperPoint(alpha, beta, gamma))
    if label.verdict is Verdict.STRICTLY_POSITIVE:
        assert classify_f12(gasper_to_f12(GasperPoint(alpha, beta, gamma))).verdict in (
            Verdict.STRICTLY_POSITIVE,
            Verdict.UNKNOWN,
        )


# ------------------------------------------------------------------ grids


def test_f12_grid_example():
    grid = region_grid("f12", 8, (0.5, 4.0), (0.5, 4.0), a=1.0)
    assert sum(len(row) for row in grid.labels) == 64
    assert grid.axis1[-1] == 4.0
    i = grid.axis1.index(3.0)
    j = grid.axis2.index(3.0)
    assert grid.labels[i][j].verdict is Verdict.STRICTLY_POSITIVE


@pytest.mark.parametrize("resolution", [2, 9, 40])
def test_askey_grid_necessity_band(resolution):
    grid = region_grid("askey", resolution, (-1.0, 3.0), (-1.0, 3.0))
    for alpha, beta, label in grid.cells():
        if beta < -0.5:
            assert label.verdict is Verdict.FAILS_NECESSARY


def test_gasper_grid_at_zero_matches_askey():
    askey = region_grid("askey", 25)
    gasper = region_grid("gasper", 25, gamma=0.0)
    va = [[lab.verdict for lab in row] for row in askey.labels]
    vg = [[lab.verdict for lab in row] for row in gasper.labels]
    assert va == vg


def test_grid_determinism_and_guards():
    assert region_grid("f12", 6, a=0.5) == region_grid("f12", 6, a=0.5)
    with pytest.raises(DomainError):
        region_grid("f12", 1, a=1.0)
    with pytest.raises(DomainError):
        region_grid("f12", 5)
    with pytest.raises(DomainError):
        region_grid("other", 5)


def test_exact_askey_grid_resolves_band():
    grid = region_grid("askey", (4, 6), (-0.4, 0.4), (-0.5, -0.2), mode="exact")
    inside = [lab for al, be, lab in grid.cells() if -1 < al <= 0.5 and be < al + 1]
    assert all(lab.verdict is not Verdict.UNKNOWN for lab in inside)


# ------------------------------------------------------------ semantics (light)


def _phi_samples(p: F12Point, step: float = 0.25, stop: float = 60.0):
    xs = np.arange(1, int(stop / step) + 1) * step
    return xs, np.array([hyp1f2(p.a, p.b, p.c, -x * x / 4) for x in xs])


@pytest.mark.parametrize("point", [(1, 3, 3), (0.5, 1.2, 1.6), (2.0, 3.5, 3.2)])
def test_positive_label_has_positive_samples(point):
    p = F12Point(*point)
    assert classify_f12(p).verdict is Verdict.STRICTLY_POSITIVE
    assert _phi_samples(p)[1].min() > 0


@pytest.mark.parametrize("point", [(1, 1.2, 1.2), (0.5, 0.3, 0.9), (2.0, 4.0, 0.5)])
def test_alternating_label_changes_sign(point):
    p = F12Point(*point)
    assert classify_f12(p).verdict is Verdict.ALTERNATES_IN_SIGN
    assert _phi_samples(p)[1].min() < 0


@pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
def test_lambda_point_is_a_square(a):
    for p in (F12Point(a, a + 0.5, 2 * a), F12Point(a, 2 * a, a + 0.5)):
        for x in (0.5, 3.0, 11.0, 40.0):
            assert abs(hyp1f2(p.a, p.b, p.c, -x * x / 4) - jj(a - 0.5, x / 2) ** 2) <= 1e-10
