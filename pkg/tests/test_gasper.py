from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hyperpos import verification as V
from hyperpos.bessel import jj
from hyperpos.errors import ConditionViolated, DomainError
from hyperpos.gasper import (
    ExpansionContext,
    c_coefficient,
    certify_expansion_positive,
    exact_saalschutzian_nu,
    phi_by_squares,
    saalschutz_params_for,
    saalschutzian_nu,
    w5_conditions,
)
from hyperpos.identities import theta_direct
from hyperpos.regions import F12Point
from hyperpos.series import hyp1f2


def phi(p: F12Point, x: float) -> float:
    return hyp1f2(p.a, p.b, p.c, -x * x / 4)


def test_saalschutzian_nu_examples():
    assert saalschutzian_nu(F12Point(1, 1.5, 2)) == 0.5
    assert saalschutzian_nu(F12Point(1, 2, 2)) == 0.75
    for a in (0.3, 1.7):
        assert_allclose(saalschutzian_nu(F12Point(a, a + 0.5, 2 * a)), a - 0.5, atol=1e-15)
    assert exact_saalschutzian_nu(F12Point(1, 2, 2)) == Fraction(3, 4)


def test_context_rejects_negative_integer_two_nu():
    p = F12Point(1, 2, 2)
    with pytest.raises(DomainError):
        ExpansionContext(p, -1.0)
    with pytest.raises(DomainError):
        ExpansionContext(p, -0.5)
    with pytest.raises(DomainError):
        ExpansionContext(p, 0.75, n_terms=0)
    ExpansionContext(p, -0.25)


# ------------------------------------------------------------------ coefficients


def test_c_first_coefficient_closed_form():
    assert_allclose(c_coefficient(1, 0.75, F12Point(1, 2, 2)), 0.125, rtol=1e-14)
    p = F12Point(0.7, 1.9, 2.6)
    nu = 0.4
    assert_allclose(c_coefficient(1, nu, p), 1 - 2 * (nu + 1) * p.a / (p.b * p.c), rtol=1e-13)


def test_c_vanishes_without_a():
    # a = 0 is outside F12Point; the coefficient formula itself still makes sense
    from hyperpos.series import HyperParams, eval_terminating

    for n in (1, 4, 9):
        assert eval_terminating(HyperParams((-n, n + 1.5, 1.75, 0.0), (1.25, 2.0, 2.0)), n) == 1


def test_c_at_lambda_corner_first_is_zero():
    p = F12Point(1, 1.5, 2)
    assert c_coefficient(1, Fraction(1, 2), p, exact=True) == 0
    assert all(c_coefficient(n, Fraction(1, 2), p, exact=True) == 0 for n in range(2, 8))


def test_c_matches_theta_direct():
    rng = np.random.default_rng(5)
    for _ in range(6):
        p, _ = V.random_expansion_point(rng)
        nu = exact_saalschutzian_nu(p)
        sp = saalschutz_params_for(p, float(nu))
        for n in (1, 7, 18, 30):
            c = float(c_coefficient(n, nu, p, exact=True))
            assert_allclose(c, theta_direct(sp, n), rtol=1e-12, atol=1e-300)


def test_c_index_guard():
    with pytest.raises(DomainError):
        c_coefficient(-1, 0.5, F12Point(1, 2, 2))
    assert c_coefficient(0, 0.5, F12Point(1, 2, 2)) == 1.0


# ------------------------------------------------------------------- expansion


def test_expansion_example():
    p = F12Point(1, 1.5, 2)
    sv = phi_by_squares(ExpansionContext(p, 0.5), 3.0)
    assert_allclose(sv.value, phi(p, 3.0), atol=1e-8)


def test_expansion_small_argument():
    ctx = ExpansionContext.balanced(F12Point(1, 3, 3))
    assert abs(phi_by_squares(ctx, 1e-3).value - 1) <= 1e-6


def test_expansion_at_lambda_is_a_square():
    sv = phi_by_squares(ExpansionContext(F12Point(1, 1.5, 2), 0.5), 2.0)
    assert_allclose(sv.value, jj(0.5, 1.0) ** 2, atol=1e-8)


def test_expansion_identity_twenty_points():
    report = V.gasper_suite(seed=13, n=20)
    assert report.passed, report.failures
    assert report.worst <= 1e-8


def test_expansion_with_free_nu():
    # any admissible nu gives the same function; only the coefficients change
    p = F12Point(0.8, 2.1, 1.7)
    for nu in (0.1, 0.9, 2.2):
        sv = phi_by_squares(ExpansionContext(p, nu, n_terms=70), 4.0)
        assert_allclose(sv.value, phi(p, 4.0), rtol=1e-8)


def test_expansion_guards():
    with pytest.raises(DomainError):
        phi_by_squares(ExpansionContext(F12Point(1, 2, 2), -0.6), 1.0)
    with pytest.raises(DomainError):
        phi_by_squares(ExpansionContext(F12Point(1, 2, 2), 0.75), 0.0)


# ------------------------------------------------------------------ conditions


def test_w5_examples():
    r = w5_conditions(F12Point(1, 3, 3))
    assert r.all_hold
    r = w5_conditions(F12Point(1, 1.2, 2.2))
    assert r.shifted_diagonal and not r.balance_line and not r.hyperbola
    assert not r.all_hold
    # Lambda corner: the second literal reads 2 > 2
    r = w5_conditions(F12Point(1, 1.5, 2))
    assert r.shifted_diagonal and r.hyperbola
    assert not r.balance_line


def test_certify_example():
    cert = certify_expansion_positive(F12Point(1, 3, 3), 40)
    assert cert.verdict
    assert len(cert.coefficients) == 40
    assert cert.nu == 1.75
    assert all(c > 0 for c in cert.coefficients)


def test_certify_guard():
    with pytest.raises(ConditionViolated):
        certify_expansion_positive(F12Point(1, 1.2, 2.2))
    with pytest.raises(ConditionViolated):
        certify_expansion_positive(F12Point(1, 1.5, 2))


@pytest.mark.parametrize("point", [(1, 3, 3), (0.6, 1.4, 1.9), (2.0, 3.2, 4.5)])
def test_nonnegativity_transfer(point):
    p = F12Point(*point)
    cert = certify_expansion_positive(p, 30)
    assert cert.verdict and cert.nu > -0.5
    xs = np.linspace(0.05, 60.0, 600)
    assert min(phi(p, x) for x in xs) > 0


def test_certificate_signs_are_exact():
    # a float sum at n = 40 would carry noise far above the coefficient itself
    cert = certify_expansion_positive(F12Point(2.0, 3.2, 4.5), 40)
    assert math.isfinite(cert.coefficients[-1]) and cert.coefficients[-1] > 0
