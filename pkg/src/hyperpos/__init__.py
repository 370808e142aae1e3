"""Positivity of 1F2 hypergeometric functions and of integrals of Bessel
functions: series evaluation, terminating-series identities, region
classifiers, sums-of-squares certificates and threshold root solvers."""

from __future__ import annotations

from .bessel import bessel_j, bessel_zero, check_interlacing, jj
from .errors import ConvergenceError, DomainError, HyperposError
from .gasper import ExpansionContext, c_coefficient, certify_expansion_positive, phi_by_squares
from .identities import SaalschutzParams, certify_theta_positive, check_lemma_conditions
from .regions import (
    AskeyPoint,
    F12Point,
    GasperPoint,
    RegionLabel,
    Verdict,
    classify_askey,
    classify_f12,
    classify_gasper,
    region_grid,
)
from .roots import alpha_bar, beta_root, beta_table, integral_closed_form, integral_quadrature
from .series import HyperParams, eval_pfq, eval_pfq_auto, hyp1f2, pochhammer

__all__ = [
    "AskeyPoint",
    "ConvergenceError",
    "DomainError",
    "ExpansionContext",
    "F12Point",
    "GasperPoint",
    "HyperParams",
    "HyperposError",
    "RegionLabel",
    "SaalschutzParams",
    "Verdict",
    "alpha_bar",
    "bessel_j",
    "bessel_zero",
    "beta_root",
    "beta_table",
    "c_coefficient",
    "certify_expansion_positive",
    "certify_theta_positive",
    "check_interlacing",
    "check_lemma_conditions",
    "classify_askey",
    "classify_f12",
    "classify_gasper",
    "eval_pfq",
    "eval_pfq_auto",
    "hyp1f2",
    "integral_closed_form",
    "integral_quadrature",
    "jj",
    "phi_by_squares",
    "pochhammer",
    "region_grid",
]

__version__ = "0.1.0"
