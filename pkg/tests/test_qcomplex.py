"""q-complex numbers: special values, equivariance, asymptotics, boundaries."""

import cmath
import math
from fractions import Fraction

import pytest

from qreal.errors import BranchAmbiguity, DomainError, EvaluationFailure
from qreal.qcomplex import (
    QComplexParams,
    boundary_check,
    form1_value,
    form2_value,
    h_limit,
    h_value,
    jacobi_special,
    q_complex_value,
)
from qreal.special import theta_lambda

RHO = cmath.exp(2j * cmath.pi / 3)


def test_params_invariant():
    for t in (0.3, 0.7, 1.5):
        p = QComplexParams(t)
        assert p.check() <= 1e-13
        assert abs(p.q - math.exp(-t)) < 1e-16
    with pytest.raises(DomainError):
        QComplexParams(-1.0)


@pytest.mark.parametrize("t", [0.3, 0.7, 1.5])
def test_special_value_i(t):
    p = QComplexParams(t)
    assert abs(q_complex_value(1j, p) - 1j * p.q**-0.5) < 1e-9


@pytest.mark.parametrize("t", [0.3, 0.7, 1.5])
def test_special_value_rho(t):
    p = QComplexParams(t)
    assert abs(q_complex_value(RHO, p) - RHO / p.q) < 1e-9


def test_equivariance_at_example_point():
    p = QComplexParams(0.5)
    tau = complex(0.2, 1.3)
    v = q_complex_value(tau, p)
    assert abs(q_complex_value(tau + 1, p) - (p.q * v + 1)) < 1e-8
    assert abs(q_complex_value(-1 / tau, p) + 1 / (p.q * v)) < 1e-8


def test_equivariance_grid():
    worst = 0.0
    for t in (0.3, 0.7, 1.5):
        p = QComplexParams(t)
        for re in (0.05, 0.125, 0.2, 0.275, 0.35):
            for im in (1.05, 1.3, 1.6, 1.9, 2.2):
                tau = complex(re, im)
                v = q_complex_value(tau, p)
                worst = max(worst, abs(q_complex_value(tau + 1, p) - (p.q * v + 1)))
                worst = max(worst, abs(q_complex_value(-1 / tau, p) + 1 / (p.q * v)))
    assert worst < 1e-8


def test_form1_form2_agreement():
    p = QComplexParams(0.5)
    for tau in (complex(0.1, 1.0), complex(0.3, 1.1), 1.2j):
        lam = theta_lambda(tau).lam
        if not 0.3 <= abs(lam) <= 0.95:
            continue
        f1 = form1_value(p.s, lam)
        f2 = form2_value(p.t, p.s, lam)
        assert abs(f1 - f2) < 1e-9


def test_branch_guard():
    p = QComplexParams(0.7)
    # tau = 1 + iy has lambda on the negative real axis: genuinely ambiguous
    with pytest.raises(BranchAmbiguity):
        q_complex_value(complex(1.0, 1.0), p)
    # approaching the lambda -> 0 endpoint radially is fine (large Im tau)
    v = q_complex_value(complex(0.3, 6.0), p)
    assert abs(v) > 0


def test_h_consistency_and_periodicity():
    p = QComplexParams(0.5)
    tau = complex(0.2, 1.3)
    f = q_complex_value(tau, p)
    h = h_value(tau, p)
    assert abs(f - (cmath.exp(-p.t * tau) * h + 1 / (1 - p.q))) < 1e-12
    tau2 = complex(0.1, 2.0)
    assert abs(h_value(tau2 + 1, p) - h_value(tau2, p)) < 1e-9


def test_h_limit_examples():
    # h approaches i e^(pi i s) 2^(-8s) G(1+2s)G(2s)/(G(1/2+s)G(1/2+3s))
    p = QComplexParams(0.7)
    assert abs(h_value(complex(0.3, 8.0), p) - h_limit(p)) < 1e-10
    # |2^(-8s)| = 1 and the Gamma modulus identity give |h_inf| in closed form
    q = p.q
    expect_mod = math.exp(p.t / 2) * math.sqrt(1 / q - 1 + q) / (q**-0.5 - q**0.5)
    assert abs(abs(h_limit(p)) - expect_mod) < 1e-13


def test_minusin_asymptotic_along_diagonal():
    # [tau]_q - 1/(1-q) ~ h_inf q^tau with relative error < 5% by y = 8
    p = QComplexParams(0.7)
    tau = complex(8.0, 8.0)
    v = q_complex_value(tau, p)
    pred = h_limit(p) * cmath.exp(-p.t * tau)
    rel = abs((v - 1 / (1 - p.q)) - pred) / abs(pred)
    assert rel < 0.05


def test_jacobi_special_values():
    assert abs(jacobi_special(0, 1j) - (-1.0)) < 1e-12
    lam = theta_lambda(complex(0.2, 1.1)).lam
    assert abs(jacobi_special(0, complex(0.2, 1.1)) - (-(1 - lam) / lam)) < 1e-12
    # n = 1 against the display with the obvious misprint fixed:
    # ((1-L)/L)^3 (2+L)/(2-L)
    lam15 = theta_lambda(1.5j).lam
    expect = ((1 - lam15) / lam15) ** 3 * (2 + lam15) / (2 - lam15)
    assert abs(jacobi_special(1, 1.5j) - expect) < 1e-12
    with pytest.raises(DomainError):
        jacobi_special(-1, 1j)


def test_half_integer_degeneration():
    # at s = 1/2 the hypergeometric form terminates to the rational formula
    lam = theta_lambda(complex(0.2, 1.1)).lam
    assert abs(form1_value(0.5 + 0j, lam) - (-(1 - lam) / lam)) < 1e-10


def test_boundary_right_integer():
    rep = boundary_check(Fraction(2), "right", 6, 0.7, 2.0)
    res = rep["residuals"]
    assert all(b < a for a, b in zip(res, res[1:]))
    # decay rate ~ q per step; endpoint magnitudes frozen from this oracle
    assert res[0] == pytest.approx(7.34e-2, rel=0.02)
    assert res[5] < 2.5e-3
    q = math.exp(-0.7)
    for a, b in zip(res, res[1:]):
        assert b / a == pytest.approx(q, rel=0.08)


def test_boundary_left_and_translated_targets():
    p = QComplexParams(0.7)
    rep1 = boundary_check(Fraction(1), "left", 5, 0.7, 2.0)
    assert rep1["target"] == pytest.approx(p.q, abs=1e-14)  # [1]^- = q
    res = rep1["residuals"]
    assert all(b < a for a, b in zip(res, res[1:]))
    rep0 = boundary_check(Fraction(0), "left", 5, 0.7, 2.0)
    assert rep0["target"] == pytest.approx(1 - 1 / p.q, abs=1e-13)
    assert rep0["residuals"][-1] < 3e-2
    rep52 = boundary_check(Fraction(5, 2), "right", 5, 0.7, 2.0)
    assert rep52["residuals"][-1] < 1e-3


def test_boundary_validation():
    with pytest.raises(DomainError):
        boundary_check(Fraction(2), "sideways", 3, 0.7)
    # very thin M pushes the path below the theta floor -> wrapped failure
    with pytest.raises(EvaluationFailure):
        boundary_check(Fraction(2), "right", 4, 0.7, 0.04)
