"""q-Bessel, q-trig, Bessel, log-gamma, 2F1, theta/lambda."""

import cmath
import math
import random

import mpmath as mp
import pytest

from qreal.cf import CFStream, CFWord, cf_decode
from qreal.errors import (
    ConvergenceTooSlow,
    DomainError,
    PoleError,
    PoleParameter,
    UnreachableArgument,
    ZeroDenominator,
)
from qreal.series import q_real_series
from qreal.special import (
    bessel_ratio_limit,
    classical_bessel,
    gamma_quotient,
    gauss_2f1,
    log_gamma,
    q_bessel,
    q_bessel_cf,
    q_cos,
    q_cotan,
    q_sin,
    theta01,
    theta_lambda,
    transcendental_qvalue,
)

mp.mp.dps = 30


def test_q_bessel_at_zero_argument():
    assert q_bessel(0.5, 0.3, 0.0).value == 1.0


def test_q_bessel_two_term_truncation():
    # leading behavior: 1 - cz/((1-c)(1-q)) + O(z^2)
    c, q, z = 0.2, 0.1, 1e-6
    val = q_bessel(c, q, z).value
    expect = 1 - c * z / ((1 - c) * (1 - q))
    assert abs(val - expect) < 1e-10


def test_q_bessel_pole_detection():
    with pytest.raises(PoleParameter):
        q_bessel(1.0, 0.3, 0.5)
    with pytest.raises(PoleParameter):
        q_bessel(0.3**-2, 0.3, 0.5)
    with pytest.raises(DomainError):
        q_bessel(0.5, 1.1, 0.5)


def test_q_bessel_continued_fraction_identity():
    # J(qy,q,x)/J(y,q,x) equals the depth-30 continued fraction
    y, x, q = 0.04, 0.2, 0.2
    lhs = q_bessel(q * y, q, x, 1e-15).value / q_bessel(y, q, x, 1e-15).value
    rhs = q_bessel_cf(y, q, x, 30)
    assert abs(lhs - rhs) < 1e-8


def test_q_bessel_tail_bound_oversummation():
    res = q_bessel(0.3, 0.25, 1.7, 1e-10)
    precise = q_bessel(0.3, 0.25, 1.7, 1e-16)
    assert abs(res.value - precise.value) <= res.tail_bound + 1e-16


def test_transcendental_qvalue_matches_series():
    # s=2, r=1 at q = 0.05: the q-Bessel ratio equals the digit-stream value
    v = transcendental_qvalue(2, 1, 0.05, 1e-14)
    ser = q_real_series(CFStream.arithmetic(2, 1), 30)
    assert abs(v - ser(0.05)) < 1e-10


def test_classical_limits_of_arithmetic_streams():
    # J_1(2)/J_2(2): the value of the stream (2,3,4,...) at q=1
    x = bessel_ratio_limit(2, 1)
    assert abs(x - 1.6345) < 1e-3  # loosely quoted elsewhere as ~1.636
    assert abs(x - float(cf_decode(CFWord([2, 3, 4, 5, 6, 7, 8, 9])))) < 1e-4
    # s=2, r=4: the decoded convergents pin cot(1/2), with no 2/r prefactor
    # (convergents of a negative continued fraction decrease toward x)
    y = bessel_ratio_limit(2, 4)
    assert abs(y - 1 / math.tan(0.5)) < 1e-12
    x5 = float(cf_decode(CFWord([2, 6, 10, 14, 18])))
    x4 = float(cf_decode(CFWord([2, 6, 10, 14])))
    assert y < x5 < x4
    assert x5 - y < 1e-9


def test_transcendental_qvalue_near_one_approaches_classical():
    # q -> 1 recovers the classical Bessel ratio (the q -> 0 limit is 1)
    v = transcendental_qvalue(2, 1, 0.998, 1e-14)
    assert abs(v - bessel_ratio_limit(2, 1)) < 0.05
    assert abs(transcendental_qvalue(2, 1, 1e-3, 1e-14) - 1.0) < 0.01


def test_q_trig_classical_limits():
    z = 0.3
    assert abs(q_cos(1.0, z).real - math.cos(z)) < 1e-12
    assert abs(q_sin(1.0, z).real - math.sin(z)) < 1e-12
    assert abs(q_cos(1 - 1e-9, z).real - math.cos(z)) < 1e-7


def test_q_cotan_bridge_to_cotangent_stream():
    # [cotan 1]_q = q^(-1/2) Cotan_q(q^(-1/2)) equals the (1,3,5,...) stream
    q = 0.05
    lhs = q**-0.5 * q_cotan(q, q**-0.5)
    ser = q_real_series(CFStream.arithmetic(1, 2), 40)
    assert abs(lhs - ser(q)) < 1e-12


def test_q_cotan_zero_denominator():
    # Sin_q(z) ~ z near 0 is fine; force a zero by the classical sine root
    with pytest.raises(ZeroDenominator):
        q_cotan(1.0 - 1e-12, math.pi)


def test_classical_bessel_half_order():
    z = 0.5
    expect = math.sqrt(2 / (math.pi * z)) * math.sin(z)
    assert abs(classical_bessel(0.5, z, 1e-15) - expect) < 1e-10
    assert classical_bessel(0.0, 0.0) == 1.0
    assert classical_bessel(2.0, 0.0) == 0.0


def test_classical_bessel_vs_mpmath():
    for nu, z in ((0.0, 1.0), (1.0, 2.0), (2.5, 3.3)):
        assert classical_bessel(nu, z, 1e-14) == pytest.approx(float(mp.besselj(nu, z)), abs=1e-12)


def test_log_gamma_basics():
    assert abs(cmath.exp(log_gamma(0.5)) - math.sqrt(math.pi)) < 1e-14
    z = complex(2.3, 1.1)
    assert abs(cmath.exp(log_gamma(z + 1)) - z * cmath.exp(log_gamma(z))) < 1e-11
    with pytest.raises(PoleError):
        log_gamma(-3.0)


def test_log_gamma_modulus_identity():
    # |G(1/2+s)G(1/2+3s)/(G(1+2s)G(2s))| = (q^(-1/2)-q^(1/2))/sqrt(1/q - 1 + q)
    t = 0.7
    s = complex(0.0, -t / (2 * math.pi))
    q = math.exp(-t)
    lhs = abs(gamma_quotient((0.5 + s, 0.5 + 3 * s), (1 + 2 * s, 2 * s)))
    rhs = (q**-0.5 - q**0.5) / math.sqrt(1 / q - 1 + q)
    assert abs(lhs - rhs) < 1e-13


def test_gauss_2f1_basics():
    assert gauss_2f1(0.3, 0.7, 1.1, 0.0).value == 1.0
    with pytest.raises(PoleError):
        gauss_2f1(0.3, 0.7, -2.0, 0.5)
    with pytest.raises(UnreachableArgument):
        gauss_2f1(0.3, 0.7, 1.1, 1.7)


def test_gauss_value_at_one():
    t = 0.7
    s = complex(0.0, -t / (2 * math.pi))
    q = math.exp(-t)
    val = gauss_2f1(0.5 - s, 0.5 - 3 * s, 1 - 2 * s, 1.0).value
    assert abs(val - 1j / (q**-0.5 - q**0.5)) < 1e-10


def test_gauss_2f1_against_mpmath():
    # the unit-circle points need the Euler integral, which wants
    # Re c > Re b > 0 (the shape of all the q-complex parameter triples)
    rng = random.Random(12)
    pts = [0.4, -3.5, complex(0.85, 0.02), cmath.exp(1j * math.pi / 3), complex(0.4, 0.95)]
    for z in pts:
        a = complex(rng.uniform(-1, 1), rng.uniform(-0.6, 0.6))
        b = complex(rng.uniform(0.15, 0.9), rng.uniform(-0.6, 0.6))
        c = complex(rng.uniform(1.2, 2.0), rng.uniform(-0.4, 0.4))
        mine = gauss_2f1(a, b, c, z, 1e-13).value
        ref = complex(mp.hyp2f1(a, b, c, z))
        assert abs(mine - ref) < 5e-11 * max(1.0, abs(ref))


def test_gauss_euler_pfaff_consistency():
    rng = random.Random(9)
    for _ in range(6):
        a = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
        b = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
        c = complex(rng.uniform(1.0, 2.2), rng.uniform(-0.5, 0.5))
        z = 0.4
        f = gauss_2f1(a, b, c, z).value
        euler = (1 - z) ** (c - a - b) * gauss_2f1(c - a, c - b, c, z).value
        pfaff = (1 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1)).value
        assert abs(f - euler) < 1e-10
        assert abs(f - pfaff) < 1e-10


def test_gauss_contiguous_relation():
    # (c-a) F(a-1) + (2a - c + (b-a) z) F(a) + a (z-1) F(a+1) = 0
    rng = random.Random(21)
    for _ in range(6):
        a = complex(rng.uniform(0.2, 1.2), rng.uniform(-0.5, 0.5))
        b = complex(rng.uniform(-0.8, 1.0), rng.uniform(-0.5, 0.5))
        c = complex(rng.uniform(1.2, 2.2), rng.uniform(-0.3, 0.3))
        z = complex(rng.uniform(-0.4, 0.55), rng.uniform(-0.3, 0.3))
        f0 = gauss_2f1(a - 1, b, c, z).value
        f1 = gauss_2f1(a, b, c, z).value
        f2 = gauss_2f1(a + 1, b, c, z).value
        resid = (c - a) * f0 + (2 * a - c + (b - a) * z) * f1 + a * (z - 1) * f2
        assert abs(resid) < 1e-9


def test_series_tail_bounds_by_oversummation():
    res = gauss_2f1(0.3, 0.9, 1.4, 0.62, 1e-9)
    precise = gauss_2f1(0.3, 0.9, 1.4, 0.62, 1e-15)
    assert abs(res.value - precise.value) <= res.tail_bound + 1e-15


def test_theta_lambda_special_values():
    point = theta_lambda(1j)
    assert abs(point.lam - 0.5) < 1e-12
    point3 = theta_lambda(3j)
    lead = 16 * point3.nome - 128 * point3.nome**2
    assert abs(point3.lam - lead) < 3e-3 * abs(lead)
    with pytest.raises(DomainError):
        theta_lambda(1.0 - 1j)
    with pytest.raises(ConvergenceTooSlow):
        theta_lambda(complex(0.3, 0.01))


def test_theta_lambda_modular_relation():
    tau = complex(0.3, 1.2)
    l1 = theta_lambda(tau).lam
    l2 = theta_lambda(-1 / tau).lam
    assert abs(l1 + l2 - 1.0) < 1e-13


def test_theta_jacobi_identity():
    tau = complex(0.3, 1.2)
    point = theta_lambda(tau)
    t01 = theta01(tau)
    assert abs(point.theta00**4 - point.theta10**4 - t01**4) < 1e-10


def test_theta_vs_mpmath():
    for tau in (1j, complex(0.2, 0.8), complex(-0.4, 1.7)):
        point = theta_lambda(tau)
        nome = complex(cmath.exp(1j * cmath.pi * tau))
        ref00 = complex(mp.jtheta(3, 0, mp.mpc(nome)))
        ref10 = complex(mp.jtheta(2, 0, mp.mpc(nome)))
        assert abs(point.theta00 - ref00) < 1e-12
        assert abs(point.theta10 - ref10) < 1e-12


def test_theta_truncation_oversummation():
    point = theta_lambda(complex(0.1, 0.4), 1e-9)
    precise = theta_lambda(complex(0.1, 0.4), 1e-15)
    assert abs(point.lam - precise.lam) <= 1e-9
