"""q-complex numbers: the modular-equivariant extension of [.]_q to the
upper half-plane.

With t = -log q > 0 and s = t/(2 pi i), the value [tau]_q is a ratio of
Gauss hypergeometric functions of the modular lambda of tau:

    [tau]_q = i e^(pi i s) ((1-L)/L)^(2s) F(1/2-s,1/2+s;1+2s; 1-L)
                                           / F(1/2-s,1/2+s;1+2s; L)

(L = lambda(tau)), with an equivalent Gamma-prefactored form that only
needs F at L itself and is better conditioned for small |L|.  All
non-integer powers are principal; certified use is confined to lambda off
the cuts (-oo, 0] and [1, oo), which covers the imaginary axis and the
standard fundamental domain.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .cf import cf_encode_rational, left_limit_any, q_rational_any
from .errors import BranchAmbiguity, DomainError, EvaluationFailure, PoleError, QRealError
from .special import ModularPoint, gamma_quotient, gauss_2f1, theta_lambda

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QComplexParams:
    """Deformation parameter bundle: t > 0, q = e^-t, s = t/(2 pi i)."""

    t: float

    def __post_init__(self):
        if not (self.t > 0.0):
            raise DomainError(f"need t > 0, got {self.t}")

    @property
    def q(self) -> float:
        return math.exp(-self.t)

    @property
    def s(self) -> complex:
        return complex(0.0, -self.t / _TWO_PI)

    def check(self) -> float:
        """|e^(-2 pi i s) - q|; the stored pair must satisfy this to 1e-13."""
        return abs(cmath.exp(-2j * cmath.pi * self.s) - self.q)


def _branch_guard(lam: complex) -> None:
    """Reject lambda whose power/series branch is ambiguous.

    The formulas are single-valued exactly where (1-lambda)/lambda avoids
    the ray (-oo, 0], i.e. lambda avoids (-oo, 0) and (1, oo); approaching
    the endpoints 0 or 1 radially from inside the cut plane is harmless
    (the ratio runs to the positive reals), so the guard is a relative
    wedge around the negative axis of the ratio.
    """
    if abs(lam) < 1e-250 or abs(1.0 - lam) < 1e-250:
        raise BranchAmbiguity(f"lambda = {lam} sits at a logarithmic endpoint")
    ratio = (1.0 - lam) / lam
    if ratio.real < 0.0 and abs(ratio.imag) <= 1e-6 * (1.0 + abs(ratio)):
        raise BranchAmbiguity(f"lambda = {lam} is within 1e-6 of the branch cut")


def _ratio_power(s: complex, lam: complex) -> complex:
    """((1 - lam)/lam)^(2s) on the principal branch."""
    return cmath.exp(2.0 * s * cmath.log((1.0 - lam) / lam))


def form1_value(s: complex, lam: complex, tol: float = 1e-13) -> complex:
    """i e^(pi i s) ((1-L)/L)^(2s) F(.;1-L)/F(.;L) with F = F(1/2-s,1/2+s;1+2s;.)."""
    a, b, c = 0.5 - s, 0.5 + s, 1.0 + 2.0 * s
    num = gauss_2f1(a, b, c, 1.0 - lam, tol).value
    den = gauss_2f1(a, b, c, lam, tol).value
    _pole_guard(den)
    return 1j * cmath.exp(1j * cmath.pi * s) * _ratio_power(s, lam) * num / den


def form2_value(t: float, s: complex, lam: complex, tol: float = 1e-13) -> complex:
    """Gamma-prefactored form needing F only at L; adds the 1/(1-q) shift."""
    q = math.exp(-t)
    pref = gamma_quotient((1.0 + 2.0 * s, 2.0 * s), (0.5 + s, 0.5 + 3.0 * s))
    num = gauss_2f1(0.5 - s, 0.5 + s, 1.0 - 2.0 * s, lam, tol).value
    den = gauss_2f1(0.5 - s, 0.5 + s, 1.0 + 2.0 * s, lam, tol).value
    _pole_guard(den)
    core = 1j * math.exp(t / 2.0) * pref * _ratio_power(s, lam) * num / den
    return core + 1.0 / (1.0 - q)


def _pole_guard(den: complex) -> None:
    """The value has simple poles at zeros of the denominator hypergeometric
    function; enumeration is out of scope, so just report proximity."""
    if abs(den) < 1e-10:
        raise PoleError(f"denominator hypergeometric value {den} is below 1e-10")


def q_complex_value(point: ModularPoint | complex, params: QComplexParams, tol: float = 1e-12) -> complex:
    """[tau]_q for tau in the upper half-plane.

    Accepts a precomputed ModularPoint or tau itself.  lambda only sees tau
    modulo 2, so Re tau is first reduced into [-1, 1] by the exact
    translation rule [tau+2]_q = q^2 [tau]_q + [2]_q; the hypergeometric
    formula is then evaluated on the principal sheet.  Falls back to the
    Gamma-prefactored form when |lambda| < 0.3 (better conditioned near the
    cusp); raises BranchAmbiguity within 1e-6 of the lambda-cuts, where the
    value depends on a continuation path.
    """
    if not isinstance(point, ModularPoint):
        point = theta_lambda(complex(point), min(tol, 1e-13))
    lam = point.lam
    _branch_guard(lam)
    if abs(lam) < 0.3:
        core = form2_value(params.t, params.s, lam, tol)
    else:
        core = form1_value(params.s, lam, tol)
    shift = 2 * round(point.tau.real / 2.0)
    if shift:
        q = params.q
        return q**shift * core + (1.0 - q**shift) / (1.0 - q)
    return core


def h_value(point: ModularPoint | complex, params: QComplexParams, tol: float = 1e-12) -> complex:
    """The 1-periodic part h(t, tau) = e^(t tau) ([tau]_q - 1/(1-q)).

    The nome power is taken tau-analytically (exp(2 s pi i tau)), which
    keeps h exactly consistent with the Gamma-prefactored form of [tau]_q.
    """
    if not isinstance(point, ModularPoint):
        point = theta_lambda(complex(point), min(tol, 1e-13))
    lam, tau = point.lam, point.tau
    _branch_guard(lam)
    tau = tau - 2 * round(tau.real / 2.0)  # h has period 1; stay on the principal sheet
    t, s = params.t, params.s
    pref = gamma_quotient((1.0 + 2.0 * s, 2.0 * s), (0.5 + s, 0.5 + 3.0 * s))
    num = gauss_2f1(0.5 - s, 0.5 + s, 1.0 - 2.0 * s, lam, tol).value
    den = gauss_2f1(0.5 - s, 0.5 + s, 1.0 + 2.0 * s, lam, tol).value
    power = cmath.exp(2.0 * s * (1j * cmath.pi * tau + cmath.log((1.0 - lam) / lam)))
    return 1j * math.exp(t / 2.0) * pref * power * num / den


def h_limit(params: QComplexParams) -> complex:
    """nome -> 0 limit of h: i e^(t/2) 2^(-8s) G(1+2s)G(2s)/(G(1/2+s)G(1/2+3s))."""
    s = params.s
    pref = gamma_quotient((1.0 + 2.0 * s, 2.0 * s), (0.5 + s, 0.5 + 3.0 * s))
    return 1j * math.exp(params.t / 2.0) * cmath.exp(-8.0 * s * math.log(2.0)) * pref


def jacobi_special(n: int, point: ModularPoint | complex) -> complex:
    """[tau] at the half-integer parameter s = n + 1/2: the rational function

        (-1)^(n+1) ((1-L)/L)^(2n+1) P(1+2L)/P(1-2L),

    with P the renormalized Jacobi polynomial of degree n.  Returns complex
    infinity at zeros of the denominator polynomial.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if not isinstance(point, ModularPoint):
        point = theta_lambda(complex(point))
    lam = point.lam
    num = _jacobi_poly(n, 1.0 + 2.0 * lam)
    den = _jacobi_poly(n, 1.0 - 2.0 * lam)
    if den == 0:
        return complex(math.inf, math.inf)
    return (-1.0) ** (n + 1) * ((1.0 - lam) / lam) ** (2 * n + 1) * num / den


def _jacobi_poly(n: int, x: complex) -> complex:
    """P_n^(2n+1, -2n-1)(x) = sum_k (-1)^k (n+k)!/((n-k)! k!) (2n+1)!/(2n+1+k)! ((1-x)/2)^k."""
    total = complex(0.0)
    for k in range(n + 1):
        coeff = Fraction(math.factorial(n + k), math.factorial(n - k) * math.factorial(k))
        coeff *= Fraction(math.factorial(2 * n + 1), math.factorial(2 * n + 1 + k))
        total += (-1) ** k * float(coeff) * ((1.0 - x) / 2.0) ** k
    return total


def boundary_check(
    x,
    approach: str,
    steps: int,
    t: float,
    m_bound: float = 2.0,
    tol: float = 1e-11,
) -> dict:
    """Approach the rational x along an M-bounded path and report residuals.

    The path is tau_n = g(sigma_n) where g in PSL2(Z) sends oo to x (after
    an integer shift into [1, oo)) and sigma_n = -(n+1/2) + iM (approach
    from the right, target [x]_q) or +(n+1/2) + iM (from the left, target
    [x]_q^-).  The half-integer offset keeps the nome phase off the real
    axis so lambda never touches a branch cut.

    g is realized as the continued-fraction tower of x, so [tau_n]_q is
    assembled from [sigma_n]_q (evaluated on the principal sheet, where
    Im sigma = M stays comfortably large) through the exact equivariance
    steps [m - 1/sigma]_q = [m]_q - q^(m-1)/[sigma]_q.  tau_n itself dives
    inside the cusp circles where the principal lambda-sheet no longer
    represents [tau]_q, which is precisely why the tower is used.
    """
    if approach not in ("right", "left"):
        raise DomainError(f"approach must be 'right' or 'left', got {approach}")
    x = Fraction(x)
    shift = max(0, 1 - math.floor(x))
    word = cf_encode_rational(x + shift)
    params = QComplexParams(t)
    q = params.q
    target = q_rational_any(x)(q) if approach == "right" else left_limit_any(x)(q)
    target = complex(target)
    sign = -1.0 if approach == "right" else 1.0
    taus, residuals = [], []
    try:
        for n in range(1, steps + 1):
            sigma = complex(sign * (n + 0.5), m_bound)
            value = q_complex_value(sigma, params, tol)
            tau = sigma
            for c_i in reversed(word.digits):
                qi = (1.0 - q**c_i) / (1.0 - q)
                value = qi - q ** (c_i - 1) / value
                tau = c_i - 1.0 / tau
            if shift:
                value = (value - (1.0 - q**shift) / (1.0 - q)) / q**shift
                tau = tau - shift
            taus.append(tau)
            residuals.append(abs(value - target))
    except QRealError as exc:
        raise EvaluationFailure(f"evaluation failed at step {len(taus) + 1}: {exc}") from exc
    return {
        "x": x,
        "approach": approach,
        "t": t,
        "M": m_bound,
        "target": target,
        "taus": taus,
        "residuals": residuals,
    }
