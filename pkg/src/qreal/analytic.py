"""Numeric evaluation of [x]_q with certificates where the theory gives them.

The reciprocal expansion 1/[x]_q = sum_j q^(C_j)/(a_j a_{j+1}) converges

* on the region D given in polar form by r + 1/r - 2 > 4 sin(theta/2),
  with a fully certified geometric tail (the a-parameter of the region
  controls |a_{N+1}| >= sqrt(r) a |a_N|);
* on the disk |q| < 2 - sqrt(3), where the tail control is asymptotic
  only, so results are flagged heuristic;
* on the real interval (-R*, 0), R* = (3 - sqrt(5))/2, where decay is
  detected empirically (flagged heuristic).

Terms are accumulated through the ratio recursion R_N = a_{N+1}/a_N, so
nothing overflows even for very long digit sources.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .cf import CFWord, DigitSource, left_limit_symbolic, q_rational_any
from .errors import (
    DomainError,
    EvaluationFailure,
    NoDecayDetected,
    OutsideDisk,
    OutsideInterval,
    OutsideRegion,
    ToleranceUnreachable,
)
from .series import R_STAR

#: radius of the largest origin-centered disk inside D: 3 - 2*sqrt(2)
DISK_D = 3.0 - 2.0 * math.sqrt(2.0)
#: radius of the zero-free-annulus disk: 2 - sqrt(3)
DISK_ANNULUS = 2.0 - math.sqrt(3.0)

_EPS = 2.2e-16


@dataclass(frozen=True)
class CertifiedComplex:
    """A complex value with an error radius; `certified` means |value - truth| <= err."""

    value: complex
    err: float
    flag: str  # "certified" | "heuristic"
    terms: int = 0  # reciprocal-expansion terms consumed

    def __iter__(self):
        return iter((self.value, self.err, self.flag))


@dataclass(frozen=True)
class RegionParams:
    """Geometry of q inside region D: radius, argument, and the tail parameter a > 1."""

    r: float
    theta: float
    a: float

    @property
    def alpha(self) -> float:
        """alpha = sqrt(r) * a, the certified continuant growth ratio."""
        return math.sqrt(self.r) * self.a


def in_region_D(q: complex) -> bool:
    """Membership in D.  q = 0 counts as inside (the series is trivially 1)."""
    q = complex(q)
    r = abs(q)
    if r == 0.0:
        return True
    if r > 1.0:
        raise DomainError("in_region_D expects |q| <= 1; use parameter_inverse for |q| > 1")
    theta = cmath.phase(q) % (2.0 * math.pi)
    return r + 1.0 / r - 2.0 > 4.0 * math.sin(theta / 2.0)


def solve_a(q: complex) -> RegionParams:
    """Tail parameter a > 1 from (1/r - r)/sqrt(r + 1/r - 2 cos theta) = a + 1/a."""
    q = complex(q)
    r = abs(q)
    if r == 0.0 or not in_region_D(q):
        raise OutsideRegion(f"q = {q} is not in region D")
    theta = cmath.phase(q) % (2.0 * math.pi)
    lhs = (1.0 / r - r) / math.sqrt(r + 1.0 / r - 2.0 * math.cos(theta))
    if lhs <= 2.0:
        raise OutsideRegion(f"q = {q} is not in region D")
    a = (lhs + math.sqrt(lhs * lhs - 4.0)) / 2.0
    return RegionParams(r=r, theta=theta, a=a)


def _digit(src: DigitSource, i: int):
    """c_i of the source, or None past the end of a finite word."""
    if isinstance(src, CFWord):
        return src.digits[i - 1] if i <= len(src) else None
    return src.digit(i)


class _TermWalker:
    """Terms t_j = q^(C_j)/(a_j a_{j+1}) via the ratio recursion (overflow-safe)."""

    def __init__(self, src: DigitSource, q: complex):
        self.src = src
        self.q = q
        self.j = 0
        self.n_digits = 1
        c1 = _digit(src, 1)
        if c1 is None:
            raise DomainError("empty digit source")
        self.c_last = c1
        self.r_prev = None
        self.r_cur = self._q_int(c1)  # R_0 = a_1/a_0
        self.term = 1.0 / self.r_cur
        self.log_abs_a = math.log(abs(self.r_cur))
        self.weight_excess = c1 - 2  # E_N = sum (c_i - 2)
        self.exhausted = False

    def _q_int(self, n: int) -> complex:
        q = self.q
        if q == 1.0:
            return complex(n)
        return (1.0 - q**n) / (1.0 - q)

    def advance(self) -> bool:
        """Move to the next term; False when a finite word is exhausted."""
        c_next = _digit(self.src, self.n_digits + 1)
        if c_next is None:
            self.exhausted = True
            return False
        w = self.c_last - 1
        r_new = self._q_int(c_next) - self.q**w / self.r_cur
        if r_new == 0:
            raise EvaluationFailure("continuant ratio hit zero during evaluation")
        self.term = self.term * self.q**w / (self.r_cur * r_new)
        self.r_prev, self.r_cur = self.r_cur, r_new
        self.log_abs_a += math.log(abs(r_new))
        self.c_last = c_next
        self.n_digits += 1
        self.weight_excess += c_next - 2
        self.j += 1
        return True


def _reciprocal_to_value(s: complex, tail: float, absum: float, terms: int) -> tuple[complex, float]:
    """Propagate a tail bound on S ~ 1/[x]_q through the reciprocal."""
    mag = abs(s)
    if mag <= tail:
        raise ToleranceUnreachable("partial sum smaller than its own tail bound")
    value = 1.0 / s
    rounding = _EPS * (terms + 4) * absum
    e = tail + rounding
    err = e / (mag * (mag - e)) + _EPS * (1.0 + abs(value))
    return value, err


def eval_in_D(src: DigitSource, q: complex, tol: float = 1e-12, max_terms: int = 200000) -> CertifiedComplex:
    """Certified evaluation of [x]_q for q in region D, x >= 1.

    The reported err bounds |value - [x]_q|; the stop rule uses the
    geometric tail estimate of the region (factor a^{-2} per term).
    """
    q = complex(q)
    if tol < 4 * _EPS:
        raise ToleranceUnreachable(f"tol {tol} is below double precision")
    if q == 0:
        return CertifiedComplex(complex(1.0), 0.0, "certified", 1)
    params = solve_a(q)
    a, r = params.a, params.r
    geom = 1.0 / (1.0 - a**-2)
    walker = _TermWalker(src, q)
    s = walker.term
    absum = abs(walker.term)
    while True:
        n = walker.n_digits
        tail = r**walker.weight_excess / math.sqrt(r) * a ** (-2 * n - 1) * geom
        mag = abs(s)
        if mag > 2.0 * tail:
            # inner target that makes the propagated reciprocal error <= tol
            if tail + _EPS * (n + 4) * absum <= 0.45 * tol * mag * mag:
                return _finish_certified(s, tail, absum, n)
        if walker.j + 1 >= max_terms:
            raise ToleranceUnreachable(f"tol {tol} not reached within {max_terms} terms")
        if not walker.advance():
            return _finish_certified(s, 0.0, absum, walker.n_digits)
        s += walker.term
        absum += abs(walker.term)


def _finish_certified(s: complex, tail: float, absum: float, terms: int) -> CertifiedComplex:
    value, err = _reciprocal_to_value(s, tail, absum, terms)
    return CertifiedComplex(value, err, "certified", terms)


def continuant_min_modulus(d: int, R: float, r: float) -> float:
    """min |a(z)| on |z| = r over monic degree-d polynomials with constant
    term 1 and all roots in the annulus R <= |z| <= 1/R.

    Closed form: (R-r)^(d/2) (1/R - r)^(d/2) for even d, with an extra
    (1-r) factor replacing one paired root for odd d.
    """
    if d < 1:
        raise DomainError("degree must be >= 1")
    if not (0.0 < r < R <= 1.0):
        raise DomainError(f"need 0 < r < R <= 1, got r={r}, R={R}")
    if d % 2 == 0:
        return (R - r) ** (d // 2) * (1.0 / R - r) ** (d // 2)
    return (R - r) ** ((d - 1) // 2) * (1.0 / R - r) ** ((d - 1) // 2) * (1.0 - r)


def eval_in_disk(src: DigitSource, q: complex, tol: float = 1e-12, max_terms: int = 100000) -> CertifiedComplex:
    """Evaluation of [x]_q on |q| < 2 - sqrt(3) (heuristic stop rule).

    The stop rule wants three consecutive term magnitudes below tol; the
    zero-free-annulus lower bound on |a_N(q)| is monitored as a sanity
    check (its violation means the evaluation went numerically wrong).
    """
    q = complex(q)
    if q == 0:
        return CertifiedComplex(complex(1.0), 0.0, "heuristic", 1)
    r = abs(q)
    if r >= DISK_ANNULUS:
        raise OutsideDisk(f"|q| = {r} >= 2 - sqrt(3)")
    walker = _TermWalker(src, q)
    s = walker.term
    small = 0
    last = abs(walker.term)
    while True:
        weight = walker.weight_excess + walker.n_digits  # C_N
        floor = continuant_min_modulus(max(weight, 1), R_STAR, r)
        if walker.log_abs_a < math.log(floor) - 25.0:
            raise EvaluationFailure("continuant modulus fell below the annulus floor")
        if not walker.advance():
            return CertifiedComplex(
                1.0 / s, max(_EPS * 8 * (1 + abs(1.0 / s)), 0.0), "heuristic", walker.n_digits
            )
        s += walker.term
        last = abs(walker.term)
        small = small + 1 if last < tol / 4 else 0
        if small >= 3:
            err = max(tol, 8.0 * last) + _EPS * (walker.j + 4)
            mag = abs(s)
            return CertifiedComplex(
                1.0 / s, err / (mag * mag) + _EPS * (1 + 1 / mag), "heuristic", walker.n_digits
            )
        if walker.j >= max_terms:
            raise NoDecayDetected(f"no stop within {max_terms} terms")


def eval_negative_q(src: DigitSource, q: float, tol: float = 1e-12, max_terms: int = 100000) -> CertifiedComplex:
    """Evaluation of [x]_q for real q in (-R*, 0) (heuristic).

    Finite words are summed exactly; for streams a least-squares fit of
    log|term| over the last 10 terms detects sustained geometric decay and
    the fitted ratio supplies the tail estimate.
    """
    q = float(q)
    if not (-R_STAR < q < 0.0):
        raise OutsideInterval(f"q = {q} is not in (-R*, 0)")
    walker = _TermWalker(src, complex(q))
    s = walker.term
    logs = [math.log(abs(walker.term))]
    while True:
        if not walker.advance():
            value = 1.0 / s.real
            return CertifiedComplex(
                complex(value), _EPS * 8 * (1 + abs(value)), "heuristic", walker.n_digits
            )
        s += walker.term
        logs.append(math.log(abs(walker.term)))
        if len(logs) >= 10:
            rho = math.exp(_ls_slope(logs[-10:]))
            if rho < 0.999:
                tail = abs(walker.term) * rho / (1.0 - rho)
                mag = abs(s)
                if tail < 0.45 * tol * mag * mag and mag > 2 * tail:
                    value = 1.0 / s
                    err = tail / (mag * (mag - tail)) + _EPS * (1 + abs(value))
                    return CertifiedComplex(value, err, "heuristic", walker.n_digits)
        if walker.j >= max_terms:
            raise NoDecayDetected(f"no sustained decay within {max_terms} terms")


def _ls_slope(ys) -> float:
    """Least-squares slope of ys against 0..len-1."""
    n = len(ys)
    xbar = (n - 1) / 2.0
    ybar = sum(ys) / n
    num = sum((i - xbar) * (y - ybar) for i, y in enumerate(ys))
    den = sum((i - xbar) ** 2 for i in range(n))
    return num / den


def left_limit(word: CFWord, q=None):
    """[x]_q^- = [[c_1..c_N, oo]]_q: numeric at q, symbolic when q is None.

    The last level of the fraction is replaced by [c_N]_q - q^(c_N-1)(1-q).
    """
    if q is None:
        return left_limit_symbolic(word)
    q = complex(q)
    digits = word.digits
    c = digits[-1]
    v = _q_int_c(c, q) - q ** (c - 1) * (1.0 - q)
    for c in reversed(digits[:-1]):
        v = _q_int_c(c, q) - q ** (c - 1) / v
    if q.imag == 0:
        v = complex(v.real)
    return v


def _q_int_c(n: int, q: complex) -> complex:
    if q == 1.0:
        return complex(n)
    return (1.0 - q**n) / (1.0 - q)


def x_limits(q: complex) -> tuple[complex, float]:
    """(limit of [x]_q as x -> +oo, behavior as x -> -oo).

    The first component is 1/(1-q); the second records that |[x]_q| is
    unbounded below (returned as math.inf).
    """
    q = complex(q)
    if q == 1.0:
        raise DomainError("q = 1 is the classical limit; [x]_q -> x there")
    limit = 1.0 / (1.0 - q)
    return (limit if q.imag else complex(limit.real), math.inf)


# -- negative-axis envelope ------------------------------------------------------


def negative_axis_a(r: float) -> float:
    """Root a > 1 of a + 1/a = 1/r - 1 + r, for 0 < r < R*.

    Controls the convergence rate of the reciprocal expansion at q = -r;
    a -> 1 as r -> R*.
    """
    if not (0.0 < r < R_STAR):
        raise OutsideInterval(f"need 0 < r < R*, got {r}")
    g = 1.0 / r - 1.0 + r
    return (g + math.sqrt(g * g - 4.0)) / 2.0


def golden_envelope(r: float) -> tuple[float, float]:
    """(sup over [1,2), inf over [2,3)) of x -> [x]_q at q = -r.

    The supremum is attained at the golden ratio and the infimum at 1+phi:

        sup = [phi]_{-r}  = 1 - r + 1/a,
        inf = [1+phi]_{-r} = r * a,

    with a = negative_axis_a(r).  (Equivalently the conjugate-root form
    1 + a' - r and r/a' with a' = 1/a < 1; the branch is fixed by direct
    series evaluation, see the jump tests.)
    """
    a = negative_axis_a(r)
    return (1.0 - r + 1.0 / a, r * a)


def in_drop_region(q: complex) -> bool:
    """Membership in the drop-shaped zero-free region:
    |q + 1 + sqrt(1 - q + q^2)| >= 3 sqrt(|q|), inside the unit disk.
    """
    q = complex(q)
    if abs(q) >= 1.0:
        return False
    if q == 0:
        return True
    return abs(q + 1.0 + cmath.sqrt(1.0 - q + q * q)) >= 3.0 * math.sqrt(abs(q))


# -- dispatch used by the CLI -------------------------------------------------------


def evaluate(src: DigitSource, q: complex, tol: float = 1e-10) -> CertifiedComplex:
    """Evaluate [x]_q in the best-supported region for q (certified first)."""
    q = complex(q)
    if q.imag == 0 and -R_STAR < q.real < 0 and not in_region_D(q):
        return eval_negative_q(src, q.real, tol)
    if abs(q) <= 1 and in_region_D(q):
        return eval_in_D(src, q, tol)
    if abs(q) < DISK_ANNULUS:
        return eval_in_disk(src, q, tol)
    if q.imag == 0 and -R_STAR < q.real < 0:
        return eval_negative_q(src, q.real, tol)
    raise OutsideRegion(f"q = {q} is outside every supported evaluation region")


def eval_rational_exact(x, q: complex):
    """Exact-formula evaluation of [x]_q for rational x (oracle for tests)."""
    return q_rational_any(Fraction(x))(q)
