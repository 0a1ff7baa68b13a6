"""Negative continued fractions and their q-deformations.

A real x >= 1 is encoded by digits c_1, c_2, ... with every c_i >= 2
(the sole-digit word [n], n >= 1, covers integers): x = c_1 - 1/(c_2 - ...).
The q-deformation replaces level i by [c_i]_q with weight q^(c_i - 1),
turning the convergents x_N = a_N / b_N into ratios of integer polynomials
a_N(q), b_N(q) produced by the three-term recursion

    u_N = [c_N]_q u_{N-1} - q^(c_{N-1}-1) u_{N-2}.

Values below 1 are never stored as words; they are reached through the
translation rule [x+n]_q = q^n [x]_q + [n]_q and the negation/reciprocal
identity [1/x]_q [-x]_q = -1/q.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DivisionByZero, DomainError, PrecisionExhausted
from .poly import IntLaurent, IntPoly, RatFuncQ


class CFWord:
    """Finite digit word of a negative continued fraction (a rational)."""

    __slots__ = ("digits",)

    def __init__(self, digits: Sequence[int]):
        digits = tuple(int(c) for c in digits)
        if not digits:
            raise DomainError("empty word")
        if len(digits) == 1:
            if digits[0] < 1:
                raise DomainError("sole digit must be >= 1")
        elif any(c < 2 for c in digits):
            raise DomainError("digits must all be >= 2")
        self.digits = digits

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __eq__(self, other):
        return isinstance(other, CFWord) and self.digits == other.digits

    def __hash__(self):
        return hash(self.digits)

    def __repr__(self):
        return f"CFWord({list(self.digits)})"

    def weight(self) -> int:
        """C_N = sum of (c_i - 1); the degree of the continuant a_N."""
        return sum(c - 1 for c in self.digits)


class CFStream:
    """Lazy digit source c_1, c_2, ... for an irrational (or unknown) x.

    The generator must be total on positive indices with values >= 2;
    a first digit of 1 is tolerated for degenerate sources such as the
    cotangent stream (1, 3, 5, ...).  Extension of the prefix cache is
    guarded by a lock, so concurrent readers are safe.
    """

    __slots__ = ("_gen", "_cache", "_lock")

    def __init__(self, gen: Callable[[int], int]):
        self._gen = gen
        self._cache: list[int] = []
        self._lock = threading.Lock()

    @staticmethod
    def from_iterable(it: Iterable[int]):
        items = []
        iterator = iter(it)

        def gen(i):
            while len(items) < i:
                items.append(next(iterator))
            return items[i - 1]

        return CFStream(gen)

    @staticmethod
    def periodic(head: Sequence[int], tail: Sequence[int]):
        head = tuple(head)
        tail = tuple(tail)

        def gen(i):
            if i <= len(head):
                return head[i - 1]
            return tail[(i - len(head) - 1) % len(tail)]

        return CFStream(gen)

    @staticmethod
    def arithmetic(start: int, step: int):
        """Digits start, start+step, start+2*step, ..."""
        return CFStream(lambda i: start + (i - 1) * step)

    def digit(self, i: int) -> int:
        """c_i (1-based)."""
        if i < 1:
            raise DomainError("digit index must be >= 1")
        if i > len(self._cache):
            with self._lock:
                while len(self._cache) < i:
                    n = len(self._cache) + 1
                    c = int(self._gen(n))
                    if c < 2 and not (n == 1 and c == 1):
                        raise DomainError(f"stream digit c_{n} = {c} out of range")
                    self._cache.append(c)
        return self._cache[i - 1]

    def prefix(self, n: int) -> tuple[int, ...]:
        self.digit(n)
        return tuple(self._cache[:n])

    def prefix_word(self, n: int) -> CFWord:
        return CFWord(self.prefix(n))


def golden_stream() -> CFStream:
    """Digits (2, 3, 3, 3, ...) of the golden ratio."""
    return CFStream(lambda i: 2 if i == 1 else 3)


DigitSource = CFWord | CFStream


def cf_encode_rational(x) -> CFWord:
    """Greedy negative-continued-fraction digits of a rational x >= 1."""
    x = Fraction(x)
    if x < 1:
        raise DomainError(f"cf_encode_rational needs x >= 1, got {x}")
    if x.denominator == 1:
        return CFWord((x.numerator,))
    digits = []
    while True:
        c = -((-x.numerator) // x.denominator)  # ceil
        digits.append(c)
        rest = c - x
        if rest == 0:
            break
        x = 1 / rest
        if x.denominator == 1:
            digits.append(x.numerator)
            break
    return CFWord(digits)


def cf_decode(word: CFWord) -> Fraction:
    """Exact rational value of a finite word via the classical recursion."""
    a_prev, a_cur = 1, word[0]
    b_prev, b_cur = 0, 1
    for c in word.digits[1:]:
        a_prev, a_cur = a_cur, c * a_cur - a_prev
        b_prev, b_cur = b_cur, c * b_cur - b_prev
    return Fraction(a_cur, b_cur)


def cf_encode_real(x: str, n_digits: int) -> CFWord:
    """First n_digits word digits of x given as a decimal string.

    The string is read as the exact interval [x, x + 10^-P] where P is the
    number of supplied decimal places; every digit is certified by interval
    arithmetic (the ceilings of both endpoints must agree), so the result
    is exact or PrecisionExhausted is raised.
    """
    s = x.strip()
    frac_digits = len(s.split(".")[1]) if "." in s else 0
    lo = Fraction(s)
    hi = lo + Fraction(1, 10**frac_digits)
    if lo < 1:
        raise DomainError(f"cf_encode_real needs x >= 1, got {s}")
    digits = []
    for _ in range(n_digits):
        c_lo = -((-lo.numerator) // lo.denominator)
        c_hi = -((-hi.numerator) // hi.denominator)
        if c_lo != c_hi or hi == c_hi:
            raise PrecisionExhausted(
                f"interval [{float(lo):.17g}, {float(hi):.17g}] cannot certify digit {len(digits) + 1}"
            )
        digits.append(c_lo)
        lo, hi = 1 / (c_lo - lo), 1 / (c_hi - hi)
    return CFWord(digits)


def _digits_of(src: DigitSource, n: int) -> tuple[int, ...]:
    if isinstance(src, CFWord):
        if n > len(src):
            raise DomainError(f"word has {len(src)} digits, {n} requested")
        return src.digits[:n]
    return src.prefix(n)


def q_continuants(src: DigitSource, n: int | None = None) -> tuple[IntPoly, IntPoly]:
    """(a_N, b_N) for the first N digits of src (all digits of a word by default)."""
    if n is None:
        if not isinstance(src, CFWord):
            raise DomainError("stream input requires an explicit prefix length")
        n = len(src)
    digits = _digits_of(src, n)
    return _continuants_from_digits(digits)


def _continuants_from_digits(digits: Sequence[int]) -> tuple[IntPoly, IntPoly]:
    a_prev, a_cur = IntPoly.one(), IntPoly.q_integer(digits[0])
    b_prev, b_cur = IntPoly.zero(), IntPoly.one()
    for i in range(1, len(digits)):
        qn = IntPoly.q_integer(digits[i])
        w = digits[i - 1] - 1
        a_prev, a_cur = a_cur, qn * a_cur - a_prev.shift(w)
        b_prev, b_cur = b_cur, qn * b_cur - b_prev.shift(w)
    return a_cur, b_cur


def continuant(digits: Sequence[int]) -> IntPoly:
    """The q-continuant a_N(c_1, ..., c_N | q) of an arbitrary digit list."""
    if not digits:
        return IntPoly.one()
    return _continuants_from_digits(digits)[0]


def q_rational(word: CFWord) -> RatFuncQ:
    """[x]_q = a_N(q)/b_N(q) for the rational encoded by word."""
    a, b = q_continuants(word)
    return RatFuncQ(a, b, reduce=False)


def translate(f, n: int):
    """[x+n]_q = q^n [x]_q + [n]_q, for RatFuncQ or IntLaurent input."""
    if isinstance(f, IntLaurent):
        shifted = f.shift(n)
        return shifted + RatFuncQ.q_integer(n).laurent(shifted.order)
    f = RatFuncQ._coerce(f)
    return f.shift_q_power(n) + RatFuncQ.q_integer(n)


def q_rational_any(x) -> RatFuncQ:
    """[x]_q for an arbitrary rational x, via translation into [1, oo)."""
    x = Fraction(x)
    if x >= 1:
        return q_rational(cf_encode_rational(x))
    n = 1 - math.floor(x)
    return translate(q_rational(cf_encode_rational(x + n)), -n)


def _reciprocal_value(x: Fraction) -> RatFuncQ:
    """[1/x]_q for rational x > 0 by the reduction of the modular-inversion lemma."""
    if x <= 1:
        return q_rational(cf_encode_rational(1 / x))
    g = _reciprocal_value(x - 1)
    # [1/x]_q = [1/y]_q / ([1/y]_q + 1/q), y = x - 1
    return g / (g + RatFuncQ(IntPoly.one(), IntPoly.monomial(1), reduce=False))


def negate_reciprocal(f: RatFuncQ) -> RatFuncQ:
    """[-x]_q from f = [x]_q, via [-x]_q = -q^{-1} / [1/x]_q."""
    if f.is_zero():
        raise DivisionByZero("negate_reciprocal of [0]_q")
    x = f.at_q1()
    if x > 0:
        recip = _reciprocal_value(x)
        return -recip.inverse().shift_q_power(-1)
    return q_rational_any(-x)


def parameter_inverse(f: RatFuncQ) -> RatFuncQ:
    """[x]_{q^{-1}}: substitute q -> 1/q in [x]_q and clear powers."""
    return f.substitute_q_inverse()


def infinity_continuant(word: CFWord) -> IntPoly:
    """A_N(q) = a_N - q^(c_N - 1)(1 - q) a_{N-1} = (1-q) a_{N+1}(c_1..c_N, oo | q).

    Monic of degree 1 + C_N with constant term 1; numerator of the left
    limit [x]_q^- up to the common (1-q) factor.
    """
    digits = word.digits
    if len(digits) == 1:
        a_nm1 = IntPoly.one()
        a_n = IntPoly.q_integer(digits[0])
    else:
        a_nm1 = continuant(digits[:-1])
        a_n = continuant(digits)
    one_minus_q = IntPoly((1, -1))
    w = digits[-1] - 1
    return a_n - (one_minus_q * a_nm1).shift(w)


def left_limit_symbolic(word: CFWord) -> RatFuncQ:
    """[x]_q^- = [[c_1..c_N, oo]]_q as a rational function: A_N / A'_{N-1}."""
    a_top = infinity_continuant(word)
    tail = word.digits[1:]
    if tail:
        a_bot = infinity_continuant(CFWord(tail))
    else:
        a_bot = IntPoly.one()
    return RatFuncQ(a_top, a_bot)


def left_limit_any(x) -> RatFuncQ:
    """[x]_q^- for arbitrary rational x via translation."""
    x = Fraction(x)
    if x >= 1:
        return left_limit_symbolic(cf_encode_rational(x))
    n = 1 - math.floor(x)
    return translate(left_limit_any(x + n), -n)
