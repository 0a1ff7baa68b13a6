"""Exact arithmetic in the deformation variable q.

Three representations are used throughout the library:

* IntPoly      -- dense integer-coefficient polynomial, lowest degree first.
                  The polynomial a_0 + a_1 q + ... + a_n q^n is stored as
                  (a_0, a_1, ..., a_n) with a_n != 0 (empty tuple for 0).
* RatFuncQ     -- quotient of two IntPoly, kept fully reduced (polynomial
                  gcd removed, integer content 1, denominator's lowest
                  nonzero coefficient positive).  Negative powers of q are
                  carried by q-power factors inside the denominator.
* IntLaurent   -- truncated Laurent series with integer coefficients: the
                  stored window is [offset, order) and every stored
                  coefficient is exact; nothing is claimed at q^order and
                  beyond.

Only integer arithmetic is performed, so all equalities checked on these
objects are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero, InsufficientData


def _strip(coeffs):
    """Drop trailing zeros of a coefficient list."""
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable dense polynomial over the integers."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        self._c = _strip(list(coeffs))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero():
        return IntPoly(())

    @staticmethod
    def one():
        return IntPoly((1,))

    @staticmethod
    def monomial(k, c=1):
        """c * q^k."""
        if c == 0:
            return IntPoly(())
        return IntPoly((0,) * k + (c,))

    @staticmethod
    def q_integer(n):
        """[n]_q = 1 + q + ... + q^(n-1) for n >= 0."""
        if n < 0:
            raise ValueError("q_integer defined here for n >= 0 only")
        return IntPoly((1,) * n)

    # -- basic queries ---------------------------------------------------------

    @property
    def coeffs(self):
        return self._c

    def is_zero(self):
        return not self._c

    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self._c) - 1

    def valuation(self):
        """Index of the lowest nonzero coefficient (0 for the zero poly)."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return 0

    def __getitem__(self, k):
        if 0 <= k < len(self._c):
            return self._c[k]
        return 0

    def leading(self):
        return self._c[-1] if self._c else 0

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"IntPoly({list(self._c)})"

    # -- ring operations -------------------------------------------------------

    def __neg__(self):
        return IntPoly(tuple(-c for c in self._c))

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return IntPoly((other,)) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(c * other for c in self._c))
        a, b = self._c, other._c
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q^k (k >= 0)."""
        if not self._c:
            return self
        return IntPoly((0,) * k + self._c)

    def reverse(self):
        """q^deg * p(1/q); the coefficient list reversed."""
        return IntPoly(tuple(reversed(self._c)))

    # -- evaluation -------------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact when x is int or Fraction."""
        acc = 0 if not isinstance(x, complex) else 0j
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- integer-content helpers -------------------------------------------------

    def content(self):
        g = 0
        for c in self._c:
            g = math.gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def primitive(self):
        g = self.content()
        if g in (0, 1):
            return self
        return IntPoly(tuple(c // g for c in self._c))

    def divexact(self, other):
        """Exact polynomial division; raises if the division is not exact."""
        if other.is_zero():
            raise DivisionByZero("division by zero polynomial")
        if self.is_zero():
            return self
        rem = list(self._c)
        db = other.degree()
        lb = other.leading()
        out = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            qc, r = divmod(c, lb)
            if r:
                raise ValueError("inexact polynomial division")
            out[i - db] = qc
            for j, bc in enumerate(other._c):
                rem[i - db + j] -= qc * bc
        if any(rem[:db]):
            raise ValueError("inexact polynomial division")
        return IntPoly(out)

    # -- truncated power-series helpers -------------------------------------------

    def series_inverse(self, order):
        """Inverse as a power series mod q^order; lowest coefficient must be +-1."""
        if self.is_zero() or self._c[0] not in (1, -1):
            raise DivisionByZero("series inverse needs constant term +-1")
        f0 = self._c[0]
        inv = [f0] + [0] * (order - 1)
        for n in range(1, order):
            s = 0
            top = min(n, len(self._c) - 1)
            for k in range(1, top + 1):
                s += self._c[k] * inv[n - k]
            inv[n] = -f0 * s
        return IntPoly(inv)

    def truncated(self, order):
        return IntPoly(self._c[:order])

    # -- serialization --------------------------------------------------------------

    def to_json(self):
        """Coefficients as decimal strings, lowest degree first."""
        return [str(c) for c in self._c]

    @staticmethod
    def from_json(data):
        return IntPoly(tuple(int(c) for c in data))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor in Z[q] via the subresultant PRS.

    Result is primitive up to the gcd of the integer contents, and has a
    positive leading coefficient.
    """
    if a.is_zero() and b.is_zero():
        return IntPoly(())
    if a.is_zero():
        g = b.primitive()
    elif b.is_zero():
        g = a.primitive()
    else:
        cont = math.gcd(a.content(), b.content())
        g = _prim_gcd(a.primitive(), b.primitive())
        g = g * cont
    if g.leading() < 0:
        g = -g
    return g


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """lc(b)^(deg a - deg b + 1) * a reduced mod b; all divisions exact."""
    d = a.degree() - b.degree() + 1
    lb = b.leading()
    rem = list(a.coeffs)
    out_deg = b.degree()
    steps = 0
    while len(rem) - 1 >= out_deg and any(rem):
        rem_deg = len(rem) - 1
        while rem_deg >= 0 and rem[rem_deg] == 0:
            rem_deg -= 1
        if rem_deg < out_deg:
            break
        c = rem[rem_deg]
        rem = [x * lb for x in rem]
        for j, bc in enumerate(b.coeffs):
            rem[rem_deg - out_deg + j] -= c * bc
        del rem[rem_deg:]
        steps += 1
    scale = lb ** (d - steps)
    return IntPoly([x * scale for x in rem])


def _prim_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.degree() < b.degree():
        a, b = b, a
    g, h = 1, 1
    while True:
        delta = a.degree() - b.degree()
        r = _pseudo_rem(a, b)
        if r.is_zero():
            return b.primitive()
        if b.degree() == 0 or r.degree() == 0:
            return IntPoly.one()
        a, b = b, IntPoly([c // (g * h**delta) for c in r.coeffs])
        g = a.leading()
        h = g**delta // h ** (delta - 1) if delta > 0 else h


class RatFuncQ:
    """Reduced ratio of two integer polynomials in q."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly, reduce: bool = True):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            den = IntPoly.one()
        elif reduce:
            v = min(num.valuation(), den.valuation())
            if v:
                num = IntPoly(num.coeffs[v:])
                den = IntPoly(den.coeffs[v:])
            g = poly_gcd(num, den)
            if g.degree() > 0 or g.leading() > 1:
                num = num.divexact(g)
                den = den.divexact(g)
        if den.coeffs and den.coeffs[den.valuation()] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def from_poly(p: IntPoly):
        return RatFuncQ(p, IntPoly.one(), reduce=False)

    @staticmethod
    def q_integer(n: int):
        """[n]_q for any integer n, as a rational function of q."""
        if n >= 0:
            return RatFuncQ.from_poly(IntPoly.q_integer(n))
        m = -n
        return RatFuncQ(-IntPoly.q_integer(m), IntPoly.monomial(m), reduce=False)

    # -- queries ------------------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFuncQ.from_poly(IntPoly((other,)))
        elif isinstance(other, IntPoly):
            other = RatFuncQ.from_poly(other)
        if not isinstance(other, RatFuncQ):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFuncQ({list(self.num.coeffs)}, {list(self.den.coeffs)})"

    # -- field operations ------------------------------------------------------------

    def __neg__(self):
        return RatFuncQ(-self.num, self.den, reduce=False)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFuncQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFuncQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFuncQ(self.den, self.num, reduce=False)

    def shift_q_power(self, k: int):
        """Multiply by q^k for any integer k."""
        if k >= 0:
            return RatFuncQ(self.num.shift(k), self.den)
        return RatFuncQ(self.num, self.den.shift(-k))

    def substitute_q_inverse(self):
        """The rational function f(1/q), with powers cleared."""
        dn, dd = self.num.degree(), self.den.degree()
        num, den = self.num.reverse(), self.den.reverse()
        if dd >= dn:
            num = num.shift(dd - dn)
        else:
            den = den.shift(dn - dd)
        return RatFuncQ(num, den)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFuncQ):
            return x
        if isinstance(x, IntPoly):
            return RatFuncQ.from_poly(x)
        if isinstance(x, int):
            return RatFuncQ.from_poly(IntPoly((x,)))
        raise TypeError(f"cannot coerce {type(x)!r} to RatFuncQ")

    # -- evaluation ---------------------------------------------------------------------

    def __call__(self, x):
        den = self.den(x)
        if den == 0:
            raise DivisionByZero("denominator vanishes at evaluation point")
        num = self.num(x)
        if isinstance(num, int) and isinstance(den, int):
            return Fraction(num, den)
        return num / den

    def at_q1(self) -> Fraction:
        """Exact value at q = 1."""
        return Fraction(self.num(1), self.den(1))

    # -- series expansion ----------------------------------------------------------------

    def laurent(self, order: int) -> "IntLaurent":
        """Expand as an integer Laurent series mod q^order."""
        vd = self.den.valuation()
        vn = self.num.valuation() if not self.num.is_zero() else 0
        if self.num.is_zero():
            return IntLaurent.zero(order)
        den_unit = IntPoly(self.den.coeffs[vd:])
        num_shift = IntPoly(self.num.coeffs[vn:])
        offset = vn - vd
        rel = order - offset
        if rel <= 0:
            return IntLaurent.zero(order)
        inv = den_unit.series_inverse(rel)
        prod = (num_shift * inv).truncated(rel)
        return IntLaurent(offset, prod.coeffs, order)

    # -- serialization ----------------------------------------------------------------------

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data):
        return RatFuncQ(IntPoly.from_json(data["num"]), IntPoly.from_json(data["den"]))


class IntLaurent:
    """Integer Laurent series known exactly on the window [offset, order).

    Arithmetic tracks how far the result is still exact, so a truncated
    series can never silently pretend to more precision than its inputs.
    """

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, offset: int, coeffs, order: int):
        coeffs = list(coeffs)
        if offset + len(coeffs) > order:
            coeffs = coeffs[: order - offset]
        # normalize: leading stored coefficient nonzero
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            offset += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            offset = order
        self.offset = offset
        self.coeffs = tuple(coeffs)
        self.order = order

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(order):
        return IntLaurent(order, (), order)

    @staticmethod
    def from_poly(p: IntPoly, order: int):
        return IntLaurent(0, p.coeffs, order)

    # -- queries -----------------------------------------------------------------

    def valuation(self):
        """Exponent of the first nonzero known coefficient (order if none)."""
        return self.offset

    def is_zero(self):
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def coefficient(self, n: int) -> int:
        if n >= self.order:
            raise InsufficientData(f"coefficient of q^{n} not exact (order {self.order})")
        if n < self.offset or n >= self.offset + len(self.coeffs):
            return 0
        return self.coeffs[n - self.offset]

    def coefficients(self, lo: int, hi: int):
        """Known coefficients for exponents lo..hi-1."""
        return [self.coefficient(n) for n in range(lo, hi)]

    def __eq__(self, other):
        """Exact agreement on the common window of known coefficients."""
        if not isinstance(other, IntLaurent):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset, order)
        return self.coefficients(lo, order) == other.coefficients(lo, order)

    def __repr__(self):
        return f"IntLaurent(offset={self.offset}, coeffs={list(self.coeffs)}, order={self.order})"

    # -- arithmetic ------------------------------------------------------------------

    def __neg__(self):
        return IntLaurent(self.offset, tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntLaurent(0, (other,), self.order)
        order = min(self.order, other.order)
        if self.is_zero():
            return IntLaurent(other.offset, other.coeffs, order)
        if other.is_zero():
            return IntLaurent(self.offset, self.coeffs, order)
        lo = min(self.offset, other.offset)
        out = [0] * (order - lo)
        for i, c in enumerate(self.coeffs):
            k = self.offset + i - lo
            if k < len(out):
                out[k] += c
        for i, c in enumerate(other.coeffs):
            k = other.offset + i - lo
            if k < len(out):
                out[k] += c
        return IntLaurent(lo, out, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntLaurent(0, (other,), self.order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntLaurent(self.offset, tuple(other * c for c in self.coeffs), self.order)
        if self.is_zero() or other.is_zero():
            return IntLaurent.zero(min(self.order + other.valuation(), other.order + self.valuation()))
        order = min(self.order + other.offset, other.order + self.offset)
        lo = self.offset + other.offset
        out = [0] * (order - lo)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    k = i + j
                    if k < len(out):
                        out[k] += a * b
        return IntLaurent(lo, out, order)

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by q^k."""
        return IntLaurent(self.offset + k, self.coeffs, self.order + k)

    def inverse(self):
        """Series inverse; first known coefficient must be +-1."""
        if self.is_zero():
            raise DivisionByZero("inverse of (known-)zero Laurent series")
        rel = self.order - self.offset
        inv = IntPoly(self.coeffs).series_inverse(rel)
        return IntLaurent(-self.offset, inv.coeffs, rel - self.offset)

    def truncated(self, order):
        return IntLaurent(self.offset, self.coeffs, min(order, self.order))

    # -- export ----------------------------------------------------------------------

    def csv_rows(self):
        """Rows (n, beta_n) for every known exponent, as decimal strings."""
        lo = min(self.offset, 0)
        return [(str(n), str(self.coefficient(n))) for n in range(lo, self.order)]

    def __call__(self, x):
        """Evaluate the known window at x (no tail estimate)."""
        acc = 0 if not isinstance(x, complex) else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x**self.offset if self.coeffs else 0 * x
