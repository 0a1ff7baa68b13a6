"""Continued-fraction words, q-continuants, and the modular identities."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qreal.cf import (
    CFStream,
    CFWord,
    cf_decode,
    cf_encode_rational,
    cf_encode_real,
    continuant,
    golden_stream,
    infinity_continuant,
    left_limit_any,
    left_limit_symbolic,
    negate_reciprocal,
    parameter_inverse,
    q_continuants,
    q_rational,
    q_rational_any,
    translate,
)
from qreal.errors import DomainError, PrecisionExhausted
from qreal.poly import IntPoly, RatFuncQ

words = st.lists(st.integers(2, 6), min_size=1, max_size=6).map(CFWord)


def test_encode_examples():
    assert cf_encode_rational(Fraction(7, 5)).digits == (2, 2, 3)
    assert cf_encode_rational(2).digits == (2,)
    assert cf_encode_rational(Fraction(5, 2)).digits == (3, 2)
    assert cf_encode_rational(1).digits == (1,)
    with pytest.raises(DomainError):
        cf_encode_rational(Fraction(1, 2))


def test_decode_examples():
    assert cf_decode(CFWord([3, 2])) == Fraction(5, 2)
    assert cf_decode(CFWord([7])) == 7
    for k in range(1, 8):
        assert cf_decode(CFWord([2] * k)) == Fraction(k + 1, k)


@given(st.fractions(min_value=1, max_value=60, max_denominator=400))
@settings(max_examples=80, deadline=None)
def test_encode_decode_roundtrip(x):
    assert cf_decode(cf_encode_rational(x)) == x


def test_encode_real_golden():
    assert cf_encode_real("1.6180339887", 5).digits == (2, 3, 3, 3, 3)


def test_encode_real_interval_straddles_integer():
    with pytest.raises(PrecisionExhausted):
        cf_encode_real("2.0", 1)


def test_encode_real_cotangent_convergent():
    # decode([2,6,10,14]) = 1.8304877... brackets the supplied prefix of cotan(1/2)
    assert cf_encode_real("1.8304877", 3).digits == (2, 6, 10)


def test_q_continuants_examples():
    a2, _ = q_continuants(CFWord([3, 4]))
    # a_2 = [c1][c2] - q^(c1-1)
    assert a2 == IntPoly.q_integer(3) * IntPoly.q_integer(4) - IntPoly.monomial(2)
    a1, b1 = q_continuants(CFWord([5]))
    assert a1 == IntPoly.q_integer(5) and b1 == IntPoly.one()
    a3, b3 = q_continuants(CFWord([2, 2, 3]))
    assert a3(1) == 7 and b3(1) == 5


def test_q_rational_examples():
    f = q_rational(CFWord([3, 2]))
    assert f == RatFuncQ(IntPoly((1, 2, 1, 1)), IntPoly((1, 1)))
    n = q_rational(CFWord([6]))
    assert n == RatFuncQ.from_poly(IntPoly.q_integer(6))
    w = cf_encode_rational(Fraction(7, 5))
    assert q_rational(w).at_q1() == Fraction(7, 5)


@given(words)
@settings(max_examples=200, deadline=None)
def test_determinant_and_tail_identities(word):
    # a_N b_{N+1} - a_{N+1} b_N = q^(C_N); b_N(c_1..c_N) = a_{N-1}(c_2..c_N)
    ext = CFWord(word.digits + (3,))
    a_n, b_n = q_continuants(word)
    a_n1, b_n1 = q_continuants(ext)
    assert a_n * b_n1 - a_n1 * b_n == IntPoly.monomial(word.weight())
    assert b_n == continuant(word.digits[1:])
    assert all(c >= 0 for c in a_n.coeffs) and all(c >= 0 for c in b_n.coeffs)
    assert a_n[0] == 1 and b_n[0] == 1
    assert a_n.degree() == word.weight()
    # q = 1 specialization equals the classical decode
    assert Fraction(a_n(1), b_n(1)) == cf_decode(word)


def test_translate_examples():
    one = RatFuncQ.from_poly(IntPoly.one())
    assert translate(one, -1).is_zero()
    zero = RatFuncQ.from_poly(IntPoly.zero())
    assert translate(zero, -2) == RatFuncQ(IntPoly((-1, -1)), IntPoly.monomial(2))
    f = q_rational(CFWord([2, 4]))
    assert translate(translate(f, 1), -1) == f
    assert translate(translate(f, -7), 7) == f


def test_translate_laurent_matches_ratfunc():
    f = q_rational(CFWord([2, 3]))
    ser = f.laurent(12)
    assert translate(ser, 3) == translate(f, 3).laurent(15)
    assert translate(ser, -2) == translate(f, -2).laurent(10)


def test_negate_reciprocal_examples():
    two = RatFuncQ.q_integer(2)
    m2 = negate_reciprocal(two)
    assert m2 == RatFuncQ(IntPoly((-1, -1)), IntPoly.monomial(2))
    # x = 1: [-1]_q = -1/q, consistent with translate(0, -1)
    one = RatFuncQ.from_poly(IntPoly.one())
    assert negate_reciprocal(one) == translate(RatFuncQ.from_poly(IntPoly.zero()), -1)
    # [1/2]_q = q/(1+q) via the lemma route
    half = q_rational_any(Fraction(1, 2))
    assert half == RatFuncQ(IntPoly((0, 1)), IntPoly((1, 1)))
    assert half * m2 == RatFuncQ(IntPoly((-1,)), IntPoly.monomial(1))


@given(st.fractions(min_value=Fraction(1, 40), max_value=40, max_denominator=60))
@settings(max_examples=60, deadline=None)
def test_modular_inversion_identity(x):
    # [1/x]_q [-x]_q = -1/q exactly, with both factors from the translate
    # route; the second line covers negative arguments (x -> -x)
    minus_q_inv = RatFuncQ(IntPoly((-1,)), IntPoly.monomial(1))
    assert q_rational_any(1 / x) * q_rational_any(-x) == minus_q_inv
    assert q_rational_any(-1 / x) * q_rational_any(x) == minus_q_inv


@given(st.fractions(min_value=Fraction(1, 30), max_value=30, max_denominator=50))
@settings(max_examples=60, deadline=None)
def test_parameter_inverse_identity(x):
    f = q_rational_any(x)
    lhs = parameter_inverse(f)
    rhs = -(negate_reciprocal(f).shift_q_power(1))
    assert lhs == rhs


def test_parameter_inverse_zero():
    assert parameter_inverse(RatFuncQ.from_poly(IntPoly.zero())).is_zero()
    p2 = parameter_inverse(RatFuncQ.q_integer(2))
    assert p2 == RatFuncQ(IntPoly((1, 1)), IntPoly.monomial(1))  # 1 + 1/q


def test_infinity_continuant():
    # word [m]: A_1 = 1 + ... + q^(m-2) + q^m
    for m in (2, 3, 6):
        expect = IntPoly.q_integer(m - 1) + IntPoly.monomial(m)
        assert infinity_continuant(CFWord([m])) == expect
    for word in (CFWord([2, 2, 3]), CFWord([4, 2]), CFWord([3, 3, 3])):
        a = infinity_continuant(word)
        assert a[0] == 1 and a.leading() == 1 and a.degree() == 1 + word.weight()
        # A_N = (1-q) a_{N+1}(word, n->oo): check against a large-n proxy exactly
        a_big, _ = q_continuants(CFWord(word.digits + (50,)))
        # a_{N+1}(word, n) = [n]_q a_N - q^(c_N-1) a_{N-1}; multiply by (1-q):
        # (1-q)[n]_q = 1 - q^n -> truncating below degree 50 drops the q^n part
        lhs = (IntPoly((1, -1)) * a_big).truncated(45)
        assert lhs == a.truncated(45)


def test_left_limit_symbolic():
    for m in (2, 5):
        lim = left_limit_symbolic(CFWord([m]))
        expect = RatFuncQ.from_poly(
            IntPoly.q_integer(m) - (IntPoly((1, -1))).shift(m - 1)
        )
        assert lim == expect
    assert left_limit_any(1) == RatFuncQ.from_poly(IntPoly.monomial(1))
    assert left_limit_any(0) == RatFuncQ(IntPoly((-1, 1)), IntPoly.monomial(1))  # 1 - 1/q


def test_monotone_in_x_at_fixed_q():
    rng = random.Random(11)
    qs = [Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(4, 5)]
    for _ in range(40):
        x = Fraction(rng.randint(1, 400), rng.randint(1, 40))
        y = x + Fraction(rng.randint(1, 50), rng.randint(1, 50))
        fx, fy = q_rational_any(x), q_rational_any(y)
        for q in qs:
            assert fx(q) < fy(q)


def test_classical_limit_along_q_to_1():
    rng = random.Random(5)
    for _ in range(20):
        x = Fraction(rng.randint(2, 300), rng.randint(1, 30))
        f = q_rational_any(x)
        diffs = [abs(float(f(1 - Fraction(1, 2**k))) - float(x)) for k in (5, 10, 20)]
        assert diffs[2] < diffs[1] < diffs[0]
        assert diffs[2] < diffs[1] / 500


def test_stream_prefix_and_guards():
    phi = golden_stream()
    assert phi.prefix(5) == (2, 3, 3, 3, 3)
    assert phi.prefix_word(3).digits == (2, 3, 3)
    arith = CFStream.arithmetic(2, 1)
    assert arith.prefix(4) == (2, 3, 4, 5)
    cot = CFStream.arithmetic(1, 2)  # degenerate first digit is tolerated
    assert cot.prefix(3) == (1, 3, 5)
    bad = CFStream(lambda i: 1)
    with pytest.raises(DomainError):
        bad.digit(2)
    per = CFStream.periodic([2, 3], [4, 5])
    assert per.prefix(6) == (2, 3, 4, 5, 4, 5)


def test_word_validation():
    with pytest.raises(DomainError):
        CFWord([])
    with pytest.raises(DomainError):
        CFWord([2, 1])
    with pytest.raises(DomainError):
        CFWord([0])
    assert CFWord([1]).digits == (1,)


def test_stream_concurrent_prefix_extension():
    # the prefix cache may be extended from several threads at once
    import threading

    calls = []

    def gen(i):
        calls.append(i)
        return 2 + (i % 3)

    stream = CFStream(gen)
    results = [None] * 8
    threads = [
        threading.Thread(target=lambda k=k: results.__setitem__(k, stream.prefix(200)))
        for k in range(8)
    ]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    expect = tuple(2 + (i % 3) for i in range(1, 201))
    assert all(r == expect for r in results)
    # the generator ran each index exactly once (cache extended under the lock)
    assert sorted(calls) == list(range(1, 201))
