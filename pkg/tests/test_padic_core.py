from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicl.errors import PrecisionError, SupportError, UnitRequired
from padicl.padic_core import (
    PAdicInt,
    ValuedPAdic,
    Lu,
    angle,
    binomial_row,
    default_u,
    is_prime,
    plog,
    pow1q,
    q_of,
    teichmuller,
    vp,
    vp_factorial,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 11])


def test_q_and_valuations():
    assert q_of(2) == 4 and q_of(7) == 7
    assert vp(250, 5) == 3
    assert vp(Fraction(3, 25), 5) == -2
    assert vp_factorial(200, 5) == 49
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_digits_roundtrip():
    x = PAdicInt.from_digits([2, 4, 4, 4], 5, 4)
    assert x == -3
    assert x.digits() == [2, 4, 4, 4]
    with pytest.raises(ValueError):
        PAdicInt.from_digits([5], 5, 2)


def test_fraction_and_mixing():
    assert PAdicInt(Fraction(1, 2), 5, 3) * 2 == 1
    with pytest.raises(PrecisionError):
        PAdicInt(Fraction(1, 5), 5, 3)
    with pytest.raises(PrecisionError):
        PAdicInt(1, 5, 3) + PAdicInt(1, 5, 4)
    with pytest.raises(UnitRequired):
        PAdicInt(10, 5, 3).inverse()


def test_valued_padic():
    v = ValuedPAdic.from_rational(Fraction(-31, 30), 5, 6)
    assert v.valuation == -1
    assert ValuedPAdic.from_rational(Fraction(50, 3), 5, 6).to_padic() * 3 == 50
    with pytest.raises(PrecisionError):
        v.to_padic()


def test_teichmuller_fixed_values():
    # omega(2) mod 5^3 is the 4th root of unity congruent to 2
    w = teichmuller(PAdicInt(2, 5, 3))
    assert w.residue == 57 and w**4 == 1
    assert teichmuller(PAdicInt(7, 2, 6)).residue == 63
    assert angle(PAdicInt(7, 2, 6)) == -7


@settings(max_examples=60, deadline=None)
@given(p=PRIMES, x=st.integers(1, 10**9), M=st.integers(2, 12))
def test_teichmuller_properties(p, x, M):
    if x % p == 0:
        x += 1
    w = teichmuller(PAdicInt(x, p, M))
    q = q_of(p)
    assert (w.residue - x) % q == 0
    assert w ** (q - q // p if p != 2 else 2) == 1
    assert angle(PAdicInt(x, p, M)).residue % q == 1 % q


@settings(max_examples=60, deadline=None)
@given(p=PRIMES, a=st.integers(0, 10**6), b=st.integers(0, 10**6), M=st.integers(3, 10))
def test_log_is_additive(p, a, b, M):
    q = q_of(p)
    x = PAdicInt(1 + q * a, p, M)
    y = PAdicInt(1 + q * b, p, M)
    assert plog(x * y) == plog(x) + plog(y)


@settings(max_examples=60, deadline=None)
@given(p=PRIMES, a=st.integers(0, 10**6), s=st.integers(-50, 50), t=st.integers(-50, 50), M=st.integers(2, 10))
def test_pow1q_exponent_laws(p, a, s, t, M):
    x = PAdicInt(1 + q_of(p) * a, p, M)
    assert pow1q(x, s) * pow1q(x, t) == pow1q(x, s + t)
    if s >= 0:
        assert pow1q(x, s) == x**s


def test_pow1q_support():
    with pytest.raises(SupportError):
        pow1q(PAdicInt(2, 5, 4), 3)


@settings(max_examples=40, deadline=None)
@given(s=st.integers(-40, 40), p=PRIMES, M=st.integers(1, 8))
def test_binomial_row_integer_s(s, p, M):
    from math import comb

    row = binomial_row(s, 12, p, M)
    for n, v in enumerate(row):
        expect = comb(s, n) if s >= 0 else (-1) ** n * comb(n - s - 1, n)
        assert v == expect % p**M


def test_binomial_row_padic_limit():
    # C(s, n) for s = -1 mod 5^6 agrees with (-1)^n at precision 5^3
    row = binomial_row(5**6 - 1, 30, 5, 3)
    assert row == [(-1) ** n % 125 for n in range(30)]


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from([3, 5, 7]), a=st.integers(1, 10**5), b=st.integers(1, 10**5))
def test_Lu_is_a_homomorphism(p, a, b):
    M = 8
    x, y = 1 + p * a, 1 + p * b
    lx = Lu(PAdicInt(x, p, M + 1))
    ly = Lu(PAdicInt(y, p, M + 1))
    assert Lu(PAdicInt(x * y, p, M + 1)) == lx + ly


def test_Lu_of_u_is_one():
    for p, e in [(3, 1), (5, 1), (2, 2), (2, 3)]:
        u = default_u(p, e)
        assert Lu(PAdicInt(u, p, 10), None, e).residue == 1
    with pytest.raises(PrecisionError):
        Lu(PAdicInt(6, 5, 1))
