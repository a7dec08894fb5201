from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicl.errors import ConfigError
from padicl.number_field import Field, Ideal, degree_one_primes, ideals_of_norm


def test_field_basics():
    E = Field(5)
    assert E.disc == 5 and Field(2).disc == 8
    th = E.theta()
    assert th * th == th + 1
    with pytest.raises(ConfigError):
        Field(12)


@pytest.mark.parametrize(
    "D, eps, eps_plus",
    [(2, (1, 1), (3, 2)), (3, (2, 1), (2, 1)), (5, (0, 1), (1, 1)), (13, (1, 1), (4, 3))],
)
def test_units(D, eps, eps_plus):
    E = Field(D)
    assert E.fundamental_unit == E.elem(*eps)
    assert E.eps_plus == E.elem(*eps_plus)
    assert abs(E.fundamental_unit.norm()) == 1
    assert E.eps_plus.norm() == 1 and E.eps_plus.is_totally_positive()


def test_embeddings_and_signs():
    E = Field(5)
    x = E.elem(1, -1)  # 1 - theta = (1 - sqrt 5)/2
    assert x.signs() == (-1, 1) or x.signs() == (1, -1)
    assert x.norm() == -1
    assert x.embedding(1) * x.embedding(2) == pytest.approx(-1)


coords = st.integers(-50, 50)


@settings(max_examples=50, deadline=None)
@given(a=coords, b=coords, c=coords, d=coords)
def test_norm_is_multiplicative(a, b, c, d):
    E = Field(13)
    x, y = E.elem(a, b), E.elem(c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    if x.norm() != 0:
        assert x * x.inverse() == E.one()


@settings(max_examples=30, deadline=None)
@given(a=st.integers(1, 30), b=coords, c=st.integers(1, 30), d=coords)
def test_ideal_norm_multiplicative(a, b, c, d):
    E = Field(5)
    I = Ideal.principal(E.elem(a, b))
    J = Ideal.principal(E.elem(c, d))
    assert (I * J).norm() == I.norm() * J.norm()
    assert I.norm() == abs(E.elem(a, b).norm())


def test_prime_splitting():
    E = Field(5)
    ps = degree_one_primes(E, 11)
    assert len(ps) == 2
    for P, t in ps:
        assert P.norm() == 11
        assert P.contains(E.theta() - t)
    assert degree_one_primes(E, 7) == []  # 7 is inert in Q(sqrt 5)
    assert ideals_of_norm(E, 4) == [Ideal.from_int(E, 2)]


def test_ideal_membership_and_coprimality():
    E = Field(2)
    P = Ideal.principal(E.elem(0, 1))  # (sqrt 2)
    assert P.norm() == 2
    assert P * P == Ideal.from_int(E, 2)
    assert P.contains(E.elem(2, 4)) and not P.contains(E.elem(1))
    assert Ideal.from_int(E, 3).is_coprime(P)
    assert P.divides(Ideal.from_int(E, 4))
    assert P.conj() == P
    assert E.elem(Fraction(1, 2)).is_integral() is False
