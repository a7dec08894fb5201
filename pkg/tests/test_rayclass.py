import pytest

from padicl.errors import ConfigError, UnsupportedCharacter
from padicl.number_field import Field, Ideal, ideals_of_norm
from padicl.rayclass import (
    Character,
    Modulus,
    RayClassGroup,
    admissible_aux,
    choose_aux_prime,
    compute_e,
    eps_m,
    kappa_twist,
    make_aux,
    trivial_character,
    unit_index,
)


@pytest.mark.parametrize(
    "D, f, invariants",
    [(None, 5, [4]), (None, 20, [2, 4]), (5, 7, [6]), (2, 4, [2, 2]), (3, 1, [2]), (10, 1, [2]), (13, 1, [])],
)
def test_group_structure(D, f, invariants):
    G = RayClassGroup(Field(D), f)
    assert G.invariants == invariants


def test_classes_over_Q_are_residues():
    E = Field()
    G = RayClassGroup(E, 20)
    keys = {G.key(Ideal.from_int(E, a)) for a in range(1, 40) if a % 2 and a % 5}
    assert len(keys) == 8
    assert G.key(Ideal.from_int(E, 3)) == G.key(Ideal.from_int(E, 23))


def test_representatives():
    G = RayClassGroup(Field(5), 7)
    reps = G.representatives()
    assert len(reps) == 6
    assert len({G.key(I) for I in reps}) == 6
    assert all(I.is_coprime(G.f) for I in reps)


def test_character_multiplicative():
    E = Field(5)
    G = RayClassGroup(E, 7)
    ideals = [I for n in range(2, 40) for I in ideals_of_norm(E, n) if I.is_coprime(G.f)]
    for chi in G.characters():
        for I in ideals[:6]:
            for J in ideals[:6]:
                assert chi.exponent(I * J) == (chi.exponent(I) + chi.exponent(J)) % chi.n
    assert sorted(c.order for c in G.characters()) == [1, 2, 3, 3, 6, 6]


def test_character_checks():
    G = RayClassGroup(Field(), 5)
    with pytest.raises(ConfigError):
        Character(G, 4, [1, 2])
    with pytest.raises(ConfigError):
        Character(G, 3, [1])
    chi = Character(G, 4, [2]).reduced()
    assert chi.n == 2 and chi.exps == [1]
    with pytest.raises(UnsupportedCharacter):
        Character(RayClassGroup(Field(5), 7), 3, [2]).check_p(3)


def test_h1():
    with pytest.raises(ConfigError):
        Modulus(Field(), 10).check_h1(2)
    Modulus(Field(), 20).check_h1(2)


def test_units_mod_f():
    E = Field(5)
    n = unit_index(E, Ideal.from_int(E, 7))
    eps = eps_m(E, Ideal.from_int(E, 7))
    assert eps == E.eps_plus**n
    assert Ideal.from_int(E, 7).contains(eps - 1)


def test_e():
    assert compute_e(Field(), 5) == (1, 0)
    assert compute_e(Field(5), 2) == (2, 0)
    assert compute_e(Field(2), 2) == (3, 1)


def test_aux_prime_hypotheses():
    E = Field()
    G = RayClassGroup(E, 5)
    triv = trivial_character(G)
    quad = Character(G, 2, [1])
    a = choose_aux_prime(E, G, triv, 5)
    assert a.c == 2
    b = choose_aux_prime(E, G, quad, 5)
    assert b.c == 2
    b2 = choose_aux_prime(E, G, quad, 5, exclude=[b])
    assert b2.c == 3
    # chi(11) = 1 so 11 is not admissible for the quadratic character
    assert not admissible_aux(E, G, quad, 5, make_aux(E, 11))
    with pytest.raises(ConfigError):
        make_aux(Field(5), 7)


def test_kappa_twist():
    G = RayClassGroup(Field(), 5)
    chi = trivial_character(G)
    assert kappa_twist(chi, 1) is chi
    tw = kappa_twist(chi, 2)
    # chi * omega^{-1} is not trivial
    assert not tw.is_trivial(5, 3)
    assert kappa_twist(chi, 5).is_trivial(5, 3)
