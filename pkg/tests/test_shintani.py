import pytest

from padicl.errors import ConfigError
from padicl.lfunction import prepare
from padicl.number_field import Field, Ideal
from padicl.rayclass import RayClassGroup, eps_m
from padicl.shintani import (
    Cone,
    CoverageReport,
    cone_coefficients,
    decompose,
    decompose_rational,
    verify_decomposition,
)


def test_rational_single_cone():
    dec = decompose_rational(3, 5, 2)
    (cone,) = dec.cones
    assert cone.base.a == 6 and cone.gens[0].a == 15
    assert verify_decomposition(dec, 500).ok
    with pytest.raises(ConfigError):
        decompose_rational(2, 5, 2)


def test_cone_coefficients():
    E = Field(5)
    c = Cone(E.elem(1), (E.elem(7), E.elem(7, 7)))
    assert cone_coefficients(c, E.elem(1) + E.elem(7) * 3 + E.elem(7, 7) * 2) == (3, 2)
    assert cone_coefficients(c, E.elem(2)) is None
    assert not c.contains(E.elem(1) - E.elem(7))


@pytest.mark.parametrize("D, p, f", [(5, 7, 7), (13, 3, 3)])
def test_cones_generate_the_right_set(D, p, f):
    st = prepare(Field(D), f, None, p)
    fi = st.f
    for I, dec in zip(st.reps, st.decomps):
        for cone in dec.cones:
            assert I.contains(cone.base) and fi.contains(cone.base - 1)
            for g in cone.gens:
                assert (I * fi).contains(g)
                assert g.is_totally_positive()
                assert not st.aux.ideal.contains(g)


def test_decomposition_is_deterministic():
    E = Field(5)
    f = Ideal.from_int(E, 7)
    aux = prepare(E, 7, None, 7).aux
    a = decompose(Ideal.unit(E), f, aux.ideal)
    b = decompose(Ideal.unit(E), f, aux.ideal)
    assert [c.to_json() for c in a.cones] == [c.to_json() for c in b.cones]
    assert a.eps_m == eps_m(E, f)


def test_verify_catches_tampering():
    st = prepare(Field(5), 7, None, 7)
    dec = st.decomps[0]
    import copy

    broken = copy.copy(dec)
    broken.cones = dec.cones[1:]
    rep = verify_decomposition(broken, 300)
    assert rep.misses and not rep.ok
    doubled = copy.copy(dec)
    doubled.cones = dec.cones + dec.cones[:1]
    assert verify_decomposition(doubled, 300).duplicates


def test_coverage_report_ok_flag():
    assert CoverageReport(3, 3, [], []).ok
    assert not CoverageReport(3, 2, [], [1]).ok
