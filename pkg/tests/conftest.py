import pytest

from padicl.lfunction import prepare, ray_class_group
from padicl.number_field import Field
from padicl.rayclass import make_aux
from padicl.shintani import decompose_rational


@pytest.fixture(scope="session")
def q5_cone():
    """The cone C(1; 5) with c = 2, p = 5."""
    dec = decompose_rational(1, 5, 2)
    return dec.cones[0]


@pytest.fixture(scope="session")
def q5_aux():
    return make_aux(Field(), 2)


@pytest.fixture(scope="session")
def sqrt5_group():
    return ray_class_group(Field(5), 7)


@pytest.fixture(scope="session")
def sqrt5_trivial(sqrt5_group):
    return prepare(Field(5), 7, None, 7)


@pytest.fixture(scope="session")
def sqrt5_quadratic(sqrt5_group):
    chi = [c for c in sqrt5_group.characters() if c.order == 2][0]
    return prepare(Field(5), 7, chi, 7)


@pytest.fixture(scope="session")
def sqrt5_cubic(sqrt5_group):
    chi = [c for c in sqrt5_group.characters() if c.order == 3][0]
    return prepare(Field(5), 7, chi, 7)
