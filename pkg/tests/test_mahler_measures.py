import random

import pytest
from hypothesis import given, settings, strategies as st

from padicl.errors import PrecisionError
from padicl.mahler_measures import (
    Measure,
    delta,
    dirac,
    indicator_bound,
    indicator_fn,
    integrate,
    mahler_coeffs,
    moment,
    phi_bound,
    phi_s_fn,
    phi_value,
    psi_bound,
    psi_ell_fn,
    psi_value,
)
from padicl.padic_core import PAdicInt, vp


def test_polynomial_has_finite_expansion():
    f = mahler_coeffs(lambda n: n**3, 8, 5, 6)
    # x^3 = C(x,1) + 6 C(x,2) + 6 C(x,3)
    assert f.values == (0, 1, 6, 6, 0, 0, 0, 0)
    assert f(11) == 1331


def test_bounds():
    assert phi_bound(5, 4) == 20 and phi_bound(2, 4) == 10
    assert psi_bound(2, 3, 4, 1) == 3 * 14
    assert indicator_bound(5, 3, 1) == 75


@settings(max_examples=20, deadline=None)
@given(a=st.integers(0, 10**6), k=st.integers(0, 6))
def test_dirac_moments(a, k):
    p, M = 5, 6
    mu = dirac(a, k + 1, p, M)
    assert moment(mu, k) == pow(a, k, p**M)


def test_dirac_integrates_to_evaluation():
    p, M = 7, 4
    f = phi_s_fn(PAdicInt(-3, p, M), p, M)
    for a in (1, 8, 50, 3, 14):
        mu = dirac(a, f.N, p, M)
        assert integrate(f, mu).residue == phi_value(a, PAdicInt(-3, p, M), p, M)


def test_integrate_needs_length():
    f = phi_s_fn(PAdicInt(2, 5, 3), 5, 3)
    with pytest.raises(PrecisionError):
        integrate(f, dirac(1, 5, 5, 3))
    with pytest.raises(PrecisionError):
        phi_s_fn(PAdicInt(2, 5, 3), 5, 3, N=4)


def test_measure_algebra():
    a = dirac(2, 5, 5, 3)
    b = dirac(3, 5, 5, 3)
    s = a + b.scale(2)
    assert moment(s, 2) == 4 + 2 * 9
    assert delta(a).N == 4


@pytest.mark.parametrize("p", [3, 5, 7])
def test_phi_agrees_with_power_on_units(p):
    M = 5
    s = 7
    f = phi_s_fn(PAdicInt(s, p, M), p, M)
    for x in range(1, 60):
        if x % p:
            from padicl.padic_core import angle, pow1q

            assert f(x) == pow1q(angle(PAdicInt(x, p, M)), s)
        else:
            assert f(x) == 0


def test_phi_truncation_is_exact():
    # coefficients past the certified length vanish mod p^M
    for p, M in [(3, 4), (5, 3), (2, 5)]:
        f = phi_s_fn(PAdicInt(123, p, M), p, M, N=phi_bound(p, M) + 30)
        assert all(v == 0 for v in f.values[phi_bound(p, M):])


def test_psi_generating_function():
    # sum_l psi_l(x) S^l = x^{-1} (1 + S)^{L_u(x)}: check at S = p
    p, M, e = 5, 6, 1
    x = 31
    total = sum(psi_value(x, l, p, M, e) * p**l for l in range(M + 1)) % p**M
    from padicl.padic_core import Lu, pow1q

    L = Lu(PAdicInt(x, p, M + 1)).residue
    expect = pow1q(PAdicInt(1 + p, p, M), L) * PAdicInt(x, p, M).inverse()
    assert total == expect.residue
    assert psi_value(10, 1, p, M, e) == 0
    # <3> = -3 is not 1 mod 8, so psi vanishes there for p = 2, e = 3
    assert psi_value(3, 1, 2, 6, 3) == 0 and psi_value(9, 1, 2, 6, 3) != 0


def test_psi_and_indicator_truncation():
    p, M, e = 3, 3, 1
    for l in range(4):
        f = psi_ell_fn(l, p, M, e)
        g = mahler_coeffs(lambda n: psi_value(n, l, p, M, e), f.N + 20, p, M)
        assert all(v == 0 for v in g.values[f.N:])
    ind = indicator_fn(p, M, e)
    assert ind(1) == 1 and ind(2) == 0 and ind(4) == 1


def test_norm_valuation():
    f = mahler_coeffs(lambda n: 25 * n, 4, 5, 4)
    assert f.norm_valuation() == 2
