"""
Measures as Mahler coefficient vectors
======================================

A measure on Z_p is stored through its moments against the binomial
basis C(x, n).  Continuous functions are stored through their Mahler
coefficients, and integration is a dot product.
"""

# %%
from padicl.mahler_measures import (
    dirac,
    indicator_fn,
    integrate,
    mahler_coeffs,
    moment,
    phi_value,
)
from padicl.padic_core import PAdicInt, vp

p, M = 5, 6
N = 40

# %%
# The Dirac measure at 3 integrates x^k to 3^k.
mu = dirac(3, N, p, M)
print([moment(mu, k).residue for k in range(4)])

# %%
# Mahler coefficients of x -> x^2 are 0, 1, 2, 0, ... (x^2 = C(x,1) + 2 C(x,2)).
sq = mahler_coeffs(lambda n: n * n, 6, p, M)
print(sq.values)
print(integrate(sq, mu).residue)

# %%
# phi_s is <x>^s on units and 0 on pZ_p.  Its Mahler coefficients decay,
# with valuation at least v(n!).
s = PAdicInt(1234, p, M)
f = mahler_coeffs(lambda n: phi_value(n, s, p, M), N, p, M)
print([vp(c, p) if c else M for c in f.values[:20]])

# %%
# The indicator of 1 + p Z_p has a finite expansion.
ind = indicator_fn(p, M, 1)
print(len(ind.values), integrate(ind, dirac(6, len(ind.values), p, M)).residue)
