"""
Exact rational oracles
======================

Independent exact computations used to check the p-adic side: Bernoulli
numbers and polynomials, Hurwitz partial zeta values, generalized
Bernoulli numbers and the Omega operator identities.
"""

# %%
from fractions import Fraction

from padicl.oracle import (
    MultiPoly,
    bernoulli_number,
    exact_twisted_partial_zeta_Q,
    hurwitz_partial_zeta,
    omega_commutation_check,
)

print([str(bernoulli_number(k)) for k in range(9)])

# %%
# zeta(-k; a mod f) from Bernoulli polynomials, and its c-twist.
print(hurwitz_partial_zeta(1, 5, 1))
print([str(exact_twisted_partial_zeta_Q(1, 5, 2, k)) for k in range(4)])

# %%
# Omega commutes with Delta = prod (1 + T_i) d/dT_i.
A = MultiPoly({(1, 2): Fraction(1, 3), (0, 3): 2})
print(omega_commutation_check(A))
