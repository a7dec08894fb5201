"""
p-adic integers at fixed precision
==================================

Residues mod p^M with the prime and precision attached, the Teichmuller
character, the Iwasawa logarithm and the normalised log L_u.
"""

# %%
# A p-adic integer is a residue mod p^M.  Fractions with a unit denominator
# are accepted directly.
from fractions import Fraction

from padicl.padic_core import PAdicInt, Lu, angle, binomial_row, plog, pow1q, teichmuller

x = PAdicInt(Fraction(-1, 3), 5, 6)
print(x.residue, x.digits())

# %%
# omega(x) is the (p-1)-th root of unity congruent to x; <x> = x / omega(x)
# lands in 1 + pZ_p.
w = teichmuller(PAdicInt(2, 5, 6))
print("omega(2) =", w.residue, " omega(2)^4 =", (w * w * w * w).residue)
print("<2> =", angle(PAdicInt(2, 5, 6)).residue)

# %%
# log is additive on 1 + pZ_p and x^s interpolates integer powers.
a, b = PAdicInt(6, 5, 8), PAdicInt(11, 5, 8)
print(plog(a * b) == plog(a) + plog(b))
print(pow1q(a, 3) == a * a * a)

# %%
# L_u(x) = log<x> / log u loses e digits: input at precision 8 gives output
# at precision 7.  With u = 1 + p, L_u(u^k) = k.
u = PAdicInt(6, 5, 8)
print(Lu(pow1q(u, 42)).residue, Lu(u).M)

# %%
# Binomial coefficients C(s, n) mod p^M for a p-adic s.  For s = 7 the row
# stops at n = 7.
print(binomial_row(7, 10, 5, 4))
