"""
p-adic L-values
===============

An L-value is returned as a certificate (beta, gamma) with
L_p(chi, s) = beta / gamma, so that a non-unit gamma does not cost
precision silently.
"""

# %%
from padicl.lfunction import l_value, ray_class_group
from padicl.number_field import Field
from padicl.oracle import classical_L_value, exact_character
from padicl.rayclass import Character

# %%
# Kubota-Leopoldt for the quadratic character mod 5 at s = -3.  The
# classical value L(chi, -3) equals 2.
E = Field()
chi = Character(ray_class_group(E, 5), 2, [1])
cert = l_value(E, 5, chi, 5, -3, 8)
print(cert.to_json())
print(cert.matches(2))

# %%
# Interpolation over a sweep of characters mod 20 against exact
# generalized Bernoulli numbers.
G = ray_class_group(E, 20)
for chi in G.characters():
    if chi.order % 5 == 0:
        continue
    cert = l_value(E, 20, chi, 5, -3, 6)
    print(chi, cert.matches(classical_L_value(exact_character(chi), 4, 20)))

# %%
# A real quadratic field: Q(sqrt 5), f = 7, order 3 character.
F = Field(5)
H = ray_class_group(F, 7)
cubic = [c for c in H.characters() if c.order == 3][0]
cert = l_value(F, 7, cubic, 7, 5, 4)
print(cert.quotient())
