"""
Iwasawa power series and invariants
===================================

L_p(chi, s) = B(t) / C(t) with t = u^(1-s) - 1, where B and C are power
series truncated at degree L.  The Weierstrass data of B / C gives lambda
and mu.
"""

# %%
from padicl.lfunction import (
    evaluate_iwasawa,
    iwasawa_series,
    l_value,
    lambda_mu_invariants,
    ray_class_group,
)
from padicl.number_field import Field
from padicl.rayclass import Character

E = Field()
chi = Character(ray_class_group(E, 5), 2, [1])
ser = iwasawa_series(E, 5, chi, 5, 6, 6)
print("B:", ser.B[:4])
print("C:", ser.C[:4])

# %%
# Evaluating the series matches the direct value.
for s in (-3, 0, 17):
    a = evaluate_iwasawa(ser, s)
    b = l_value(E, 5, chi, 5, s, 6)
    print(s, a.beta * b.gamma == b.beta * a.gamma)

# %%
# lambda and mu.  mu = 0 is certified by a unit coefficient; lambda is its
# index.
print(lambda_mu_invariants(ser).to_json())
