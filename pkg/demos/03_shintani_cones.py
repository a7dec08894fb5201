"""
Cone decompositions of ray classes
==================================

Totally positive elements congruent to 1 mod f inside an ideal are split
into disjoint cones C(beta; lambda_1, lambda_2), one fundamental domain for
the totally positive units congruent to 1 mod f.
"""

# %%
from padicl.lfunction import prepare
from padicl.number_field import Field
from padicl.shintani import decompose_rational, verify_decomposition

# %%
# Over Q the decomposition of a mod f is a single half-line a + f N.
dec = decompose_rational(1, 5, 2)
print(dec.cones[0].to_json())

# %%
# Over Q(sqrt 5) with f = 7 every ray class needs several two-dimensional
# cones.  ``prepare`` picks an auxiliary prime, class representatives and
# their decompositions.
st = prepare(Field(5), 7, None, 7)
print("aux prime", st.aux.c, "classes", len(st.reps), "cones", len(st.cones()))
for cone in st.cones()[:3]:
    print(cone.to_json())

# %%
# Coverage check: every totally positive element of bounded height lies in
# exactly one cone.
rep = verify_decomposition(st.decomps[0], 200)
print("misses", len(rep.misses), "duplicates", len(rep.duplicates))
