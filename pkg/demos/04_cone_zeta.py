"""
Cone zeta values three ways
===========================

The twisted cone zeta function at s can be computed directly from the cone
value, by integrating against the cone measure, or by evaluating the cone's
Iwasawa polynomial.  All three agree mod p^M and match the exact series.
"""

# %%
from padicl.cone_zeta import AuxContext, cone_iwasawa, cone_measure, cone_value, measure_value
from padicl.lfunction import prepare
from padicl.mahler_measures import moment
from padicl.number_field import Field
from padicl.oracle import exact_cone_series_value
from padicl.padic_core import PAdicInt

st = prepare(Field(5), 7, None, 7)
p, M = 7, 4
ctx = AuxContext(st.field, st.aux, p, M)
cone = st.cones()[0]

# %%
# Moments of the cone measure against the exact rational values.
mu = cone_measure(cone, ctx, 8)
for k in range(3):
    ex = exact_cone_series_value(cone, st.aux.c, st.aux.t, k)
    print(k, moment(mu, k).residue == PAdicInt(ex, p, M).residue, ex)

# %%
# Direct value versus integrating x^s against the measure.
s = 12345
print(cone_value(cone, ctx, s) == measure_value(cone, ctx, s))

# %%
# The Iwasawa polynomial of the cone, truncated at degree L.
poly = cone_iwasawa(cone, ctx, 3)
print(poly)
