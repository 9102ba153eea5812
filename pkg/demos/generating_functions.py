"""Closed-form generating functions checked coefficient by coefficient.

Run: python demos/generating_functions.py
"""

from manova_lab import combinatorics as cb
from manova_lab import genfunc as gf
from manova_lab import manova as mv


def show(poly):
    """Coefficients from the constant term up."""
    return "[" + ", ".join(str(c) for c in poly.coefficients) + "]"


print("cyclic runs, coefficients of x^1..x^6 at y=2, z=3:", ", ".join(str(v) for v in gf.runs_enumeration_gf(6, 2, 3)))

series = gf.q_gf_expand(5)
print("q_{5,3,1}(w) from the series:     ", show(gf.q_from_series(series, 5, 3, 1)))
print("q_{5,3,1}(w) by enumeration:      ", show(cb.q_poly_enumerate(5, 3, 1)))

p = mv.ManovaParams("1/4", "1/2")
for k in range(1, 4):
    print("s_%d coefficients %s" % (k, show(gf.s_poly(k, p))))
f = gf.de_orth_polys(p, 4)
for n in range(5):
    print("f_%d coefficients %s" % (n, show(f[n])))
rep = gf.verify_orth_identity(p, 10)
print("S = (F(x, t/beta) - 1)(...)/(...) through t^10:", rep.passed)
