"""The MANOVA law: exact moments, quadrature, atoms and the support edge.

Run: python demos/moments_and_density.py
"""

from manova_lab import manova as mv

for a, b in (("3/10", "1/2"), ("7/10", "3/5")):
    p = mv.ManovaParams(a, b)
    law = mv.ManovaLaw(p)
    print("alpha=%s beta=%s" % (p.alpha, p.beta))
    print("  support [%.5f, %.5f], edge %.5f" % (law.r_minus, law.r_plus, mv.edge(p)))
    print("  atom at 0: %s, atom at 1: %s, continuous mass %.6f" % (law.atom0, law.atom1, float(law.ac_mass)))
    exact = mv.moments_exact(p, 8)
    quad = mv.moments_quadrature(p, 8)
    print("  k  exact moment (rational)          quadrature")
    for k in range(1, 9):
        print("  %d  %-32s %.12f" % (k, exact.moment(k), quad.moment(k)))

# the exact recursion stays rational far out
m24 = mv.moments_exact(mv.ManovaParams("1/3", "2/5"), 24).moment(24)
print("\nm_24 at (1/3, 2/5) has a %d-digit denominator" % len(str(m24.denominator)))

# moments of the symmetrized law equal alpha^k (folding)
rep = mv.folding_check("1/4", 6)
print("folding check at alpha=1/4, k<=6: max error %.1e, passed %s" % (rep.max_error, rep.passed))
