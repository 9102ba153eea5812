"""Exact Haar integrals through the Weingarten function.

Run: python demos/weingarten_calculus.py
"""

from fractions import Fraction

from manova_lab import weingarten as wg

for shape, value in sorted(wg.weingarten_table(3, 5).values.items()):
    print("W_5 on cycle type %-10s %s" % (shape, value))

N = 4
pattern = wg.IndexPattern((0, 0), (0, 0), (0, 0), (0, 0))
exact = wg.joint_moment(pattern, N)
mean, se = wg.joint_moment_mc(pattern, N, 100_000, 1)
print("E|U_11|^4 at N=4: exact %s, Monte Carlo %.5f +- %.5f" % (exact, mean.real, se))

for row in wg.bound_check(4, wg.min_bound_dimension(4)):
    print("k=4 shape %-14s |W| %.3e <= %.3e : %s" % (row.shape, abs(float(row.value)), row.catalan_bound, row.catalan_ok))

half = Fraction(1, 2)
for k in range(1, 5):
    value = wg.hat_trace_expectation(k, 6, half, half)
    print("E Tr(A^ U D^ U*)^%d at N=6: %.6f (exact %s)" % (k, float(value), value))
