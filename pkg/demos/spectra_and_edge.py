"""Random projections: the spectrum of A B A and its top eigenvalue.

A is a random coordinate projection; B is either a Haar-rotated projection or
a random row selection of the DFT matrix.  Both spectra approach the MANOVA
law, and the top eigenvalue approaches the support edge.

Run: python demos/spectra_and_edge.py
"""

from manova_lab.ensembles import edge_experiment, esd_experiment

s = esd_experiment("dft", "3/10", "1/2", 512, 5, 5, seed=1)
print("DFT frame, N=512, 5 trials")
for k, (e, x) in enumerate(zip(s.empirical_moments, s.exact_moments), 1):
    print("  m_%d  empirical %.5f  exact %.5f" % (k, e, x))
print("  histogram total-variation distance %.4f" % s.tv_distance)

print("\ninvariant model, alpha=0.3, beta=0.5")
for N in (128, 256, 512):
    e = edge_experiment("invariant", "3/10", "1/2", N, 20, seed=2)
    print("  N=%-4d mean lambda_max %.5f  edge %.5f  median |dev| %.4f" % (N, e.mean, e.edge, e.median_deviation))
