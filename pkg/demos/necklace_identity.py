"""Power traces of A B A from a handful of scalar traces, exactly.

For projections A, B the values Tr (ABA)^k are fixed by N, Tr A, Tr B and the
centred mixed traces.  With rational matrices the prediction is exact; with
floats it agrees to rounding.

Run: python demos/necklace_identity.py
"""

import numpy as np

from manova_lab import manova as mv
from manova_lab import necklace as nk

rng = np.random.default_rng(7)
N, ra, rb = 6, 2, 3
A = nk.random_rational_projection(N, ra, rng)
B = nk.random_rational_projection(N, rb, rng)
params = mv.ManovaParams("1/3", "1/2")
data = nk.mixed_traces(A, B, params, 6)
print("exact %dx%d projections of ranks %d and %d" % (N, N, ra, rb))
for k, (p, d) in enumerate(zip(nk.necklace_predict(data, 6), nk.direct_traces(A, B, 6)), 1):
    print("  k=%d  predicted %-22s direct %-22s equal %s" % (k, p, d, p == d))

# the deviation from N m_k, and its closed form when beta = 1/2
terms = nk.error_terms(data, 6)
km = nk.km_deltas(data, 6)
print("Delta_k:", [str(v) for v in terms.Delta])
print("closed form matches recursion:", list(km.DeltaTilde) == list(terms.DeltaTilde))

A = nk.random_complex_projection(64, 20, rng)
B = nk.random_complex_projection(64, 32, rng)
pred = nk.necklace_predict(nk.mixed_traces(A, B, mv.ManovaParams("5/16", "1/2"), 8), 8)
direct = nk.direct_traces(A, B, 8)
print("complex 64x64: worst relative error %.1e" % max(abs(x - y) / abs(y) for x, y in zip(pred, direct)))
