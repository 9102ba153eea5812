"""Acceptance criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (also collected in the
terminal summary).  Runtime budgets are part of each criterion.  Run the
module directly to print the lines without pytest.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from manova_lab import combinatorics as cb
from manova_lab import genfunc as gf
from manova_lab import manova as mv
from manova_lab import necklace as nk
from manova_lab import weingarten as wg
from manova_lab.ensembles import edge_experiment, esd_experiment, trial_rng

# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def crit_necklace():
    worst = 0.0
    sizes = (8, 16, 64)
    for t in range(50):
        rng = trial_rng(101, t)
        N = sizes[t % 3]
        ra, rb = (int(v) for v in rng.integers(1, N, size=2))
        A = nk.random_complex_projection(N, ra, rng)
        B = nk.random_complex_projection(N, rb, rng)
        p = mv.ManovaParams(Fraction(ra, N), Fraction(rb, N))
        pred = nk.necklace_predict(nk.mixed_traces(A, B, p, 8), 8)
        direct = nk.direct_traces(A, B, 8)
        worst = max(worst, max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(pred, direct)))
    half = Fraction(1, 2)
    exact_pairs = [(nk.as_exact_matrix([[1, 0], [0, 0]]), nk.as_exact_matrix([[half, half], [half, half]]), mv.ManovaParams("1/2", "1/2"))]
    rng = np.random.default_rng(3)
    for N, ra, rb, a, b in ((3, 1, 2, "1/3", "2/3"), (4, 2, 1, "1/2", "1/4"), (5, 2, 3, "2/5", "3/5"), (6, 3, 2, "1/3", "1/2")):
        exact_pairs.append((nk.random_rational_projection(N, ra, rng), nk.random_rational_projection(N, rb, rng), mv.ManovaParams(a, b)))
    exact_ok = all(nk.necklace_predict(nk.mixed_traces(A, B, p, 8), 8) == nk.direct_traces(A, B, 8) for A, B, p in exact_pairs)
    return worst < 1e-8 and exact_ok, "50 float pairs worst rel err %.1e; 5 rational pairs exact: %s" % (worst, exact_ok), 10


def crit_km():
    rng = np.random.default_rng(9)
    ok = True
    for N, ra, rb, alpha in ((8, 3, 4, "3/8"), (10, 4, 6, "1/3"), (12, 5, 7, "2/7")):
        A = nk.random_rational_projection(N, ra, rng)
        B = nk.random_rational_projection(N, rb, rng)
        data = nk.mixed_traces(A, B, mv.ManovaParams(alpha, "1/2"), 12)
        closed = nk.km_deltas(data, 12).DeltaTilde
        recursion = nk.error_terms(data, 12).DeltaTilde
        ok &= list(closed) == list(recursion) and all(isinstance(v, Fraction) for v in closed)
    X, Y = cb.km_triangles(16)
    ident = cb.identity_matrix(16)
    inverse_ok = cb.matmul(X, Y) == ident and cb.matmul(Y, X) == ident
    return ok and inverse_ok, "closed form == recursion (k <= 12, exact): %s; X Y = Y X = I at 16: %s" % (ok, inverse_ok), 5


def crit_q_sum():
    count, ok = 0, True
    for alpha in (Fraction(1, 7), Fraction(1, 3), Fraction(2, 5)):
        for k in range(1, 11):
            for a in range(k + 1):
                direct = sum(((-alpha) ** (k - j) * cb.q_poly(k, j, a)(Fraction(1)) for j in range(max(a, 1), k + 1)), Fraction(0))
                ok &= direct == cb.q_sum_km_closed(k, a, alpha)
                count += 1
    return ok, "%d exact equalities over k <= 10, a <= k, three alpha" % count, 10


def crit_genfunc():
    runs_series = gf.runs_gf_series(8)
    runs_ok = all(runs_series[n] == gf.runs_polynomial(n) for n in range(1, 9))
    q_series = gf.q_gf_expand(8)
    q_ok = all(
        gf.q_from_series(q_series, k, j, a) == cb.q_poly_enumerate(k, j, a)
        for k in range(1, 9) for j in range(1, k + 1) for a in range(j + 1)
    )
    pairs = [mv.ManovaParams("1/4", "1/2"), mv.ManovaParams("1/5", "2/5")]
    s_ok = all(gf.s_gf_from_polys(p, 8) == gf.s_gf_closed(p, 8) for p in pairs)
    sf_ok = all(gf.verify_orth_identity(p, 8).passed for p in pairs)
    ok = runs_ok and q_ok and s_ok and sf_ok
    return ok, "runs %s, Q %s, S %s, S-F identity %s" % (runs_ok, q_ok, s_ok, sf_ok), 30


GRID = [(a, b) for a in ("1/10", "1/4", "1/2", "7/10") for b in ("1/4", "1/2", "3/4")]


def crit_moments():
    worst, spots = 0.0, True
    for a, b in GRID:
        p = mv.ManovaParams(a, b)
        exact = mv.moments_exact(p, 12)
        quad = mv.moments_quadrature(p, 12)
        worst = max(worst, max(abs(float(x) - y) for x, y in zip(exact.values, quad.values)))
        al, be = p.alpha, p.beta
        m1, m2 = al * be, al * be * (al + be - al * be)
        spots &= exact.moment(1) == m1 and exact.moment(2) == m2
        spots &= abs(quad.moment(1) - float(m1)) < 1e-8 and abs(quad.moment(2) - float(m2)) < 1e-8
    return worst < 1e-8 and spots, "max |exact - quadrature| %.1e on 12 points, k <= 12; spot values %s" % (worst, spots), 10


def crit_weingarten():
    ok2 = all(
        weingarten_k2_matches(N) for N in (2, 3, 4, 7, 10)
    )
    N = 4
    pattern = wg.IndexPattern((0, 0), (0, 0), (0, 0), (0, 0))
    exact = wg.joint_moment(pattern, N)
    mean, se = wg.joint_moment_mc(pattern, N, 200000, 2024)
    z = abs(mean - float(exact)) / se
    mc_ok = exact == Fraction(2, N * (N + 1)) and z <= 3
    bounds_ok = True
    for k in range(1, 6):
        n0 = wg.min_bound_dimension(k)
        for n in (n0, 2 * n0):
            bounds_ok &= all(r.catalan_ok and r.power_ok for r in wg.bound_check(k, n))
    detail = "k=2 Gram inverse %s; E|U11|^4 MC %.5f vs %s (%.2f s.e.); bounds k <= 5 %s" % (ok2, mean.real, exact, z, bounds_ok)
    return ok2 and mc_ok and bounds_ok, detail, 120


def weingarten_k2_matches(N):
    # inverse of [[N^2, N], [N, N^2]], rows/cols (identity, transposition)
    det = Fraction(N**4 - N**2)
    inv_id, inv_tr = Fraction(N**2) / det, Fraction(-N) / det
    t = wg.weingarten_table(2, N)
    return t.by_shape((1, 1)) == inv_id and t.by_shape((2,)) == inv_tr


def crit_weak_convergence():
    s = esd_experiment("dft", "3/10", "1/2", 512, 10, 5, seed=20240)
    ok = s.max_moment_error < 0.02 and s.tv_distance < 0.08
    return ok, "max moment error %.4f (< 0.02), histogram TV %.4f (< 0.08)" % (s.max_moment_error, s.tv_distance), 180


def crit_edge():
    target = mv.edge(mv.ManovaParams("3/10", "1/2"))
    runs = {N: edge_experiment("invariant", "3/10", "1/2", N, 20, seed=777) for N in (128, 256, 512)}
    medians = [runs[N].median_deviation for N in (128, 256, 512)]
    mean_ok = abs(runs[512].mean - target) < 0.05
    trend_ok = medians[0] >= medians[1] >= medians[2]
    upper = edge_experiment("invariant", "3/5", "1/2", 512, 20, seed=778)
    upper_ok = abs(upper.mean - 1) < 0.02
    detail = "mean %.4f vs edge %.5f; medians %s; alpha=0.6 mean %.4f" % (
        runs[512].mean, target, ", ".join("%.4f" % m for m in medians), upper.mean,
    )
    return mean_ok and trend_ok and upper_ok, detail, 600


def crit_folding():
    reps = [mv.folding_check(a, 8, tol=1e-7) for a in ("1/4", "3/10")]
    worst = max(r.max_error for r in reps)
    return all(r.passed for r in reps), "max conditional-moment error %.1e for k <= 8" % worst, 10


def crit_stirling_riordan():
    s_ok = all(cb.partition_sum_bound_check(ell, x)[2] for ell in range(1, 13) for x in (2 * ell, 4 * ell, 8 * ell))
    ns_ok = all(cb.no_singleton_bound_check(ell, w)[2] for w in ("permutations", "partitions") for ell in range(1, 11))
    ident = cb.identity_matrix(16)
    riordan_ok = True
    for first, second in (("lucas_even", "binomial_even"), ("lucas_odd", "binomial_odd")):
        A = cb.riordan_from_params(*cb.riordan_series(first, 16), 16)
        B = cb.riordan_from_params(*cb.riordan_series(second, 16), 16)
        riordan_ok &= [list(r) for r in cb.riordan_multiply(A, B).entries] == ident
    ok = s_ok and ns_ok and riordan_ok
    return ok, "partition sum bound %s; no-singleton bounds %s; Riordan products %s" % (s_ok, ns_ok, riordan_ok), 10


CRITERIA = [
    (1, "exact necklace identity", crit_necklace),
    (2, "Kesten-McKay closed form", crit_km),
    (3, "q-sum identity", crit_q_sum),
    (4, "generating functions", crit_genfunc),
    (5, "MANOVA moments", crit_moments),
    (6, "Weingarten calculus", crit_weingarten),
    (7, "weak convergence (DFT frame)", crit_weak_convergence),
    (8, "edge convergence (invariant model)", crit_edge),
    (9, "folding identity", crit_folding),
    (10, "Stirling bounds and Riordan arrays", crit_stirling_riordan),
]


def evaluate(fn):
    start = time.perf_counter()
    passed, detail, budget = fn()
    seconds = time.perf_counter() - start
    in_time = seconds < budget
    if not in_time:
        detail += "; over budget (%.0fs > %ds)" % (seconds, budget)
    return passed and in_time, detail, seconds


@pytest.mark.parametrize("number,name,fn", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_acceptance(number, name, fn, record_acceptance):
    passed, detail, seconds = evaluate(fn)
    record_acceptance(number, name, passed, detail, seconds)
    assert passed, detail


if __name__ == "__main__":
    for number, name, fn in CRITERIA:
        passed, detail, seconds = evaluate(fn)
        print("[%s] %2d %s: %s (%.1fs)" % ("PASS" if passed else "FAIL", number, name, detail, seconds), flush=True)
