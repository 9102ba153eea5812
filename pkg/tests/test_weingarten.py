import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from manova_lab import weingarten as wg
from manova_lab.algebra import QuadraticSurd
from manova_lab.combinatorics import Permutation, all_permutations, integer_partitions, permutation_of_type
from manova_lab.ensembles import haar_unitaries


# ---------------------------------------------------------------------------
# the Weingarten function
# ---------------------------------------------------------------------------


def test_order_one_and_two():
    for N in (1, 3, 9):
        assert wg.weingarten_table(1, N).by_shape((1,)) == Fraction(1, N)
    for N in (2, 5, 11):
        t = wg.weingarten_table(2, N)
        assert t.by_shape((1, 1)) == Fraction(1, N * N - 1)
        assert t.by_shape((2,)) == Fraction(-1, N * (N * N - 1))


def test_table_errors():
    with pytest.raises(ValueError, match="Gram matrix may be singular below order"):
        wg.weingarten_table(3, 2)
    with pytest.raises(ValueError, match="size cap"):
        wg.weingarten_table(8, 10)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("offset", [0, 3])
def test_table_matches_full_gram_inverse(k, offset):
    N = k + offset
    t = wg.weingarten_table(k, N)
    full = wg.gram_inverse_full(k, N)
    for images, value in full.items():
        assert value == t(Permutation(images))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_orthogonality_relation(k):
    # independent of the solver: sum_tau W(sigma tau^-1) N^#cyc(tau) = [sigma = id]
    perms = list(all_permutations(k))
    for N in (k, k + 3, 2 * k):
        t = wg.weingarten_table(k, N)
        for sigma in perms[:: max(1, len(perms) // 12)]:
            total = sum(t(sigma * tau.inverse()) * Fraction(N) ** tau.num_cycles() for tau in perms)
            assert total == (1 if sigma == Permutation.identity(k) else 0)


@pytest.mark.parametrize("k", [5, 6])
def test_class_function_at_higher_order(k):
    # construction re-verifies orthogonality for every sigma; it raises otherwise
    for N in (k, k + 3, 2 * k):
        t = wg.weingarten_table(k, N)
        assert set(t.values) == set(integer_partitions(k))


def test_order_seven_builds():
    t = wg.weingarten_table(7, 7)
    assert len(t.values) == 15


# ---------------------------------------------------------------------------
# joint moments
# ---------------------------------------------------------------------------


def test_joint_moment_examples():
    for N in (1, 4, 7):
        assert wg.joint_moment(wg.IndexPattern((0,), (0,), (0,), (0,)), N) == Fraction(1, N)
    assert wg.joint_moment(wg.IndexPattern((0, 1), (0, 1), (0, 1), (0, 1)), 4) == Fraction(1, 15)
    for N in (2, 4, 6):
        assert wg.joint_moment(wg.IndexPattern((0, 0), (0, 0), (0, 0), (0, 0)), N) == Fraction(2, N * (N + 1))


def test_phase_mismatch_vanishes():
    assert wg.joint_moment(wg.IndexPattern((0, 1), (0, 0), (0,), (0,)), 4) == 0
    with pytest.raises(ValueError):
        wg.IndexPattern((0, 1), (0,), (0,), (0,))


def test_row_norm_identity():
    # sum_j |U_{0j}|^2 = 1 and sum_j |U_{0j}|^4 = 2/(N+1)
    N = 5
    assert sum(wg.joint_moment(wg.IndexPattern((0,), (j,), (0,), (j,)), N) for j in range(N)) == 1
    fourth = sum(wg.joint_moment(wg.IndexPattern((0, 0), (j, j), (0, 0), (j, j)), N) for j in range(N))
    assert fourth == Fraction(2, N + 1)


def _random_patterns(k, N, count, rng):
    out = []
    while len(out) < count:
        i = tuple(int(v) for v in rng.integers(0, min(N, 3), k))
        j = tuple(int(v) for v in rng.integers(0, min(N, 3), k))
        pattern = wg.IndexPattern(i, j, tuple(rng.permutation(i).tolist()), tuple(rng.permutation(j).tolist()))
        out.append(pattern)
    return out


def _shared_mc(patterns, N, samples, seed, batch=20000):
    rng = np.random.default_rng(seed)
    sums = np.zeros(len(patterns), dtype=complex)
    sq = np.zeros(len(patterns))
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        U = haar_unitaries(N, m, rng)
        for n, p in enumerate(patterns):
            v = np.ones(m, dtype=complex)
            for a, b in zip(p.i, p.j):
                v *= U[:, a, b]
            for a, b in zip(p.i_conj, p.j_conj):
                v *= np.conj(U[:, a, b])
            sums[n] += v.sum()
            sq[n] += np.sum(np.abs(v) ** 2)
        done += m
    mean = sums / samples
    se = np.sqrt(np.maximum(sq / samples - np.abs(mean) ** 2, 0) / samples)
    return mean, se


@pytest.mark.parametrize("k,N", [(2, 4), (3, 5), (3, 8)])
def test_joint_moments_against_monte_carlo(k, N):
    patterns = _random_patterns(k, N, 10, np.random.default_rng(100 * k + N))
    mean, se = _shared_mc(patterns, N, 200_000, seed=k * N)
    for p, m, s in zip(patterns, mean, se):
        exact = float(wg.joint_moment(p, N))
        assert abs(m - exact) <= 5 * s + 1e-12, (p, m, exact, s)


def test_joint_moment_mc_helper():
    p = wg.IndexPattern((0, 1), (1, 2), (0, 1), (1, 2))
    m, s = wg.joint_moment_mc(p, 5, 100_000, 3)
    assert abs(m - float(wg.joint_moment(p, 5))) <= 5 * s


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def test_min_bound_dimension():
    assert wg.min_bound_dimension(5) == 41
    for k in range(1, 8):
        n0 = wg.min_bound_dimension(k)
        assert n0 > math.sqrt(6) * k**1.75 >= n0 - 1 - 1e-9


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_bound_check(k):
    n0 = wg.min_bound_dimension(k)
    for N in (n0, 2 * n0):
        rows = wg.bound_check(k, N)
        assert len(rows) == sum(1 for _ in integer_partitions(k))
        assert all(r.catalan_ok and r.power_ok for r in rows)
        assert all(abs(float(r.value)) <= r.catalan_bound * (1 + 1e-12) for r in rows)


def test_bound_examples():
    assert all(r.catalan_ok for r in wg.bound_check(3, 20))
    assert len(wg.bound_check(5, 41)) == 7
    with pytest.raises(ValueError, match="smallest admissible N is 41"):
        wg.bound_check(5, 40)


def test_catalan():
    assert [wg.catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]


# ---------------------------------------------------------------------------
# centred Bernoulli sums
# ---------------------------------------------------------------------------


def _f_brute(sigma, N, alpha):
    """Sum over i in [N]^k with i constant on the cycles of sigma, as floats."""
    k = sigma.n
    w = math.sqrt(alpha * (1 - alpha))
    mom = lambda ell: float(alpha * (1 - alpha) ** ell + (1 - alpha) * (-alpha) ** ell) / w**ell
    total = 0.0
    for i in product(range(N), repeat=k):
        if all(i[sigma(t)] == i[t] for t in range(k)):
            counts = {}
            for v in i:
                counts[v] = counts.get(v, 0) + 1
            total += math.prod(mom(c) for c in counts.values())
    return total


def test_f_alpha_examples():
    N = 7
    assert wg.f_alpha_exact(Permutation.identity(1), N, Fraction(1, 3)) == 0
    assert wg.f_alpha_exact(Permutation([1, 0]), N, Fraction(1, 3)) == N
    assert wg.f_alpha_exact(Permutation.identity(2), N, Fraction(1, 3)) == N


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5).flatmap(lambda k: st.permutations(list(range(k)))), st.integers(1, 4),
       st.sampled_from([Fraction(1, 2), Fraction(1, 4), Fraction(2, 7)]))
def test_f_alpha_matches_brute_force(images, N, alpha):
    sigma = Permutation(images)
    value = wg.f_alpha_exact(sigma, N, alpha)
    assert float(value) == pytest.approx(_f_brute(sigma, N, alpha), rel=1e-10, abs=1e-10)
    if sigma.n % 2:
        assert isinstance(value, QuadraticSurd) or value == 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 4)])
def test_f_sigma_ratio_within_constant(alpha):
    for k in range(1, 7):
        for shape in integer_partitions(k):
            assert wg.f_sigma_ratio(permutation_of_type(shape), alpha) <= 10


def test_cycle_sum_examples():
    total, bound, ok = wg.cycle_sum_check(Permutation.identity(3), 19)
    assert total == Fraction(2, 361) and bound == Fraction(108, 361) and ok
    total, bound, ok = wg.cycle_sum_check(Permutation.long_cycle(3), 19)
    # rho = sigma gives the identity; rho = sigma^2 leaves a 3-cycle
    assert total == 1 + Fraction(1, 361) and bound == 2 and ok
    with pytest.raises(ValueError, match="need x > 2 k"):
        wg.cycle_sum_check(Permutation.identity(3), 18)


def test_cycle_sum_s5():
    for shape in integer_partitions(5):
        assert wg.cycle_sum_check(permutation_of_type(shape), 51)[2]


def test_cycle_sum_brute_force():
    sigma = permutation_of_type((2, 1, 1))
    x = Fraction(40)
    cycles = [r for r in all_permutations(4) if r.num_cycles() == 1]
    assert len(cycles) == 6
    expected = sum(x ** -(4 - (sigma * r.inverse()).num_cycles()) for r in cycles)
    assert wg.cycle_sum_check(sigma, x)[0] == expected


# ---------------------------------------------------------------------------
# centred traces of the invariant model
# ---------------------------------------------------------------------------


def test_hat_trace_k1_vanishes():
    for N in (1, 4, 9):
        assert wg.hat_trace_expectation(1, N, Fraction(1, 2), Fraction(1, 3)) == 0


def test_hat_trace_k2_against_monte_carlo():
    exact = float(wg.hat_trace_expectation(2, 8, Fraction(1, 2), Fraction(1, 2)))
    mean, se = wg.hat_trace_mc(2, 8, 0.5, 0.5, 200_000, 2)
    assert abs(mean - exact) <= 5 * se


@pytest.mark.parametrize("k,N,a,b", [(3, 5, "1/3", "1/2"), (4, 4, "1/2", "1/4")])
def test_hat_trace_higher_order_against_monte_carlo(k, N, a, b):
    exact = float(wg.hat_trace_expectation(k, N, Fraction(a), Fraction(b)))
    mean, se = wg.hat_trace_mc(k, N, Fraction(a), Fraction(b), 100_000, k)
    assert abs(mean - exact) <= 5 * se


def test_hat_trace_errors():
    with pytest.raises(ValueError):
        wg.hat_trace_expectation(6, 8, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        wg.hat_trace_expectation(3, 2, Fraction(1, 2), Fraction(1, 2))


def test_hat_trace_growth_report():
    rows = wg.hat_trace_growth(N=32, k_max=5)
    assert [r["k"] for r in rows] == [1, 2, 3, 4, 5]
    assert all(r["reference"] == pytest.approx(10 * math.exp(4 * r["k"] ** 0.75)) for r in rows)
