"""Named verification suites for the exact identities and bounds.

Every check returns ``(passed, detail)``; :func:`run_suite` times them and
turns exceptions into failures, so one broken check never hides the rest.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import combinatorics as cb
from . import genfunc as gf
from . import manova as mv
from . import necklace as nk
from . import weingarten as wg
from .ensembles import trial_rng

__all__ = ["CheckResult", "SUITES", "suite_names", "run_suite", "MANOVA_GRID"]

MANOVA_GRID = [(a, b) for a in ("1/10", "1/4", "1/2", "7/10") for b in ("1/4", "1/2", "3/4")]


@dataclass
class CheckResult:
    suite: str
    claim: str
    passed: bool
    detail: str
    seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# combinatorics
# ---------------------------------------------------------------------------


def check_q_sum() -> tuple[bool, str]:
    n = 0
    for alpha in (Fraction(1, 7), Fraction(1, 3), Fraction(2, 5)):
        for k in range(1, 11):
            for a in range(k + 1):
                if cb.q_sum_km(k, a, alpha) != cb.q_sum_km_closed(k, a, alpha):
                    return False, "mismatch at k=%d a=%d alpha=%s" % (k, a, alpha)
                n += 1
    return True, "%d exact equalities (k <= 10, three alpha)" % n


def check_q_dp() -> tuple[bool, str]:
    for k in range(1, 9):
        for j in range(1, k + 1):
            for a in range(j + 1):
                if cb.q_poly(k, j, a) != cb.q_poly_enumerate(k, j, a):
                    return False, "mismatch at (%d,%d,%d)" % (k, j, a)
    return True, "composition DP equals subset enumeration for k <= 8"


def check_stirling_falling() -> tuple[bool, str]:
    x = cb.Polynomial.x()
    for n in range(11):
        total = cb.Polynomial()
        for k in range(n + 1):
            total = total + cb.stirling("second", 0, n, k) * cb.falling_factorial(x, k)
        if total != x**n:
            return False, "x^n expansion fails at n=%d" % n
    return True, "x^n = sum_k S(n,k) x^(k falling) for n <= 10"


def check_stirling_recurrences() -> tuple[bool, str]:
    for kind in ("first", "second"):
        for r in (0, 1):
            for n in range(9):
                for k in range(n + 1):
                    if cb.stirling(kind, r, n, k, "recurrence") != cb.stirling(kind, r, n, k, "enumerate"):
                        return False, "%s_%d(%d,%d) recurrence disagrees" % (kind, r, n, k)
    return True, "recurrences equal enumeration for n <= 8, r <= 1"


def check_partition_sum_bound() -> tuple[bool, str]:
    worst = 0.0
    for ell in range(1, 13):
        for x in (2 * ell, 4 * ell, 8 * ell):
            lhs, rhs, ok = cb.partition_sum_bound_check(ell, x)
            if not ok:
                return False, "fails at l=%d x=%d" % (ell, x)
            worst = max(worst, float(lhs / rhs))
    return True, "largest lhs/rhs ratio %.4f" % worst


def check_no_singleton_bounds() -> tuple[bool, str]:
    worst = 0.0
    for which in ("permutations", "partitions"):
        for ell in range(1, 11):
            lhs, rhs, ok = cb.no_singleton_bound_check(ell, which)
            if not ok:
                return False, "%s bound fails at l=%d" % (which, ell)
            worst = max(worst, float(lhs) / rhs)
    return True, "largest lhs/rhs ratio %.3e" % worst


def check_riordan() -> tuple[bool, str]:
    size = 16
    ident = cb.identity_matrix(size)
    for first, second in (("lucas_even", "binomial_even"), ("lucas_odd", "binomial_odd")):
        A = cb.riordan_from_params(*cb.riordan_series(first, size), size)
        B = cb.riordan_from_params(*cb.riordan_series(second, size), size)
        if [list(r) for r in cb.riordan_multiply(A, B).entries] != ident:
            return False, "%s * %s is not the identity" % (first, second)
        for name, R in ((first, A), (second, B)):
            for ell in range(size):
                for b in range(ell + 1):
                    if R[ell, b] != cb.riordan_entry_formula(name, ell, b):
                        return False, "%s entry (%d,%d) disagrees with its formula" % (name, ell, b)
    return True, "even and odd pairs multiply to I at size 16"


def check_km_triangles() -> tuple[bool, str]:
    X, Y = cb.km_triangles(16)
    ident = cb.identity_matrix(16)
    ok = cb.matmul(X, Y) == ident and cb.matmul(Y, X) == ident
    return ok, "X Y = Y X = I at size 16" if ok else "triangles are not inverse"


# ---------------------------------------------------------------------------
# genfunc
# ---------------------------------------------------------------------------


def check_runs_gf() -> tuple[bool, str]:
    rng = np.random.default_rng(2024)
    for _ in range(5):
        y = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        z = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        gf.runs_enumeration_gf(12, y, z)
    series = gf.runs_gf_series(8)
    for n in range(1, 9):
        if series[n] != gf.runs_polynomial(n):
            return False, "symbolic coefficient mismatch at n=%d" % n
    return True, "enumeration equals closed form for n <= 12 at 5 points and symbolically for n <= 8"


def check_q_gf() -> tuple[bool, str]:
    series = gf.q_gf_expand(8)
    for k in range(1, 9):
        for j in range(1, k + 1):
            for a in range(j + 1):
                if gf.q_from_series(series, k, j, a) != cb.q_poly_enumerate(k, j, a):
                    return False, "coefficient x^%d y^%d z^%d disagrees" % (k, j, a)
    return True, "Q expansion equals enumeration for k <= 8"


S_GF_PARAMS = [("1/4", "1/2"), ("1/5", "2/5"), ("1/3", "3/5")]


def check_s_gf() -> tuple[bool, str]:
    for a, b in S_GF_PARAMS:
        p = mv.ManovaParams(a, b)
        if gf.s_gf_from_polys(p, 10) != gf.s_gf_closed(p, 10):
            return False, "mismatch at alpha=%s beta=%s" % (a, b)
    return True, "term-by-term S equals closed form through t^10 at 3 parameter pairs"


def check_chebyshev() -> tuple[bool, str]:
    series = gf.chebyshev_gf(12)
    for n in range(13):
        coeff = series[n]
        if gf._poly_to_multi(gf.chebyshev_u(n)).subs({}, coeff.variables) != coeff:
            return False, "U_%d disagrees" % n
    return True, "recurrence equals 1/(1 - 2tx + t^2) for n <= 12"


def check_orth_identity() -> tuple[bool, str]:
    for a, b in (("1/4", "1/2"), ("1/5", "2/5")):
        rep = gf.verify_orth_identity(mv.ManovaParams(a, b), 8)
        if not rep.passed:
            return False, "fails at alpha=%s beta=%s: %r" % (a, b, rep.first_mismatch)
    return True, "S-F identity exact through order 8 at two parameter pairs"


def check_centered_polys() -> tuple[bool, str]:
    worst = 0.0
    for a, b in (("1/4", "1/2"), ("1/5", "2/5"), ("1/2", "1/2")):
        p = mv.ManovaParams(a, b)
        for k in range(1, 7):
            s = gf.s_poly(k, p)
            val = mv.conditional_expectation(p, lambda x, s=s: np.array([float(s(Fraction(v))) for v in x]))
            worst = max(worst, abs(float(val)))
        if p.alpha <= min(p.beta, 1 - p.beta):
            polys = gf.de_orth_polys(p, 6)
            for n in range(1, 7):
                f = polys[n]
                val = mv.conditional_expectation(p, lambda x, f=f: np.array([float(f(Fraction(v))) for v in x]))
                worst = max(worst, abs(float(val)))
    return worst < 1e-8, "largest |E[s_k]|, |E[f_n]| = %.2e" % worst


# ---------------------------------------------------------------------------
# manova
# ---------------------------------------------------------------------------


def check_moments_grid() -> tuple[bool, str]:
    worst = 0.0
    for a, b in MANOVA_GRID:
        p = mv.ManovaParams(a, b)
        exact = mv.moments_exact(p, 12).values
        quad = mv.moments_quadrature(p, 12).values
        worst = max(worst, max(abs(float(x) - y) for x, y in zip(exact, quad)))
    return worst < 1e-8, "max |exact - quadrature| = %.2e over 12 grid points, k <= 12" % worst


def check_moment_spots() -> tuple[bool, str]:
    for a, b in MANOVA_GRID:
        p = mv.ManovaParams(a, b)
        al, be = p.alpha, p.beta
        m = mv.moments_exact(p, 2)
        q = mv.moments_quadrature(p, 2)
        m1, m2 = al * be, al * be * (al + be - al * be)
        if m.moment(1) != m1 or m.moment(2) != m2:
            return False, "exact spot values fail at %s, %s" % (a, b)
        if abs(q.moment(1) - float(m1)) > 1e-8 or abs(q.moment(2) - float(m2)) > 1e-8:
            return False, "quadrature spot values fail at %s, %s" % (a, b)
    return True, "m1 = alpha beta and m2 = alpha beta (alpha + beta - alpha beta) on both paths"


def check_total_mass() -> tuple[bool, str]:
    worst = max(abs(mv.total_mass(mv.ManovaParams(a, b)) - 1) for a, b in MANOVA_GRID)
    return worst < 1e-9, "max |mass - 1| = %.2e" % worst


def check_swap_symmetry() -> tuple[bool, str]:
    for a, b in MANOVA_GRID:
        p = mv.ManovaParams(a, b)
        if mv.moments_exact(p, 10).values != mv.moments_exact(p.swapped(), 10).values:
            return False, "moments not symmetric at %s, %s" % (a, b)
    return True, "exact moments invariant under alpha <-> beta"


def check_folding() -> tuple[bool, str]:
    worst = 0.0
    for alpha in ("1/4", "3/10"):
        rep = mv.folding_check(alpha, 8)
        if not rep.passed:
            return False, "fails at alpha=%s (error %.2e)" % (alpha, rep.max_error)
        worst = max(worst, rep.max_error)
    return True, "conditional moments agree to %.2e for k <= 8" % worst


# ---------------------------------------------------------------------------
# necklace
# ---------------------------------------------------------------------------


def hand_built_pairs() -> list:
    """Small exact projection pairs with their parameters."""
    half = Fraction(1, 2)
    A1 = nk.as_exact_matrix([[1, 0], [0, 0]])
    B1 = nk.as_exact_matrix([[half, half], [half, half]])
    rng = np.random.default_rng(7)
    pairs = [(A1, B1, mv.ManovaParams("1/2", "1/2"))]
    for N, ra, rb, a, b in ((3, 1, 2, "1/3", "2/3"), (4, 2, 1, "1/2", "1/4"), (5, 2, 3, "2/5", "3/5"), (6, 3, 2, "1/3", "1/2")):
        A = nk.random_rational_projection(N, ra, rng)
        B = nk.random_rational_projection(N, rb, rng)
        pairs.append((A, B, mv.ManovaParams(a, b)))
    return pairs


def check_necklace_exact() -> tuple[bool, str]:
    for i, (A, B, p) in enumerate(hand_built_pairs()):
        data = nk.mixed_traces(A, B, p, 8)
        if nk.necklace_predict(data, 8) != nk.direct_traces(A, B, 8):
            return False, "exact mismatch on example %d" % i
    return True, "5 rational examples agree exactly for k <= 8"


def random_float_pairs(count: int = 50, seed: int = 11):
    """``count`` complex projection pairs with random ranks and sizes 8, 16, 64."""
    sizes = (8, 16, 64)
    for t in range(count):
        rng = trial_rng(seed, t)
        N = sizes[t % 3]
        ra, rb = (int(v) for v in rng.integers(1, N, size=2))
        A = nk.random_complex_projection(N, ra, rng)
        B = nk.random_complex_projection(N, rb, rng)
        yield A, B, mv.ManovaParams(Fraction(ra, N), Fraction(rb, N))


def check_necklace_float() -> tuple[bool, str]:
    worst = 0.0
    for A, B, p in random_float_pairs():
        pred = nk.necklace_predict(nk.mixed_traces(A, B, p, 8), 8)
        direct = nk.direct_traces(A, B, 8)
        worst = max(worst, max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(pred, direct)))
    return worst < 1e-8, "worst relative error %.2e over 50 pairs, k <= 8" % worst


def check_km_closed_form() -> tuple[bool, str]:
    rng = np.random.default_rng(5)
    for N, ra, rb, alpha in ((8, 3, 4, "3/8"), (10, 4, 5, "1/3"), (12, 5, 7, "1/4")):
        A = nk.random_rational_projection(N, ra, rng)
        B = nk.random_rational_projection(N, rb, rng)
        nk.km_deltas(nk.mixed_traces(A, B, mv.ManovaParams(alpha, "1/2"), 12), 12)
    return True, "closed form equals recursion exactly for k <= 12 on 3 rational pairs"


# ---------------------------------------------------------------------------
# weingarten
# ---------------------------------------------------------------------------


def check_weingarten_gram() -> tuple[bool, str]:
    for k in range(1, 5):
        for N in (k, k + 3, 2 * k):
            t = wg.weingarten_table(k, N)
            full = wg.gram_inverse_full(k, N)
            for images, value in full.items():
                if t(cb.Permutation(images)) != value:
                    return False, "class-reduced value differs from full inverse at k=%d N=%d" % (k, N)
    for k in (5, 6):
        for N in (k, k + 3, 2 * k):
            wg.weingarten_table(k, N)
    N = 7
    t = wg.weingarten_table(2, N)
    if t.by_shape((1, 1)) != Fraction(1, N * N - 1) or t.by_shape((2,)) != Fraction(-1, N * (N * N - 1)):
        return False, "k = 2 closed form fails"
    return True, "full Gram inverse matches for k <= 4; orthogonality re-verified for k <= 6"


def check_weingarten_bounds() -> tuple[bool, str]:
    count = 0
    for k in range(1, 6):
        n0 = wg.min_bound_dimension(k)
        for N in (n0, 2 * n0):
            for row in wg.bound_check(k, N):
                if not (row.catalan_ok and row.power_ok):
                    return False, "bound fails at k=%d N=%d shape=%s" % (k, N, row.shape)
                count += 1
    return True, "%d exact comparisons pass (k <= 5, N_min and 2 N_min)" % count


def check_cycle_sums() -> tuple[bool, str]:
    for k, x in ((3, 19), (4, 33), (5, 51)):
        for shape in cb.integer_partitions(k):
            total, bound, ok = wg.cycle_sum_check(cb.permutation_of_type(shape), x)
            if not ok:
                return False, "fails at shape %s x=%d" % (shape, x)
    return True, "every cycle type passes for k = 3, 4, 5"


def check_f_sigma() -> tuple[bool, str]:
    worst = 0.0
    for alpha in (Fraction(1, 2), Fraction(1, 4)):
        for k in range(1, 7):
            for shape in cb.integer_partitions(k):
                worst = max(worst, wg.f_sigma_ratio(cb.permutation_of_type(shape), alpha))
    return worst <= 10, "largest ratio %.3e against candidate constant 10" % worst


def check_haar_moment_mc() -> tuple[bool, str]:
    N = 4
    pattern = wg.IndexPattern((0, 0), (0, 0), (0, 0), (0, 0))
    exact = wg.joint_moment(pattern, N)
    mean, se = wg.joint_moment_mc(pattern, N, 200000, 17)
    z = abs(mean - float(exact)) / se
    return z <= 3, "E|U11|^4 = %s, Monte Carlo %.5f (%.2f standard errors)" % (exact, mean.real, z)


def check_hat_trace_mc() -> tuple[bool, str]:
    exact = wg.hat_trace_expectation(2, 8, Fraction(1, 2), Fraction(1, 2))
    mean, se = wg.hat_trace_mc(2, 8, 0.5, 0.5, 200000, 23)
    z = abs(mean - float(exact)) / se
    return z <= 5, "exact %s, Monte Carlo %.4f (%.2f standard errors)" % (exact, mean, z)


Check = tuple[str, Callable[[], tuple[bool, str]]]

SUITES: dict[str, list[Check]] = {
    "combinatorics": [
        ("q-sum closed form", check_q_sum),
        ("q-polynomial composition DP", check_q_dp),
        ("Stirling falling-factorial expansion", check_stirling_falling),
        ("Stirling recurrences", check_stirling_recurrences),
        ("partition power-sum bound", check_partition_sum_bound),
        ("no-singleton Stirling bounds", check_no_singleton_bounds),
        ("Riordan parameter products", check_riordan),
        ("Lucas/binomial triangle inverse pair", check_km_triangles),
    ],
    "genfunc": [
        ("cyclic runs generating function", check_runs_gf),
        ("q-polynomial generating function", check_q_gf),
        ("s-polynomial generating function", check_s_gf),
        ("Chebyshev generating function", check_chebyshev),
        ("orthogonal polynomial expansion identity", check_orth_identity),
        ("centered polynomial expectations", check_centered_polys),
    ],
    "manova": [
        ("moment recursion vs quadrature", check_moments_grid),
        ("low-order moment formulas", check_moment_spots),
        ("total mass", check_total_mass),
        ("parameter swap symmetry", check_swap_symmetry),
        ("folding of conditional moments", check_folding),
    ],
    "necklace": [
        ("necklace expansion (exact)", check_necklace_exact),
        ("necklace expansion (float)", check_necklace_float),
        ("Kesten-McKay error closed form", check_km_closed_form),
    ],
    "weingarten": [
        ("Weingarten function by Gram inversion", check_weingarten_gram),
        ("Weingarten Catalan bounds", check_weingarten_bounds),
        ("cycle distance sum bound", check_cycle_sums),
        ("centered index-sum growth", check_f_sigma),
        ("Haar fourth moment", check_haar_moment_mc),
        ("centered trace expectation", check_hat_trace_mc),
    ],
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    """Run one suite (or ``"all"``) and collect results in order."""
    if name not in SUITES and name != "all":
        raise KeyError(name)
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        for claim, fn in SUITES[suite]:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crashing check is a failed check
                passed, detail = False, "%s: %s" % (type(exc).__name__, exc)
            res = CheckResult(suite, claim, bool(passed), detail, round(time.perf_counter() - start, 3))
            results.append(res)
            if progress:
                progress(res)
    return results
