"""Unitary Weingarten calculus at small order.

``W_N`` on ``S_k`` is obtained from the orthogonality relation
``sum_tau W(sigma tau^-1) N^#cyc(tau) = [sigma = id]``.  With it, every
polynomial moment of the entries of a Haar unitary is a finite sum over pairs
of permutations.  The module also carries exact checks of the standard
non-asymptotic bounds used when such sums are controlled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _perms
from typing import Sequence

import numpy as np

from .algebra import QuadraticSurd
from .combinatorics import (
    Permutation,
    all_permutations,
    coarsenings,
    double_factorial,
    falling_factorial,
    integer_partitions,
    permutation_of_type,
)
from .ensembles import haar_unitaries

__all__ = [
    "WeingartenTable",
    "weingarten_table",
    "gram_inverse_full",
    "IndexPattern",
    "joint_moment",
    "joint_moment_mc",
    "bound_check",
    "min_bound_dimension",
    "f_alpha_exact",
    "f_sigma_ratio",
    "cycle_sum_check",
    "hat_trace_expectation",
    "hat_trace_mc",
    "hat_trace_growth",
    "cycle_counts",
]

MAX_ORDER = 7


# ---------------------------------------------------------------------------
# vectorized permutation helpers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _group(k: int):
    """All of ``S_k`` as an int array, with inverses, cycle counts and class ids."""
    perms = np.array(list(_perms(range(k))), dtype=np.int8).reshape(-1, k)
    inv = np.argsort(perms, axis=1).astype(np.int8)
    shapes = list(integer_partitions(k))
    shape_index = {s: i for i, s in enumerate(shapes)}
    classes = np.array([shape_index[Permutation(p).cycle_type()] for p in perms], dtype=np.int64)
    index = {tuple(p): i for i, p in enumerate(perms.tolist())}
    return perms, inv, cycle_counts(perms), classes, shapes, index


def cycle_counts(perms: np.ndarray) -> np.ndarray:
    """Number of cycles of each row of ``perms`` (shape ``(..., k)``)."""
    k = perms.shape[-1]
    ids = np.broadcast_to(np.arange(k), perms.shape)
    cur = ids.copy()
    low = ids.copy()
    for _ in range(k - 1):
        cur = np.take_along_axis(perms, cur, axis=-1)
        low = np.minimum(low, cur)
    return np.sum(low == ids, axis=-1)


# ---------------------------------------------------------------------------
# Weingarten function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeingartenTable:
    """``W_N`` on ``S_k`` stored per cycle type (non-increasing tuples)."""

    k: int
    N: int
    values: dict = field(hash=False)

    def __call__(self, sigma: Permutation) -> Fraction:
        return self.values[sigma.cycle_type()]

    def by_shape(self, shape: Sequence[int]) -> Fraction:
        return self.values[tuple(sorted(shape, reverse=True))]


def _solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(M)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


def _count_tables(k: int, sigmas: np.ndarray) -> np.ndarray:
    """``cnt[s, mu, c] = #{rho in class mu : #cyc(rho^-1 sigma_s) = c}``."""
    perms, inv, _, classes, shapes, _ = _group(k)
    prod = inv[:, sigmas]  # prod[r, s, x] = rho_r^-1(sigma_s(x))
    cyc = cycle_counts(prod)  # (R, S)
    cnt = np.zeros((sigmas.shape[0], len(shapes), k + 1), dtype=np.int64)
    for mu in range(len(shapes)):
        rows = cyc[classes == mu]
        for c in range(1, k + 1):
            cnt[:, mu, c] = np.sum(rows == c, axis=0)
    return cnt


@lru_cache(maxsize=64)
def weingarten_table(k: int, N: int) -> WeingartenTable:
    """Exact ``W_N`` on ``S_k`` for ``1 <= k <= 7`` and ``N >= k``.

    The orthogonality system is solved on class functions, then the solution
    is substituted back into the relation for every ``sigma`` in ``S_k``
    (``k <= 6``; class representatives for ``k = 7``, which is equivalent
    because the left side is conjugation invariant).  Since the full Gram
    matrix is invertible for ``N >= k``, this certifies that the unique
    solution is a class function.

    Examples
    --------
    >>> weingarten_table(2, 4).values
    {(2,): Fraction(-1, 60), (1, 1): Fraction(1, 15)}
    """
    if not 1 <= k <= MAX_ORDER:
        raise ValueError("order k must lie in [1, %d] (size cap)" % MAX_ORDER)
    if N < k:
        raise ValueError("Gram matrix may be singular below order: need N >= k = %d" % k)
    perms, _, _, classes, shapes, index = _group(k)
    reps = np.array([index[permutation_of_type(s).images] for s in shapes])
    powers = [Fraction(N) ** c for c in range(k + 1)]
    cnt = _count_tables(k, perms[reps])
    system = [[sum(int(cnt[s, mu, c]) * powers[c] for c in range(k + 1)) for mu in range(len(shapes))] for s in range(len(shapes))]
    rhs = [Fraction(int(s == (1,) * k)) for s in shapes]
    w = _solve_exact(system, rhs)
    values = dict(zip(shapes, w))

    check = perms if k <= 6 else perms[reps]
    full = _count_tables(k, check)
    ident = tuple(range(k))
    for s in range(check.shape[0]):
        total = sum(
            (w[mu] * sum(int(full[s, mu, c]) * powers[c] for c in range(k + 1)) for mu in range(len(shapes))),
            Fraction(0),
        )
        expected = 1 if tuple(check[s].tolist()) == ident else 0
        if total != expected:
            raise AssertionError("orthogonality relation fails at sigma=%r" % (check[s].tolist(),))
    return WeingartenTable(k, N, values)


def gram_inverse_full(k: int, N: int) -> dict[tuple, Fraction]:
    """``W`` from a literal exact inversion of the ``k! x k!`` Gram matrix.

    Returns ``{images: W(sigma)}``; intended for ``k <= 4`` as an oracle.
    """
    if k > 4:
        raise ValueError("full Gram inversion is limited to k <= 4")
    perms = [p for p in all_permutations(k)]
    G = [[Fraction(N) ** (s * t.inverse()).num_cycles() for t in perms] for s in perms]
    ident = Permutation.identity(k)
    # column of G^-1 at the identity: W(sigma) = (G^-1)[sigma, id]
    col = _solve_exact(G, [Fraction(int(p == ident)) for p in perms])
    return {p.images: v for p, v in zip(perms, col)}


# ---------------------------------------------------------------------------
# joint moments of Haar entries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexPattern:
    """Row/column indices of ``E[U_{i1 j1}..U_{ik jk} conj(U_{i'1 j'1})..]``."""

    i: tuple
    j: tuple
    i_conj: tuple
    j_conj: tuple

    def __post_init__(self):
        for name in ("i", "j", "i_conj", "j_conj"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        if len(self.i) != len(self.j) or len(self.i_conj) != len(self.j_conj):
            raise ValueError("row and column tuples must have equal length")


def _matching(src: tuple, dst: tuple) -> list[int]:
    """Indices (into ``_group``) of sigma with ``src[sigma(t)] = dst[t]``."""
    k = len(src)
    perms = _group(k)[0]
    s = np.asarray(src)[perms]
    return list(np.nonzero(np.all(s == np.asarray(dst)[None, :], axis=1))[0])


def joint_moment(pattern: IndexPattern, N: int) -> Fraction:
    """Exact joint moment of Haar entries via the Weingarten function.

    Patterns with a different number of plain and conjugated factors vanish
    by phase invariance and return 0 without consulting the table.
    """
    k = len(pattern.i)
    if k != len(pattern.i_conj):
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    table = weingarten_table(k, N)
    perms, inv, _, classes, shapes, _ = _group(k)
    sig = _matching(pattern.i, pattern.i_conj)
    tau = _matching(pattern.j, pattern.j_conj)
    if not sig or not tau:
        return Fraction(0)
    prod = perms[sig][:, inv[tau]]  # sigma o tau^-1
    values = [table.values[s] for s in shapes]
    total = Fraction(0)
    lookup = _group(k)[5]
    for row in prod.reshape(-1, k).tolist():
        total += values[classes[lookup[tuple(row)]]]
    return total


def joint_moment_mc(pattern: IndexPattern, N: int, samples: int, seed, batch: int = 20000) -> tuple[complex, float]:
    """Monte Carlo mean and standard error of the same joint moment."""
    rng = np.random.default_rng(seed)
    vals = []
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        U = haar_unitaries(N, m, rng)
        prod = np.ones(m, dtype=complex)
        for a, b in zip(pattern.i, pattern.j):
            prod *= U[:, a, b]
        for a, b in zip(pattern.i_conj, pattern.j_conj):
            prod *= np.conj(U[:, a, b])
        vals.append(prod)
        done += m
    v = np.concatenate(vals)
    se = math.sqrt((np.var(v.real) + np.var(v.imag)) / len(v))
    return complex(np.mean(v)), se


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def min_bound_dimension(k: int) -> int:
    """Smallest integer ``N`` with ``N > sqrt(6) k^(7/4)``, i.e. ``N^4 > 36 k^7``."""
    N = 1
    while N**4 <= 36 * k**7:
        N += 1
    return N


def _le_with_root(L: Fraction, R: Fraction, coeff: Fraction, k: int) -> bool:
    """Decide ``L (1 - coeff sqrt(k)) <= R`` exactly, for ``L, coeff >= 0``."""
    lhs = L - R
    if lhs <= 0:
        return True
    return lhs * lhs <= (L * coeff) ** 2 * k


@dataclass(frozen=True)
class BoundRow:
    shape: tuple
    value: Fraction
    catalan_bound: float
    power_bound: float
    catalan_ok: bool
    power_ok: bool


def bound_check(k: int, N: int) -> list[BoundRow]:
    """Compare ``|W_N|`` with both Catalan-type bounds, for every cycle type.

    The prefactor ``1 / (1 - 6 k^(7/2) / N^2)`` contains ``sqrt(k)``; the
    inequalities are decided exactly after isolating and squaring it.
    """
    if N**4 <= 36 * k**7:
        raise ValueError("bound needs N > sqrt(6) k^(7/4); smallest admissible N is %d" % min_bound_dimension(k))
    table = weingarten_table(k, N)
    coeff = Fraction(6 * k**3, N * N)
    pref = 1 / (1 - 6 * k**3.5 / N**2)
    rows = []
    for shape, w in table.values.items():
        weight = k - len(shape)
        cat = Fraction(math.prod(catalan(c - 1) for c in shape), N ** (k + weight))
        pw = Fraction(4**weight, N ** (k + weight))
        L = abs(w)
        rows.append(
            BoundRow(shape, w, pref * float(cat), pref * float(pw), _le_with_root(L, cat, coeff, k), _le_with_root(L, pw, coeff, k))
        )
    return rows


# ---------------------------------------------------------------------------
# centred Bernoulli sums
# ---------------------------------------------------------------------------


def _central_moment_rational(alpha: Fraction, ell: int) -> Fraction:
    """``E[(a - alpha)^ell]`` for ``a ~ Ber(alpha)``."""
    return alpha * (1 - alpha) ** ell + (1 - alpha) * (-alpha) ** ell


@lru_cache(maxsize=4096)
def _f_rational(shape: tuple, N: int, alpha: Fraction) -> Fraction:
    """``sum over i constant on cycles of E[prod (a_i - alpha)]``.

    Grouping indices by equal values gives a sum over coarsenings ``rho`` of
    the cycle partition, with ``N`` falling ``|rho|`` distinct value choices.
    """
    pi = permutation_of_type(shape).cycle_partition()
    total = Fraction(0)
    for rho in coarsenings(pi):
        term = Fraction(falling_factorial(N, len(rho)))
        for block in rho.blocks:
            term *= _central_moment_rational(alpha, len(block))
            if term == 0:
                break
        total += term
    return total


def _inverse_sqrt_power(d: Fraction, k: int):
    """``d^(-k/2)`` as an exact number."""
    if k % 2 == 0:
        return Fraction(1) / d ** (k // 2)
    return QuadraticSurd(0, Fraction(1) / d ** ((k + 1) // 2), d)


def f_alpha_exact(sigma: Permutation, N: int, alpha) -> QuadraticSurd | Fraction:
    """Signed ``sum over i compatible with sigma of E[a^_{i_1} .. a^_{i_k}]``.

    ``a^ = (a - alpha) / sqrt(alpha(1-alpha))``; the value is rational for
    even ``k`` and a rational multiple of ``sqrt(alpha(1-alpha))`` otherwise.
    """
    alpha = Fraction(alpha)
    k = sigma.n
    if k > 8:
        raise ValueError("k must be at most 8")
    raw = _f_rational(sigma.cycle_type(), N, alpha)
    return raw * _inverse_sqrt_power(alpha * (1 - alpha), k)


def f_sigma_ratio(sigma: Permutation, alpha, N: int | None = None) -> float:
    """``|f_alpha(sigma)|`` divided by the reference growth
    ``k e^(k^(3/4)) w^(-sum_{a>=3}(a-2)|cyc_a|) |cyc_1|!! N^(|cyc_1|/2 + |cyc_>=2|)``.

    ``N`` defaults to ``ceil(16 k^4 / w^2)`` with ``w^2 = alpha(1-alpha)``.
    """
    alpha = Fraction(alpha)
    k = sigma.n
    w2 = alpha * (1 - alpha)
    if N is None:
        N = math.ceil(Fraction(16 * k**4) / w2)
    shape = sigma.cycle_type()
    ones = shape.count(1)
    longer = len(shape) - ones
    excess = sum(a - 2 for a in shape if a >= 3)
    f = abs(float(f_alpha_exact(sigma, N, alpha)))
    log_ref = (
        math.log(k) + k**0.75 - excess * 0.5 * math.log(float(w2))
        + math.log(double_factorial(ones)) + (ones / 2 + longer) * math.log(N)
    )
    return f / math.exp(log_ref) if f else 0.0


def cycle_sum_check(sigma: Permutation, x) -> tuple[Fraction, Fraction, bool]:
    """``sum over k-cycles rho of x^(-|sigma rho^-1|)`` against
    ``2 (k-1)! / (k-m+1)! k^m x^(1-m)`` with ``m = #cyc(sigma)``.
    """
    x = Fraction(x)
    k = sigma.n
    if k > MAX_ORDER:
        raise ValueError("k must be at most %d" % MAX_ORDER)
    if x <= 2 * k * k:
        raise ValueError("need x > 2 k^2 = %d" % (2 * k * k))
    perms, inv, cyc, _, _, _ = _group(k)
    long_cycles = inv[cyc == 1]  # rho^-1 for every k-cycle rho
    prod = np.asarray(sigma.images, dtype=np.int8)[long_cycles]
    weights = k - cycle_counts(prod)
    total = sum((x ** (-int(d)) for d in weights), Fraction(0))
    m = sigma.num_cycles()
    bound = Fraction(2 * math.factorial(k - 1), math.factorial(k - m + 1)) * k**m * x ** (1 - m)
    return total, bound, total <= bound


# ---------------------------------------------------------------------------
# centred trace of the invariant model
# ---------------------------------------------------------------------------


def hat_trace_expectation(k: int, N: int, alpha, beta):
    """Exact ``E Tr(A^ U D^ U*)^k`` for independent Bernoulli diagonals and
    Haar ``U``, where ``A^ = (A - alpha I)/sqrt(alpha(1-alpha))`` and ``D^`` is
    the analogue for ``beta``.

    Expands as ``sum_{sigma,tau} W(sigma c tau^-1) f_alpha(sigma) f_beta(tau)``
    with ``c`` the cyclic shift.  Odd ``k`` gives a rational multiple of
    ``sqrt(alpha(1-alpha)beta(1-beta))``.
    """
    if not 1 <= k <= 5:
        raise ValueError("k must lie in [1, 5]")
    if N < k:
        raise ValueError("need N >= k")
    alpha, beta = Fraction(alpha), Fraction(beta)
    table = weingarten_table(k, N)
    perms, inv, _, classes, shapes, index = _group(k)
    fa = [_f_rational(s, N, alpha) for s in shapes]
    fb = [_f_rational(s, N, beta) for s in shapes]
    shift = np.array([(t + 1) % k for t in range(k)], dtype=np.int8)
    sc = perms[:, shift]  # sigma o c
    prod = sc[:, inv]  # prod[s, t] = (sigma c)(tau^-1 (x))
    flat = prod.reshape(-1, k)
    cls = classes[[index[tuple(r)] for r in flat.tolist()]].reshape(len(perms), len(perms))
    wv = [table.values[s] for s in shapes]
    total = Fraction(0)
    ca, cb = classes[:, None], classes[None, :]
    # accumulate integer multiplicities per (class of product, class sigma, class tau)
    counts: dict[tuple[int, int, int], int] = {}
    for key in zip(cls.ravel().tolist(), np.broadcast_to(ca, cls.shape).ravel().tolist(), np.broadcast_to(cb, cls.shape).ravel().tolist()):
        counts[key] = counts.get(key, 0) + 1
    for (p, a, b), n in counts.items():
        if fa[a] and fb[b]:
            total += n * wv[p] * fa[a] * fb[b]
    return total * _inverse_sqrt_power(alpha * (1 - alpha) * beta * (1 - beta), k)


def hat_trace_mc(k: int, N: int, alpha, beta, samples: int, seed, batch: int = 20000) -> tuple[float, float]:
    """Monte Carlo mean and standard error of ``Tr(A^ U D^ U*)^k``."""
    rng = np.random.default_rng(seed)
    a, b = float(alpha), float(beta)
    wa, wb = math.sqrt(a * (1 - a)), math.sqrt(b * (1 - b))
    vals = []
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        U = haar_unitaries(N, m, rng)
        Ad = ((rng.random((m, N)) < a) - a) / wa
        Dd = ((rng.random((m, N)) < b) - b) / wb
        M = Ad[:, :, None] * (U * Dd[:, None, :]) @ np.conj(np.swapaxes(U, 1, 2))
        P = M
        for _ in range(k - 1):
            P = P @ M
        vals.append(np.real(np.trace(P, axis1=1, axis2=2)))
        done += m
    v = np.concatenate(vals)
    return float(np.mean(v)), float(np.std(v) / math.sqrt(len(v)))


def hat_trace_growth(N: int = 32, alpha=Fraction(1, 2), beta=Fraction(1, 2), k_max: int = 5, C: float = 10.0) -> list[dict]:
    """Exact ``|E Tr(A^ U D^ U*)^k|`` against ``C exp(4 k^(3/4))`` for ``k <= k_max``.

    The constant ``C`` is observational; rows are reported, not asserted.
    """
    rows = []
    for k in range(1, k_max + 1):
        value = abs(float(hat_trace_expectation(k, N, alpha, beta)))
        reference = C * math.exp(4 * k**0.75)
        rows.append({"k": k, "value": value, "reference": reference, "within": value <= reference})
    return rows
