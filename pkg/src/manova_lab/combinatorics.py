"""Permutations, set partitions and the integer sequences built on them.

Permutations and set partitions act on ``{0, ..., n-1}``.  Subsets passed to
:func:`induced_partition` are 1-based, matching the usual ``[k] = {1..k}``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations as _itertools_permutations
from typing import Iterable, Iterator, Sequence

from .algebra import Polynomial, TruncatedSeries

PERMUTATION_ENUMERATION_CAP = 8


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


class Permutation:
    """A bijection of ``{0, ..., n-1}`` given by its images.

    Composition follows function notation: ``(s * t)(x) == s(t(x))``.
    """

    __slots__ = ("images", "_cycles")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images %r are not a permutation of 0..n-1" % (images,))
        self.images = images
        self._cycles = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @classmethod
    def long_cycle(cls, n: int) -> "Permutation":
        """The cyclic shift ``x -> x + 1 mod n``."""
        return cls([(i + 1) % n for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("permutations act on different sets")
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        if self._cycles is None:
            seen = [False] * self.n
            out = []
            for start in range(self.n):
                if seen[start]:
                    continue
                cyc = []
                x = start
                while not seen[x]:
                    seen[x] = True
                    cyc.append(x)
                    x = self.images[x]
                out.append(tuple(cyc))
            self._cycles = tuple(out)
        return self._cycles

    def num_cycles(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order (an integer partition of n)."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def cycle_partition(self) -> "SetPartition":
        return SetPartition(self.cycles())

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (list(self.images),)


def cayley_weight(sigma: Permutation) -> int:
    """Minimum number of transpositions whose product is ``sigma``."""
    return sigma.n - sigma.num_cycles()


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every element of ``S_n`` (refused above the enumeration cap)."""
    if n > PERMUTATION_ENUMERATION_CAP:
        raise ValueError("permutation enumeration is capped at n <= %d" % PERMUTATION_ENUMERATION_CAP)
    for p in _itertools_permutations(range(n)):
        yield Permutation(p)


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def permutation_of_type(shape: Sequence[int]) -> Permutation:
    """A representative permutation with the given cycle type."""
    n = sum(shape)
    cycles, start = [], 0
    for length in shape:
        cycles.append(list(range(start, start + length)))
        start += length
    return Permutation.from_cycles(n, cycles)


def class_size(shape: Sequence[int]) -> int:
    """Number of permutations with cycle type ``shape``."""
    n = sum(shape)
    denom = 1
    for length in set(shape):
        m = list(shape).count(length)
        denom *= length**m * math.factorial(m)
    return math.factorial(n) // denom


# ---------------------------------------------------------------------------
# set partitions
# ---------------------------------------------------------------------------


class SetPartition:
    """A partition of ``{0, ..., n-1}`` into non-empty blocks."""

    __slots__ = ("blocks", "n")

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        blocks = [frozenset(b) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("blocks must be non-empty")
        union = set().union(*blocks) if blocks else set()
        if sum(len(b) for b in blocks) != len(union):
            raise ValueError("blocks overlap")
        if n is None:
            n = len(union)
        if union != set(range(n)):
            raise ValueError("blocks do not cover 0..%d" % (n - 1))
        self.blocks = frozenset(blocks)
        self.n = n

    def __len__(self):
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def is_coarser_than(self, other: "SetPartition") -> bool:
        """True when every block of ``other`` lies inside a block of ``self``."""
        if self.n != other.n:
            return False
        return all(any(b <= c for c in self.blocks) for b in other.blocks)

    __ge__ = is_coarser_than

    def __le__(self, other):
        return other.is_coarser_than(self)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and (self.n, self.blocks) == (other.n, other.blocks)

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return "SetPartition(%r)" % (sorted(sorted(b) for b in self.blocks),)


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """Block labels ``a`` with ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])``."""
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield list(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def set_partitions(n: int) -> Iterator[SetPartition]:
    for labels in restricted_growth_strings(n):
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(labels):
            blocks.setdefault(b, []).append(i)
        yield SetPartition(blocks.values(), n)


def coarsenings(pi: SetPartition) -> Iterator[SetPartition]:
    """Every partition coarser than or equal to ``pi``."""
    blocks = sorted(pi.blocks, key=min)
    for merged in set_partitions(len(blocks)):
        yield SetPartition(
            (frozenset().union(*(blocks[i] for i in group)) for group in merged.blocks), pi.n
        )


# ---------------------------------------------------------------------------
# induced partitions and q-polynomials
# ---------------------------------------------------------------------------


def induced_partition(S: Iterable[int], k: int) -> tuple[int, ...]:
    """Cyclic gaps of a non-empty ``S`` inside ``{1..k}``.

    With ``S = {s_1 < ... < s_j}`` the parts are ``s_{i+1} - s_i`` followed by
    the wrap-around gap ``k + s_1 - s_j``.
    """
    s = sorted(set(S))
    if not s:
        raise ValueError("induced partition is undefined for empty set")
    if s[0] < 1 or s[-1] > k:
        raise ValueError("S must be a subset of {1..%d}" % k)
    return tuple(b - a for a, b in zip(s, s[1:])) + (k + s[0] - s[-1],)


@lru_cache(maxsize=None)
def _cd(p: int) -> tuple[Polynomial, Polynomial]:
    """``c_p(x) = sum_b (-1)^(p-1-b) x^b`` and ``d_p = c_p + (-1)^p``."""
    c = Polynomial([(-1) ** (p - 1 - b) for b in range(p)])
    return c, c + (-1) ** p


def _check_qparams(k: int, j: int, a: int) -> None:
    if k < 1 or not (0 <= a <= j <= k):
        raise ValueError("q_{k,j,a} needs 0 <= a <= j <= k and k >= 1, got (%d, %d, %d)" % (k, j, a))


def q_poly_enumerate(k: int, j: int, a: int) -> Polynomial:
    """``q_{k,j,a}`` straight from its definition (sum over S and A).

    Costs ``C(k,j) C(j,a)`` products; intended as an oracle for small ``k``.
    """
    _check_qparams(k, j, a)
    total = Polynomial()
    if j == 0:
        return total
    for S in combinations(range(1, k + 1), j):
        parts = induced_partition(S, k)
        for A in combinations(range(j), a):
            chosen = set(A)
            term = Polynomial([1])
            for i, p in enumerate(parts):
                c, d = _cd(p)
                term = term * (c if i in chosen else d)
            total = total + term
    return total


@lru_cache(maxsize=None)
def q_table(k: int) -> dict[tuple[int, int], Polynomial]:
    """All ``q_{k,j,a}`` for fixed ``k`` as ``{(j, a): Polynomial}``.

    A set ``S`` of size ``j`` is a cyclic composition ``p`` of ``k`` together
    with a starting point ``s_1``; there are exactly ``p_j`` admissible starts.
    Summing over ``A`` turns the inner product into the ``z^a`` coefficient of
    ``prod_i (z c_{p_i} + d_{p_i})``, so a composition DP gives every entry
    in ``O(k^3)`` polynomial operations.
    """
    if k < 1:
        raise ValueError("k must be positive")
    # factor[m] is z*c_m + d_m, stored as a polynomial in z over Z[x]
    factor = [None] + [Polynomial([_cd(m)[1], _cd(m)[0]]) for m in range(1, k + 1)]
    # P[j][n]: sum over compositions of n into j parts of prod factor
    P = [[Polynomial() for _ in range(k + 1)] for _ in range(k + 1)]
    P[0][0] = Polynomial([Polynomial([1])])
    for j in range(1, k + 1):
        for n in range(j, k + 1):
            acc = Polynomial()
            for m in range(1, n - j + 2):
                prev = P[j - 1][n - m]
                if prev.coefficients:
                    acc = acc + factor[m] * prev
            P[j][n] = acc
    table = {(0, 0): Polynomial()}
    for j in range(1, k + 1):
        acc = Polynomial()
        for m in range(1, k - j + 2):
            prev = P[j - 1][k - m]
            if prev.coefficients:
                acc = acc + factor[m] * prev * m
        zc = acc.coefficients
        for a in range(j + 1):
            c = zc[a] if a < len(zc) else 0
            table[(j, a)] = c if isinstance(c, Polynomial) else Polynomial([c])
    return table


def q_poly(k: int, j: int, a: int) -> Polynomial:
    """The integer polynomial ``q_{k,j,a}(x)``.

    Examples
    --------
    >>> q_poly(2, 1, 0)
    Polynomial([0, 2])
    """
    _check_qparams(k, j, a)
    return q_table(k)[(j, a)]


@lru_cache(maxsize=4096)
def q_values(k: int, x: Fraction) -> dict[tuple[int, int], Fraction]:
    """``q_{k,j,a}(x)`` for all ``(j, a)`` at a rational point, cached."""
    x = Fraction(x)
    return {key: p(x) for key, p in q_table(k).items()}


# ---------------------------------------------------------------------------
# Lucas triangle and the alternating q-sum
# ---------------------------------------------------------------------------


def lucas_T(n: int, j: int) -> int:
    """Modified Lucas triangle ``T(n,j) = C(n-1,j) + 2 C(n-1,j-1)``, ``T(0,0) = 1``."""
    if n < 0 or j < 0 or j > n:
        raise ValueError("need 0 <= j <= n, got n=%d, j=%d" % (n, j))
    if n == 0:
        return 1
    return math.comb(n - 1, j) + (2 * math.comb(n - 1, j - 1) if j >= 1 else 0)


def q_sum_km_closed(k: int, a: int, alpha) -> Fraction:
    """Closed form of ``sum_j (-alpha)^(k-j) q_{k,j,a}(1)``."""
    alpha = Fraction(alpha)
    if (k - a) % 2:
        return Fraction(0)
    h = (k - a) // 2
    base = lucas_T((k + a) // 2, h) * (alpha * (alpha - 1)) ** h
    return base - 2 * alpha**k if a == 0 else base


def q_sum_km(k: int, a: int, alpha) -> Fraction:
    """Direct sum ``sum_{j=1}^k (-alpha)^(k-j) q_{k,j,a}(1)``.

    The result is checked against :func:`q_sum_km_closed` before returning.
    """
    if k < 1 or not 0 <= a <= k:
        raise ValueError("need k >= 1 and 0 <= a <= k")
    alpha = Fraction(alpha)
    vals = q_values(k, Fraction(1))
    total = sum(((-alpha) ** (k - j) * vals[(j, a)] for j in range(max(a, 1), k + 1)), Fraction(0))
    closed = q_sum_km_closed(k, a, alpha)
    if total != closed:
        raise AssertionError("q-sum mismatch at k=%d, a=%d: %s != %s" % (k, a, total, closed))
    return total


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _enumerate_stirling(kind: str, r: int, n: int) -> tuple[int, ...]:
    """Counts by number of parts, from set-partition enumeration.

    Each block of size ``b`` carries ``(b-1)!`` cyclic orders for the first
    kind, so permutations are counted without listing ``S_n``.
    """
    counts = [0] * (n + 1)
    for pi in set_partitions(n):
        sizes = pi.block_sizes()
        if sizes and min(sizes) < r + 1:
            continue
        weight = 1
        if kind == "first":
            for b in sizes:
                weight *= math.factorial(b - 1)
        counts[len(sizes)] += weight
    return tuple(counts)


@lru_cache(maxsize=None)
def _stirling_rec(kind: str, r: int, n: int, k: int) -> int:
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0:
        return 0
    if r == 0:
        if kind == "first":
            return _stirling_rec(kind, 0, n - 1, k - 1) + (n - 1) * _stirling_rec(kind, 0, n - 1, k)
        return _stirling_rec(kind, 0, n - 1, k - 1) + k * _stirling_rec(kind, 0, n - 1, k)
    # r == 1: the element n sits in a block (cycle) of size two with one of
    # n-1 partners, or joins an existing block of size >= 2
    if kind == "first":
        return (n - 1) * (_stirling_rec(kind, 1, n - 1, k) + _stirling_rec(kind, 1, n - 2, k - 1))
    return k * _stirling_rec(kind, 1, n - 1, k) + (n - 1) * _stirling_rec(kind, 1, n - 2, k - 1)


STIRLING_ENUMERATION_CAP = 10


def stirling(kind: str, associated_r: int, n: int, k: int, method: str = "auto") -> int:
    """Ordinary (``r = 0``) or associated (``r = 1``) Stirling numbers.

    ``kind="first"`` counts permutations of ``n`` points with ``k`` cycles,
    ``kind="second"`` counts set partitions with ``k`` blocks; with ``r = 1``
    every cycle/block must have length at least 2.

    ``method`` is ``"enumerate"``, ``"recurrence"`` or ``"auto"`` (enumerate for
    ``n <= 10``).
    """
    if kind not in ("first", "second") or associated_r not in (0, 1):
        raise ValueError("kind must be 'first'/'second' and associated_r 0 or 1")
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if method == "auto":
        method = "enumerate" if n <= STIRLING_ENUMERATION_CAP else "recurrence"
    if method == "enumerate":
        counts = _enumerate_stirling(kind, associated_r, n)
        return counts[k] if k <= n else 0
    return _stirling_rec(kind, associated_r, n, k)


def falling_factorial(x, k: int):
    out = 1
    for i in range(k):
        out *= x - i
    return out


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def partition_power_sum(n: int, x, min_block: int = 1) -> Fraction:
    """Exact ``sum over partitions of [n] (blocks >= min_block) of x^(#blocks)``."""
    x = Fraction(x)
    r = min_block - 1
    return sum((stirling("second", r, n, k) * x**k for k in range(n + 1)), Fraction(0))


def permutation_cycle_sum(n: int, x, min_cycle: int = 1) -> Fraction:
    """Exact ``sum over permutations of [n] (cycles >= min_cycle) of x^(#cycles)``."""
    x = Fraction(x)
    r = min_cycle - 1
    return sum((stirling("first", r, n, k) * x**k for k in range(n + 1)), Fraction(0))


def exp_lower_bound(y: Fraction, terms: int = 40) -> Fraction:
    """A rational lower bound for ``exp(y)``, ``y >= 0`` (Taylor partial sum)."""
    y = Fraction(y)
    if y < 0:
        raise ValueError("y must be non-negative")
    total, term = Fraction(0), Fraction(1)
    for i in range(terms):
        total += term
        term = term * y / (i + 1)
    return total


def partition_sum_bound_check(ell: int, x) -> tuple[Fraction, Fraction, bool]:
    """Compare ``sum_pi x^|pi|`` with ``exp(ell^2/x) x^ell`` for ``x >= 2 ell``.

    Returns ``(lhs, rational lower bound of rhs, lhs <= that bound)``.
    """
    x = Fraction(x)
    if x < 2 * ell:
        raise ValueError("bound needs x >= 2*ell")
    lhs = partition_power_sum(ell, x, 1)
    rhs = exp_lower_bound(Fraction(ell * ell) / x) * x**ell
    return lhs, rhs, lhs <= rhs


def no_singleton_bound_check(ell: int, which: str = "permutations", x=None) -> tuple[Fraction, float, bool]:
    """Check the ``exp(ell^(3/4)) ell!! x^(ell/2)`` bound for sums without
    fixed points (``which="permutations"``) or singleton blocks
    (``which="partitions"``).

    ``x`` defaults to ``ceil(16 ell^(3/2))``.  The right side is a float
    shrunk by ``1 - 1e-9`` before the exact comparison.
    """
    if x is None:
        x = math.isqrt(256 * ell**3)
        if x * x < 256 * ell**3:
            x += 1
    x = Fraction(x)
    if x * x < 256 * ell**3:
        raise ValueError("bound needs x >= 16*ell^(3/2)")
    if which == "permutations":
        lhs = permutation_cycle_sum(ell, x, 2)
    elif which == "partitions":
        lhs = partition_power_sum(ell, x, 2)
    else:
        raise ValueError("which must be 'permutations' or 'partitions'")
    rhs = math.exp(ell**0.75) * double_factorial(ell) * float(x) ** (ell / 2)
    return lhs, rhs, lhs <= Fraction(rhs * (1 - 1e-9))


# ---------------------------------------------------------------------------
# Riordan arrays
# ---------------------------------------------------------------------------


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


class RiordanArray:
    """Lower-triangular array whose column ``k`` has generating function ``g f^k``."""

    __slots__ = ("g", "f", "size", "entries")

    def __init__(self, g: TruncatedSeries, f: TruncatedSeries, size: int, entries):
        self.g, self.f, self.size = g, f, size
        self.entries = tuple(tuple(row) for row in entries)

    def __eq__(self, other):
        return isinstance(other, RiordanArray) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __getitem__(self, idx):
        n, k = idx
        return self.entries[n][k]

    def rows(self) -> list[list[Fraction]]:
        """Rows trimmed to the lower triangle."""
        return [list(self.entries[n][: n + 1]) for n in range(self.size)]

    def __repr__(self):
        return "RiordanArray(size=%d, rows=%r)" % (self.size, self.rows())


def _as_rational_series(s: TruncatedSeries, order: int) -> TruncatedSeries:
    vals = s.rational_coefficients()
    if len(vals) < order + 1:
        raise ValueError("series is known only through order %d, need %d" % (s.order, order))
    return TruncatedSeries.from_rationals(s.main_variable, vals[: order + 1])


def riordan_from_params(g: TruncatedSeries, f: TruncatedSeries, size: int) -> RiordanArray:
    """Build the ``size x size`` Riordan array with parameters ``(g, f)``."""
    order = size - 1
    g = _as_rational_series(g, order)
    f = _as_rational_series(f, order)
    gc, fc = g.rational_coefficients(), f.rational_coefficients()
    if gc[0] == 0 or fc[0] != 0 or (size > 1 and fc[1] == 0):
        raise ValueError("not a proper Riordan array: need g(0) != 0, f(0) = 0, f'(0) != 0")
    cols = []
    col = g
    for _ in range(size):
        cols.append(col.rational_coefficients())
        col = col * f
    entries = [[cols[k][n] for k in range(size)] for n in range(size)]
    return RiordanArray(g, f, size, entries)


def riordan_multiply(A: RiordanArray, B: RiordanArray) -> RiordanArray:
    """Matrix product of two Riordan arrays.

    The product is also built from the composed parameters ``(g G(f), F(f))``
    and the two constructions are checked to agree.
    """
    if A.size != B.size:
        raise ValueError("size mismatch: %d vs %d" % (A.size, B.size))
    product = _matmul(A.entries, B.entries)
    g = A.g * B.g.compose(A.f)
    f = B.f.compose(A.f)
    C = riordan_from_params(g, f, A.size)
    if [list(r) for r in C.entries] != product:
        raise AssertionError("Riordan composition rule disagrees with the matrix product")
    return C


def riordan_series(name: str, size: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Parameters ``(g, f)`` of the four arrays relating the Lucas triangle
    and signed central binomials.

    ``name`` is one of ``"lucas_even"``, ``"lucas_odd"``, ``"binomial_even"``,
    ``"binomial_odd"``.
    """
    K = size - 1
    z = TruncatedSeries.variable("z", K)
    one = TruncatedSeries.one("z", K)
    if name in ("lucas_even", "lucas_odd"):
        f = z / (one - z) ** 2
        g = (one + z) / (one - z) if name == "lucas_even" else (one + z) / (one - z) ** 2
        return g, f
    z1 = TruncatedSeries.variable("z", K + 1)
    root = (TruncatedSeries.one("z", K + 1) + z1 * 4).sqrt()
    f = (TruncatedSeries.one("z", K + 1) - root).divide_by_variable(1) * Fraction(1, 2) + one
    root_k = root.truncate(K)
    if name == "binomial_even":
        g = one / root_k
    elif name == "binomial_odd":
        g = ((root - 1).divide_by_variable(1) * Fraction(1, 2)) / root_k
    else:
        raise ValueError("unknown array %r" % name)
    return g, f


def riordan_entry_formula(name: str, ell: int, b: int) -> int:
    """Closed-form entry ``(ell, b)`` of the named array."""
    if b > ell:
        return 0
    if name == "lucas_even":
        return lucas_T(ell + b, ell - b)
    if name == "lucas_odd":
        return lucas_T(ell + b + 1, ell - b)
    if name == "binomial_even":
        return (-1) ** (ell + b) * math.comb(2 * ell, ell + b)
    if name == "binomial_odd":
        return (-1) ** (ell + b) * math.comb(2 * ell + 1, ell + b + 1)
    raise ValueError("unknown array %r" % name)


def km_triangles(size: int) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """The parity-interleaved Lucas matrix ``X`` and its inverse ``Y``.

    ``X[k][a] = T((k+a)/2, (k-a)/2)`` and
    ``Y[k][a] = (-1)^((k-a)/2) C(k, (k+a)/2)`` when ``a <= k`` and
    ``a = k (mod 2)``, zero otherwise.
    """
    if size < 1:
        raise ValueError("size must be positive")
    X = [[Fraction(0)] * size for _ in range(size)]
    Y = [[Fraction(0)] * size for _ in range(size)]
    for k in range(size):
        for a in range(k % 2, k + 1, 2):
            X[k][a] = Fraction(lucas_T((k + a) // 2, (k - a) // 2))
            Y[k][a] = Fraction((-1) ** ((k - a) // 2) * math.comb(k, (k + a) // 2))
    return X, Y


def matmul(A, B):
    """Exact product of two matrices given as nested lists."""
    return _matmul(A, B)


@lru_cache(maxsize=4096)
def recursion_weights(k: int, alpha: Fraction, beta: Fraction) -> tuple[Fraction, ...]:
    """``w[a] = sum_{j=1}^{k-1} (-alpha)^(k-j) q_{k,j,a}(1/beta - 1)`` for ``a < k``.

    These are the coefficients with which earlier terms feed back into the
    trace and moment recursions.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    vals = q_values(k, 1 / beta - 1)
    powers = [(-alpha) ** (k - j) for j in range(k + 1)]
    return tuple(
        sum((powers[j] * vals[(j, a)] for j in range(max(a, 1), k)), Fraction(0)) for a in range(k)
    )
