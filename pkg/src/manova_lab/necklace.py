"""Exact trace recursions for products of two projections.

For projections ``A, B`` of size ``N`` the power traces ``Tr (ABA)^k`` are
determined by ``N``, ``Tr A``, ``Tr B`` and the centred mixed traces
``Tr ((A - alpha I)(B - beta I))^l`` for ``l <= k``.  The recursions below
work over any field: pass Fractions for exact results, floats otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import recursion_weights
from .manova import ManovaParams, moments_exact

__all__ = [
    "TraceData",
    "NecklaceCoefficients",
    "necklace_coefficients",
    "ErrorTerms",
    "necklace_predict",
    "error_terms",
    "km_deltas",
    "mixed_traces",
    "direct_traces",
    "check_projection",
    "as_exact_matrix",
    "rational_projection",
    "random_rational_projection",
    "random_complex_projection",
    "FLOAT_RTOL",
]

FLOAT_RTOL = 1e-8


@dataclass(frozen=True)
class TraceData:
    """Trace summary of a pair of projections.

    ``mixed[l - 1]`` holds ``Tr ((A - alpha I)(B - beta I))^l``.
    """

    N: int
    trA: object
    trB: object
    mixed: tuple
    params: ManovaParams

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.trA, self.trB, *self.mixed))

    def scalar(self, v):
        """Coerce an exact coefficient into this data's field."""
        return v if self.exact else float(v)

    def require(self, K: int) -> None:
        if len(self.mixed) < K:
            raise ValueError(
                "mixed trace of order %d is missing (have orders 1..%d)" % (len(self.mixed) + 1, len(self.mixed))
            )


@dataclass(frozen=True)
class NecklaceCoefficients:
    eta: Fraction
    c: tuple
    d: tuple


def necklace_coefficients(beta, K: int) -> NecklaceCoefficients:
    """``c_k, d_k`` with ``(B~/beta)^k = c_k B~/beta + d_k I`` for
    ``B~ = B - beta I``, ``eta = 1/beta - 1``; both closed forms are checked.

    ``c_0 = 0, d_0 = 1, c_k = (eta - 1)c_{k-1} + d_{k-1}, d_k = eta c_{k-1}``.
    """
    eta = 1 / Fraction(beta) - 1
    c, d = [Fraction(0)], [Fraction(1)]
    for _ in range(K):
        c, d = c + [(eta - 1) * c[-1] + d[-1]], d + [eta * c[-1]]
    for k in range(K + 1):
        closed_c = sum(((-1) ** (k - 1 - j) * eta**j for j in range(k)), Fraction(0))
        if k and (c[k] != closed_c or d[k] != closed_c + (-1) ** k):
            raise AssertionError("coefficient closed form fails at k=%d" % k)
    return NecklaceCoefficients(eta, tuple(c), tuple(d))


@dataclass(frozen=True)
class ErrorTerms:
    """``Delta[k-1] = Delta_k`` for ``k >= 1``; the tilde sequences start at 0."""

    Delta: tuple
    DeltaTilde: tuple
    deltaTilde: tuple | None = None


def _geom(r: Fraction, lo: int, hi: int) -> Fraction:
    return sum((r**b for b in range(lo, hi + 1)), Fraction(0))


def _binomial_transform(data: TraceData, tilde: list, K: int) -> list:
    beta = data.scalar(data.params.beta)
    return [beta**k * sum(math.comb(k, ell) * tilde[ell] for ell in range(k + 1)) for k in range(1, K + 1)]


def _tilde_recursion(data: TraceData, K: int, start, with_identity: bool) -> list:
    """Shared recursion for the necklace values and their error terms.

    ``with_identity`` adds the ``N``-proportional term, which is exactly the
    part the limiting moments account for.
    """
    alpha, beta = data.params.alpha, data.params.beta
    f = data.scalar
    tilde = [start]
    for k in range(1, K + 1):
        w = recursion_weights(k, alpha, beta)
        val = -sum(tilde[a] * f(w[a]) for a in range(k))
        if with_identity:
            val += f(alpha**k * _geom(1 - 1 / beta, 1, k - 1)) * data.N
        sign = 1 if k % 2 else -1
        val += f(sign * alpha**k / beta * _geom(1 - 1 / beta, 0, k - 1)) * (data.trB - f(beta) * data.N)
        val += f(beta ** (-k)) * data.mixed[k - 1]
        tilde.append(val)
    return tilde


def necklace_predict(data: TraceData, K: int) -> list:
    """``Tr (ABA)^k`` for ``k = 1..K`` from trace data alone."""
    data.require(K)
    tilde = _tilde_recursion(data, K, data.trA, True)
    return _binomial_transform(data, tilde, K)


def _close(x, y, scale) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return abs(float(x) - float(y)) <= FLOAT_RTOL * max(1.0, abs(float(scale)))


def error_terms(data: TraceData, K: int) -> ErrorTerms:
    """Deviations ``Delta_k = Tr (ABA)^k - m_k N`` through their own recursion.

    The identity with :func:`necklace_predict` and the exact moments is
    checked before returning.
    """
    data.require(K)
    alpha = data.params.alpha
    tilde = _tilde_recursion(data, K, data.trA - data.scalar(alpha) * data.N, False)
    Delta = _binomial_transform(data, tilde, K)
    predicted = necklace_predict(data, K)
    m = moments_exact(data.params, K)
    for k in range(1, K + 1):
        lhs = predicted[k - 1]
        rhs = data.scalar(m.moment(k)) * data.N + Delta[k - 1]
        if not _close(lhs, rhs, data.N):
            raise AssertionError("Delta identity fails at k=%d: %r vs %r" % (k, lhs, rhs))
    return ErrorTerms(tuple(Delta), tuple(tilde))


def km_deltas(data: TraceData, K: int) -> ErrorTerms:
    """Closed-form error terms when ``beta = 1/2``.

    ``delta_k = Tr((A - alpha I)(2B - I))^k`` plus ``2 alpha^k (Tr A - alpha N)``
    for even ``k`` or ``2 alpha^k (Tr B - N/2)`` for odd ``k``, and
    ``DeltaTilde_k = sum_{a = k mod 2} C(k, (k+a)/2) (alpha(1-alpha))^((k-a)/2) delta_a``.
    The result is checked against :func:`error_terms`.
    """
    if data.params.beta != Fraction(1, 2):
        raise ValueError("Kesten-McKay closed form requires beta = 1/2")
    data.require(K)
    f = data.scalar
    alpha = data.params.alpha
    dA = data.trA - f(alpha) * data.N
    dB = data.trB - f(Fraction(1, 2)) * data.N
    small = [dA]
    for k in range(1, K + 1):
        corr = dA if k % 2 == 0 else dB
        small.append(f(Fraction(2) ** k) * data.mixed[k - 1] + f(2 * alpha**k) * corr)
    v = alpha * (1 - alpha)
    big = [
        sum(f(math.comb(k, (k + a) // 2) * v ** ((k - a) // 2)) * small[a] for a in range(k % 2, k + 1, 2))
        for k in range(K + 1)
    ]
    reference = error_terms(data, K)
    for k in range(K + 1):
        if not _close(big[k], reference.DeltaTilde[k], data.N * 2**k):
            raise AssertionError("closed form disagrees with recursion at k=%d" % k)
    return ErrorTerms(reference.Delta, tuple(big), tuple(small))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def _is_exact(M) -> bool:
    return isinstance(M, np.ndarray) and M.dtype == object


def as_exact_matrix(rows) -> np.ndarray:
    """Object array of Fractions, the carrier for exact matrix input."""
    return np.array([[Fraction(v) for v in row] for row in rows], dtype=object)


def check_projection(M, name: str = "matrix") -> None:
    """Raise unless ``M`` is square and idempotent (``||M^2 - M||_F <= 1e-8 N``)."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("%s must be square" % name)
    N = M.shape[0]
    if _is_exact(M):
        if not np.all(M.dot(M) == M):
            raise ValueError("%s is not idempotent" % name)
        if not np.all(M == M.T):
            raise ValueError("%s is not symmetric" % name)
        return
    err = float(np.linalg.norm(M @ M - M))
    if err > 1e-8 * N:
        raise ValueError("%s is not idempotent: ||M^2 - M||_F = %.3e" % (name, err))
    herm = float(np.max(np.abs(M - M.conj().T)))
    if herm > 1e-8:
        raise ValueError("%s is not Hermitian: max |M - M*| = %.3e" % (name, herm))


def _trace(M):
    t = sum(M[i, i] for i in range(M.shape[0])) if _is_exact(M) else np.trace(M)
    return Fraction(t) if _is_exact(M) else float(np.real(t))


def mixed_traces(A, B, params: ManovaParams, K: int) -> TraceData:
    """Collect ``N, Tr A, Tr B`` and ``Tr ((A - alpha I)(B - beta I))^l``.

    Object arrays of Fractions give exact traces; numeric arrays give floats.
    """
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ValueError("A and B must have the same shape")
    check_projection(A, "A")
    check_projection(B, "B")
    N = A.shape[0]
    if _is_exact(A) or _is_exact(B):
        A, B = A.astype(object), B.astype(object)
        eye = np.array([[Fraction(int(i == j)) for j in range(N)] for i in range(N)], dtype=object)
        At, Bt = A - eye * params.alpha, B - eye * params.beta
        M = At.dot(Bt)
    else:
        eye = np.eye(N)
        M = (A - float(params.alpha) * eye) @ (B - float(params.beta) * eye)
    mixed, P = [], M
    for ell in range(1, K + 1):
        mixed.append(_trace(P))
        if ell < K:
            P = P.dot(M) if _is_exact(P) else P @ M
    return TraceData(N, _trace(A), _trace(B), tuple(mixed), params)


def direct_traces(A, B, K: int) -> list:
    """``Tr (ABA)^k`` for ``k = 1..K`` computed straight from the matrices.

    Exact inputs use repeated multiplication; numeric inputs use the
    Hermitian eigenvalues of ``ABA``.
    """
    A, B = np.asarray(A), np.asarray(B)
    if _is_exact(A) or _is_exact(B):
        M = A.astype(object).dot(B.astype(object)).dot(A.astype(object))
        out, P = [], M
        for k in range(1, K + 1):
            out.append(_trace(P))
            P = P.dot(M)
        return out
    M = A @ B @ A
    lam = np.linalg.eigvalsh((M + M.conj().T) / 2)
    return [float(np.sum(lam**k)) for k in range(1, K + 1)]


def _exact_inverse(M: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse of a square object array of Fractions."""
    n = M.shape[0]
    aug = [[Fraction(M[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return np.array([row[n:] for row in aug], dtype=object)


def rational_projection(X) -> np.ndarray:
    """Exact orthogonal projection ``X (X^T X)^{-1} X^T`` onto the columns of ``X``."""
    X = np.array([[Fraction(v) for v in row] for row in np.asarray(X).tolist()], dtype=object)
    return X.dot(_exact_inverse(X.T.dot(X))).dot(X.T)


def random_rational_projection(N: int, rank: int, rng: np.random.Generator, spread: int = 3) -> np.ndarray:
    """Exact projection onto the span of ``rank`` random integer vectors."""
    while True:
        X = rng.integers(-spread, spread + 1, size=(N, rank))
        if rank == 0:
            return as_exact_matrix(np.zeros((N, N), dtype=int))
        if np.linalg.matrix_rank(X) == rank:
            return rational_projection(X)


def random_complex_projection(N: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Float projection onto a random ``rank``-dimensional complex subspace."""
    Z = rng.standard_normal((N, rank)) + 1j * rng.standard_normal((N, rank))
    Q, _ = np.linalg.qr(Z)
    return Q @ Q.conj().T
