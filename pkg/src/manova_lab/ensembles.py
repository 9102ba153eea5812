"""Random projection ensembles and spectral measurements of ``A B A``.

Two models are built in:

* ``invariant``: ``A`` a Bernoulli coordinate projection and ``B = U D U*``
  with ``U`` Haar and ``D`` a Bernoulli coordinate projection;
* ``dft``: ``A`` as above and ``B = V* V`` where ``V`` is a Bernoulli subset
  of rows of the unitary DFT matrix (a unit-norm tight frame up to scale).

Matrices are plain ``numpy`` arrays.  Trials draw independent child seeds
derived from ``(master seed, trial index)``, so results do not depend on how
many workers run them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .manova import ManovaLaw, ManovaParams, bin_probabilities, edge, moments_exact
from .necklace import check_projection

__all__ = [
    "ENSEMBLES",
    "worker_count",
    "trial_rng",
    "haar_unitaries",
    "haar_unitary",
    "is_hermitian",
    "bernoulli_projection",
    "invariant_projection",
    "dft_matrix",
    "Frame",
    "dft_subframe",
    "sample_pair",
    "SpectralReport",
    "esd_report",
    "FreenessReport",
    "freeness_diagnostic",
    "lambda_max_trial",
    "EdgeSummary",
    "edge_experiment",
    "EsdSummary",
    "esd_experiment",
]

ENSEMBLES = ("invariant", "dft")
HERMITIAN_TOL = 1e-12
SPECTRUM_TOL = 1e-8


def worker_count(requested: int | None = None) -> int:
    """Number of trial workers: ``requested``, capped by ``MANOVA_LAB_THREADS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get("MANOVA_LAB_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError("MANOVA_LAB_THREADS must be a positive integer, got %r" % cap) from None
    return max(1, n)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial, derived from the master seed and the trial index."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def haar_unitaries(N: int, size: int, rng) -> np.ndarray:
    """``size`` independent Haar unitaries of order ``N``, shape ``(size, N, N)``.

    QR of a complex Ginibre matrix, then each column is multiplied by the
    phase of the matching diagonal entry of ``R``; without that correction
    the result is not Haar distributed.
    """
    rng = _rng(rng)
    Z = (rng.standard_normal((size, N, N)) + 1j * rng.standard_normal((size, N, N))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    return Q * (d / np.abs(d))[:, None, :]


def haar_unitary(N: int, seed) -> np.ndarray:
    """One Haar unitary of order ``N``."""
    if N < 1:
        raise ValueError("N must be positive")
    return haar_unitaries(N, 1, seed)[0]


def is_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol)


def _check_prob(name: str, p: float) -> float:
    p = float(p)
    if not 0 < p < 1:
        raise ValueError("%s must lie in (0,1)" % name)
    return p


def _bernoulli_mask(N: int, p: float, rng) -> np.ndarray:
    return rng.random(N) < p


def bernoulli_projection(N: int, alpha, seed) -> np.ndarray:
    """Diagonal projection with i.i.d. ``Ber(alpha)`` diagonal entries."""
    alpha = _check_prob("alpha", alpha)
    mask = _bernoulli_mask(N, alpha, _rng(seed))
    return np.diag(mask.astype(complex))


def invariant_projection(N: int, beta, seed) -> np.ndarray:
    """``U D U*`` with ``U`` Haar and ``D`` diagonal ``Ber(beta)``."""
    beta = _check_prob("beta", beta)
    rng = _rng(seed)
    U = haar_unitaries(N, 1, rng)[0]
    mask = _bernoulli_mask(N, beta, rng)
    Ud = U[:, mask]
    B = Ud @ Ud.conj().T
    return (B + B.conj().T) / 2


def dft_matrix(N: int) -> np.ndarray:
    """Unitary DFT matrix ``F[j, k] = exp(2 pi i j k / N) / sqrt(N)``."""
    j = np.arange(N)
    return np.exp(2j * np.pi * np.outer(j, j) / N) / math.sqrt(N)


@dataclass
class Frame:
    """``N`` vectors in ``C^M`` stored as the columns of ``V`` (shape ``(M, N)``)."""

    V: np.ndarray

    @property
    def M(self) -> int:
        return self.V.shape[0]

    @property
    def N(self) -> int:
        return self.V.shape[1]

    def frame_operator(self) -> np.ndarray:
        return self.V @ self.V.conj().T

    def gram(self) -> np.ndarray:
        return self.V.conj().T @ self.V

    def tightness_error(self) -> float:
        """``||V V* - I_M||_F``."""
        return float(np.linalg.norm(self.frame_operator() - np.eye(self.M)))

    def is_tight(self, tol: float = 1e-10) -> bool:
        return self.tightness_error() <= tol

    def coherence(self, normalized: bool = False) -> float:
        """``max_{i != j} |<v_i, v_j>|``, optionally after scaling columns to unit norm."""
        G = np.abs(self.gram())
        if normalized:
            norms = np.sqrt(np.real(np.diag(self.gram())))
            G = G / np.outer(norms, norms)
        np.fill_diagonal(G, 0.0)
        return float(G.max()) if self.N > 1 else 0.0

    def welch_bound(self) -> float:
        """Lower bound ``sqrt((N - M) / (M (N - 1)))`` on unit-norm coherence."""
        if self.N <= 1:
            return 0.0
        return math.sqrt(max(self.N - self.M, 0) / (self.M * (self.N - 1)))

    def projection(self) -> np.ndarray:
        """``V* V``: orthogonal projection of rank ``M`` when the frame is tight."""
        P = self.gram()
        return (P + P.conj().T) / 2


def _dft_rows(N: int, beta: float, rng) -> np.ndarray:
    while True:
        mask = _bernoulli_mask(N, beta, rng)
        if 0 < mask.sum() < N:
            return mask


def dft_subframe(N: int, beta, seed) -> Frame:
    """Rows of the unitary DFT matrix kept independently with probability ``beta``.

    The rows are orthonormal, so ``V V* = I_M`` and every column has squared
    norm ``M / N``.  Empty or full selections are redrawn from the same stream.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    beta = _check_prob("beta", beta)
    mask = _dft_rows(N, beta, _rng(seed))
    return Frame(dft_matrix(N)[mask])


def sample_pair(ensemble: str, N: int, alpha, beta, seed) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``(A, B)`` drawn from the named ensemble."""
    rng = _rng(seed)
    if ensemble == "invariant":
        return bernoulli_projection(N, alpha, rng), invariant_projection(N, beta, rng)
    if ensemble == "dft":
        return bernoulli_projection(N, alpha, rng), dft_subframe(N, beta, rng).projection()
    raise ValueError("unknown ensemble %r (expected one of %s)" % (ensemble, ", ".join(ENSEMBLES)))


# ---------------------------------------------------------------------------
# spectral measurements
# ---------------------------------------------------------------------------


@dataclass
class SpectralReport:
    """Spectrum of ``A B A`` with its power moments and a histogram on ``[0, 1]``."""

    eigenvalues: np.ndarray
    moments: list
    lambda_max: float
    bin_edges: np.ndarray
    counts: np.ndarray
    seed: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.eigenvalues)

    def traces(self) -> list:
        """``Tr (A B A)^k`` for ``k = 1..K``."""
        return [m * self.N for m in self.moments]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["eigenvalues"] = self.eigenvalues.tolist()
        out["bin_edges"] = self.bin_edges.tolist()
        out["counts"] = self.counts.tolist()
        return out


def esd_report(A: np.ndarray, B: np.ndarray, K: int, bins: int = 40, seed=None, params=None) -> SpectralReport:
    """Eigenvalues of the Hermitian product ``A B A`` and derived statistics."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of the same size")
    check_projection(A, "A")
    check_projection(B, "B")
    M = A @ B @ A
    M = (M + M.conj().T) / 2
    try:
        lam = np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("eigensolver failed: %s" % exc) from exc
    if lam[0] < -SPECTRUM_TOL or lam[-1] > 1 + SPECTRUM_TOL:
        raise AssertionError("spectrum of A B A leaves [0, 1]: [%g, %g]" % (lam[0], lam[-1]))
    moments = [float(np.mean(lam**k)) for k in range(1, K + 1)]
    edges = np.linspace(0.0, 1.0, bins + 1)
    counts, _ = np.histogram(np.clip(lam, 0.0, 1.0), edges)
    return SpectralReport(lam, moments, float(lam[-1]), edges, counts, seed, dict(params or {}))


@dataclass
class FreenessReport:
    values: list
    threshold: float
    flags: list


def freeness_diagnostic(A: np.ndarray, B: np.ndarray, params: ManovaParams, K: int) -> FreenessReport:
    """``(1/N) Tr((A - alpha) (B - beta))^k`` for ``k = 1..K``.

    For asymptotically free projections these vanish as ``N`` grows; values
    above ``5 / sqrt(N)`` are flagged.
    """
    N = A.shape[0]
    At = A - float(params.alpha) * np.eye(N)
    Bt = B - float(params.beta) * np.eye(N)
    P = At @ Bt
    cur = P
    values = []
    for k in range(1, K + 1):
        if k > 1:
            cur = cur @ P
        values.append(float(np.real(np.trace(cur))) / N)
    threshold = 5 / math.sqrt(N)
    flags = ["freeness violation at order %d" % k for k, v in enumerate(values, 1) if abs(v) > threshold]
    return FreenessReport(values, threshold, flags)


def lambda_max_trial(ensemble: str, N: int, alpha: float, beta: float, rng) -> float:
    """``lambda_max(A B A) = ||A B||^2`` for one draw, via the relevant submatrix."""
    rows = _bernoulli_mask(N, alpha, rng)
    if ensemble == "invariant":
        U = haar_unitaries(N, 1, rng)[0]
        W = U[rows][:, _bernoulli_mask(N, beta, rng)]
    elif ensemble == "dft":
        kept = _dft_rows(N, beta, rng)
        W = dft_matrix(N)[kept][:, rows]
    else:
        raise ValueError("unknown ensemble %r (expected one of %s)" % (ensemble, ", ".join(ENSEMBLES)))
    if W.size == 0:
        return 0.0
    return float(np.linalg.norm(W, 2) ** 2)


def _map_trials(fn, trials: int, workers: int | None):
    n = worker_count(workers)
    if n == 1 or trials == 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, range(trials)))


def edge_tolerance(N: int) -> float:
    """Calibration threshold ``4 N^(-1/3)`` for the mean top eigenvalue."""
    return 4 * N ** (-1 / 3)


@dataclass
class EdgeSummary:
    ensemble: str
    alpha: float
    beta: float
    N: int
    trials: int
    seed: int
    edge: float
    lambda_max: list
    mean: float
    median_deviation: float
    max_deviation: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def edge_experiment(ensemble: str, alpha, beta, N: int, trials: int, seed: int, workers: int | None = None) -> EdgeSummary:
    """Top eigenvalue of ``A B A`` across independent trials, against the support edge."""
    params = ManovaParams(alpha, beta)
    a, b = float(params.alpha), float(params.beta)
    target = edge(params)
    values = _map_trials(lambda t: lambda_max_trial(ensemble, N, a, b, trial_rng(seed, t)), trials, workers)
    dev = np.abs(np.asarray(values) - target)
    mean = float(np.mean(values))
    tol = edge_tolerance(N)
    return EdgeSummary(
        ensemble, a, b, N, trials, int(seed), target, values, mean,
        float(np.median(dev)), float(dev.max()), tol, abs(mean - target) <= tol,
    )


@dataclass
class EsdSummary:
    """Trial-averaged spectrum of ``A B A`` against the MANOVA law."""

    ensemble: str
    alpha: float
    beta: float
    N: int
    trials: int
    seed: int
    kmax: int
    empirical_moments: list
    exact_moments: list
    max_moment_error: float
    bin_edges: list
    counts: list
    empirical_density: list
    manova_density: list
    tv_distance: float
    lambda_max: list
    reports: list = field(repr=False, default_factory=list)

    def to_dict(self, include_trials: bool = False) -> dict:
        out = asdict(self)
        out.pop("reports")
        if include_trials:
            out["trials_detail"] = [
                {"seed_trial": t, "moments": r.moments, "lambda_max": r.lambda_max} for t, r in enumerate(self.reports)
            ]
        return out


def esd_experiment(ensemble: str, alpha, beta, N: int, trials: int, kmax: int, seed: int, bins: int = 40, workers: int | None = None) -> EsdSummary:
    """Empirical moments and histogram of ``A B A`` averaged over trials.

    The histogram is compared with the law's bin masses (atoms included) by
    total-variation distance; densities are mass divided by bin width.
    """
    params = ManovaParams(alpha, beta)
    a, b = float(params.alpha), float(params.beta)

    def one(t):
        A, B = sample_pair(ensemble, N, a, b, trial_rng(seed, t))
        return esd_report(A, B, kmax, bins, seed, {"trial": t})

    reports = _map_trials(one, trials, workers)
    emp = np.mean([r.moments for r in reports], axis=0).tolist() if kmax else []
    exact = [float(m) for m in moments_exact(params, kmax).values]
    err = max((abs(x - y) for x, y in zip(emp, exact)), default=0.0)
    counts = np.sum([r.counts for r in reports], axis=0)
    edges = reports[0].bin_edges
    width = np.diff(edges)
    freq = counts / counts.sum()
    law_probs = bin_probabilities(ManovaLaw(params), edges)
    tv = 0.5 * float(np.abs(freq - law_probs).sum())
    return EsdSummary(
        ensemble, a, b, N, trials, int(seed), kmax, emp, exact, float(err),
        edges.tolist(), counts.tolist(), (freq / width).tolist(), (law_probs / width).tolist(), tv,
        [r.lambda_max for r in reports], reports,
    )
