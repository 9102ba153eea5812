import math

import numpy as np
import pytest
from scipy.stats import ks_2samp

from manova_lab import ensembles as en
from manova_lab import manova as mv
from manova_lab import necklace as nk


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def test_haar_unitarity_and_n1_phase():
    U = en.haar_unitary(6, 1)
    assert np.linalg.norm(U.conj().T @ U - np.eye(6)) <= 1e-10
    u = en.haar_unitary(1, 2)
    assert u.shape == (1, 1) and abs(abs(u[0, 0]) - 1) <= 1e-12
    with pytest.raises(ValueError):
        en.haar_unitary(0, 1)


def test_haar_first_moments():
    rng = np.random.default_rng(11)
    U = en.haar_unitaries(4, 100_000, rng)
    u11 = U[:, 0, 0]
    assert abs(np.mean(np.abs(u11) ** 2) - 0.25) < 0.005
    assert abs(u11.mean().real) < 0.01 and abs(u11.mean().imag) < 0.01


def test_haar_fourth_moment_distinguishes_phase_fix():
    # without the phase fix E|U11|^4 differs from 2 / (N (N + 1)) = 1/10 at N = 4
    U = en.haar_unitaries(4, 100_000, np.random.default_rng(12))
    x = np.abs(U[:, 0, 0]) ** 4
    assert abs(x.mean() - 0.1) < 4 * x.std() / math.sqrt(len(x))


def test_bernoulli_projection():
    N, alpha = 10_000, 0.3
    A = en.bernoulli_projection(N, alpha, 5)
    d = np.real(np.diag(A))
    assert abs(d.mean() - alpha) <= 3 * math.sqrt(alpha * (1 - alpha) / N)
    small = en.bernoulli_projection(40, alpha, 5)
    assert np.array_equal(small @ small, small)
    assert np.array_equal(small, en.bernoulli_projection(40, alpha, 5))
    with pytest.raises(ValueError, match=r"alpha must lie in \(0,1\)"):
        en.bernoulli_projection(4, 1.5, 0)


def test_invariant_projection():
    N, beta = 400, 0.4
    B = en.invariant_projection(N, beta, 8)
    assert en.is_hermitian(B, 1e-10)
    assert np.linalg.norm(B @ B - B) <= 1e-10 * N
    lam = np.linalg.eigvalsh(B)
    assert np.all(np.minimum(np.abs(lam), np.abs(lam - 1)) <= 1e-8)
    rank = int(np.round(lam.sum()))
    assert abs(rank / N - beta) <= 3 * math.sqrt(beta * (1 - beta) / N)


def test_invariance_under_reconjugation():
    N, trials = 256, 50
    lam1, lam2 = [], []
    for t in range(trials):
        rng = en.trial_rng(31, t)
        A, B = en.sample_pair("invariant", N, 0.3, 0.5, rng)
        V = en.haar_unitaries(N, 1, rng)[0]
        B2 = V @ B @ V.conj().T
        lam1.append(np.linalg.eigvalsh(A @ B @ A))
        lam2.append(np.linalg.eigvalsh(A @ ((B2 + B2.conj().T) / 2) @ A))
    assert ks_2samp(np.concatenate(lam1), np.concatenate(lam2)).statistic < 0.05


def test_dft_matrix_unitary():
    F = en.dft_matrix(16)
    assert np.linalg.norm(F @ F.conj().T - np.eye(16)) < 1e-12
    full = en.Frame(F)
    assert full.is_tight() and np.linalg.norm(full.gram() - np.eye(16)) < 1e-12
    assert full.coherence() < 1e-12


def test_dft_subframe_tight_with_uniform_norms():
    fr = en.dft_subframe(64, 0.5, 3)
    assert fr.is_tight()
    diag = np.real(np.diag(fr.gram()))
    assert np.allclose(diag, fr.M / fr.N, atol=1e-12)
    P = fr.projection()
    assert np.linalg.norm(P @ P - P) < 1e-10


def test_dft_subframe_column_norm_mean():
    vals = [en.dft_subframe(128, 0.3, s).M / 128 for s in range(200)]
    assert abs(np.mean(vals) - 0.3) < 3 * math.sqrt(0.3 * 0.7 / 128 / 200)


def test_dft_subframe_incoherence_and_welch():
    fr = en.dft_subframe(1024, 0.5, 7)
    N = fr.N
    assert fr.coherence() <= 6 * math.sqrt(math.log(N) / N)
    assert fr.coherence(normalized=True) >= fr.welch_bound() - 1e-12


def test_dft_subframe_resamples_degenerate():
    # beta tiny at N = 2 almost always gives an empty selection first
    fr = en.dft_subframe(2, 0.01, 0)
    assert 0 < fr.M < 2
    with pytest.raises(ValueError):
        en.dft_subframe(1, 0.5, 0)


def test_unknown_ensemble():
    with pytest.raises(ValueError, match="unknown ensemble"):
        en.sample_pair("paley", 8, 0.3, 0.5, 0)


# ---------------------------------------------------------------------------
# spectral measurements
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("ensemble", en.ENSEMBLES)
def test_esd_report_invariants(ensemble):
    A, B = en.sample_pair(ensemble, 128, 0.3, 0.5, 4)
    r = en.esd_report(A, B, 6)
    lam = r.eigenvalues
    assert np.all(np.diff(lam) >= 0)
    assert lam[0] >= -1e-8 and r.lambda_max <= 1 + 1e-8
    assert all(abs(m - np.mean(lam**k)) <= 1e-9 for k, m in enumerate(r.moments, 1))
    assert r.counts.sum() == 128 and len(r.bin_edges) == 41


@pytest.mark.parametrize("ensemble", en.ENSEMBLES)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_esd_matches_necklace(ensemble, seed):
    N = 96 + 80 * seed
    A, B = en.sample_pair(ensemble, N, 0.3, 0.5, seed)
    r = en.esd_report(A, B, 6)
    params = mv.ManovaParams("3/10", "1/2")
    pred = nk.necklace_predict(nk.mixed_traces(A, B, params, 6), 6)
    assert all(abs(x - y) <= 1e-8 * N for x, y in zip(r.traces(), pred))


def test_esd_report_equal_projections():
    A, _ = en.sample_pair("invariant", 50, 0.4, 0.5, 9)
    r = en.esd_report(A, A, 4)
    rank = np.real(np.trace(A)) / 50
    assert all(abs(m - rank) < 1e-12 for m in r.moments)


def test_esd_report_rejects_non_projection():
    with pytest.raises(ValueError, match="not idempotent"):
        en.esd_report(np.eye(3) * 0.5, np.eye(3), 2)


def test_freeness_flags_equal_projections():
    A = en.bernoulli_projection(400, 0.5, 1)
    rep = en.freeness_diagnostic(A, A, mv.ManovaParams("1/2", "1/2"), 3)
    expected = (1 - 1.0) * np.real(np.trace(A)) / 400 + 0.25
    assert rep.values[0] == pytest.approx(expected, abs=1e-12)
    # value near alpha^2 + (1 - 2 alpha) alpha = 0.21; threshold 5 / sqrt(2000) = 0.11
    A = en.bernoulli_projection(2000, 0.3, 1)
    rep = en.freeness_diagnostic(A, A, mv.ManovaParams("3/10", "3/10"), 3)
    assert "freeness violation at order 1" in rep.flags
    assert len(rep.values) == 3  # orders start at 1


def test_freeness_invariant_model():
    A, B = en.sample_pair("invariant", 512, 0.5, 0.5, 21)
    rep = en.freeness_diagnostic(A, B, mv.ManovaParams("1/2", "1/2"), 5)
    assert not rep.flags and all(abs(v) <= 5 / math.sqrt(512) for v in rep.values)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("MANOVA_LAB_THREADS", "2")
    assert en.worker_count(8) == 2
    monkeypatch.setenv("MANOVA_LAB_THREADS", "x")
    with pytest.raises(ValueError, match="MANOVA_LAB_THREADS"):
        en.worker_count()
    monkeypatch.delenv("MANOVA_LAB_THREADS")
    assert en.worker_count(3) == 3


def test_lambda_max_is_top_eigenvalue():
    for ensemble in en.ENSEMBLES:
        rng_a, rng_b = en.trial_rng(5, 0), en.trial_rng(5, 0)
        fast = en.lambda_max_trial(ensemble, 64, 0.3, 0.5, rng_a)
        rows = rng_b.random(64) < 0.3
        A = np.diag(rows.astype(float))
        if ensemble == "invariant":
            U = en.haar_unitaries(64, 1, rng_b)[0]
            Ud = U[:, rng_b.random(64) < 0.5]
            B = Ud @ Ud.conj().T
        else:
            kept = en._dft_rows(64, 0.5, rng_b)
            V = en.dft_matrix(64)[kept]
            B = V.conj().T @ V
        M = A @ B @ A
        assert fast == pytest.approx(np.linalg.eigvalsh((M + M.conj().T) / 2)[-1], abs=1e-10)


@pytest.mark.parametrize("ensemble", en.ENSEMBLES)
def test_experiments_are_deterministic(ensemble, monkeypatch):
    s1 = en.esd_experiment(ensemble, "3/10", "1/2", 64, 3, 4, seed=5)
    monkeypatch.setenv("MANOVA_LAB_THREADS", "1")
    s2 = en.esd_experiment(ensemble, "3/10", "1/2", 64, 3, 4, seed=5)
    assert s1.to_dict(True) == s2.to_dict(True)
    assert all(np.array_equal(a.eigenvalues, b.eigenvalues) for a, b in zip(s1.reports, s2.reports))
    e1 = en.edge_experiment(ensemble, "3/10", "1/2", 64, 4, seed=5)
    e2 = en.edge_experiment(ensemble, "3/10", "1/2", 64, 4, seed=5, workers=3)
    assert e1 == e2


def test_esd_experiment_dft():
    s = en.esd_experiment("dft", "3/10", "1/2", 512, 10, 5, seed=1)
    assert s.max_moment_error < 0.02
    assert sum(s.counts) == 5120
    assert s.tv_distance < 0.08


def test_edge_examples():
    s = en.edge_experiment("invariant", "3/5", "1/2", 512, 20, seed=3)
    assert abs(s.mean - 1) < 0.02 and s.edge == 1.0
    s = en.edge_experiment("invariant", "3/10", "1/2", 512, 20, seed=4)
    assert abs(s.mean - 0.95826) < 0.05 and s.passed
    assert s.tolerance == pytest.approx(4 * 512 ** (-1 / 3))
    assert max(s.lambda_max) <= 1 + 1e-10
