"""The two-parameter MANOVA law on [0, 1].

``MANOVA(alpha, beta)`` is the limiting spectrum of ``A B A`` for free
projections of normalized ranks ``alpha`` and ``beta``.  It has an atom of mass
``1 - min(alpha, beta)`` at 0, an atom of mass ``max(alpha + beta - 1, 0)`` at 1,
and density ``sqrt((r+ - x)(x - r-)) / (2 pi x (1 - x))`` on ``[r-, r+]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .algebra import as_rational
from .combinatorics import recursion_weights

__all__ = [
    "ManovaParams",
    "ManovaLaw",
    "MomentVector",
    "density",
    "edge",
    "moments_exact",
    "moments_quadrature",
    "ac_integral",
    "total_mass",
    "conditional_expectation",
    "convert_params",
    "de_endpoints",
    "folding_check",
    "sample",
    "ac_cdf",
    "bin_probabilities",
]


@dataclass(frozen=True)
class ManovaParams:
    """Rational parameters ``0 < alpha, beta < 1``.

    Decimal strings and floats are converted to rationals (floats with
    denominator at most 10**6).
    """

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = as_rational(self.alpha), as_rational(self.beta)
        for name, v in (("alpha", a), ("beta", b)):
            if not 0 < v < 1:
                raise ValueError("%s must lie in (0,1)" % name)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def eta(self) -> Fraction:
        return 1 / self.beta - 1

    def swapped(self) -> "ManovaParams":
        return ManovaParams(self.beta, self.alpha)

    def __iter__(self):
        return iter((self.alpha, self.beta))


class ManovaLaw:
    """Derived quantities of ``MANOVA(alpha, beta)``.

    Attributes
    ----------
    r_minus, r_plus : float
        Endpoints of the absolutely continuous part.
    atom0, atom1 : Fraction
        Masses of the atoms at 0 and 1.
    ac_mass : Fraction
        Mass of the absolutely continuous part.
    edge : float
        Right edge of the support.
    """

    def __init__(self, params: ManovaParams):
        if not isinstance(params, ManovaParams):
            params = ManovaParams(*params)
        self.params = params
        a, b = float(params.alpha), float(params.beta)
        p, q = math.sqrt(a * (1 - b)), math.sqrt(b * (1 - a))
        self.r_plus = (p + q) ** 2
        # written without cancellation since p - q = (a - b) / (p + q)
        self.r_minus = ((a - b) / (p + q)) ** 2
        self.atom0 = 1 - min(params.alpha, params.beta)
        self.atom1 = max(params.alpha + params.beta - 1, Fraction(0))
        self.ac_mass = 1 - self.atom0 - self.atom1
        self.edge = 1.0 if params.alpha + params.beta > 1 else self.r_plus

    def __repr__(self):
        return "ManovaLaw(alpha=%s, beta=%s)" % (self.params.alpha, self.params.beta)


def _law(obj) -> ManovaLaw:
    if isinstance(obj, ManovaLaw):
        return obj
    return ManovaLaw(obj if isinstance(obj, ManovaParams) else ManovaParams(*obj))


def density(law, x: float) -> float:
    """Density of the absolutely continuous part at ``x`` in (0, 1)."""
    law = _law(law)
    if not 0 < x < 1:
        raise ValueError("density is defined on (0,1); atoms are reported separately")
    if x <= law.r_minus or x >= law.r_plus:
        return 0.0
    return math.sqrt((law.r_plus - x) * (x - law.r_minus)) / (2 * math.pi * x * (1 - x))


def edge(params) -> float:
    """Right edge of the support: 1 when ``alpha + beta > 1``, else ``r+``."""
    return _law(params).edge


@dataclass(frozen=True)
class MomentVector:
    """Moments ``m_1..m_K``; ``exact`` marks rational values."""

    values: tuple
    exact: bool

    def moment(self, k: int):
        return 1 if k == 0 else self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


# ---------------------------------------------------------------------------
# exact moments
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _exact_moments(alpha: Fraction, beta: Fraction, K: int) -> tuple[Fraction, ...]:
    t = [alpha]
    for k in range(1, K + 1):
        w = recursion_weights(k, alpha, beta)
        geom = sum(((1 - 1 / beta) ** b for b in range(1, k)), Fraction(0))
        t.append(alpha**k * geom - sum((t[a] * w[a] for a in range(k)), Fraction(0)))
    out = []
    for k in range(1, K + 1):
        out.append(beta**k * sum((math.comb(k, ell) * t[ell] for ell in range(k + 1)), Fraction(0)))
    return tuple(out)


def moments_exact(params, K: int) -> MomentVector:
    """Exact rational moments ``m_1..m_K`` from the trace recursion.

    Examples
    --------
    >>> moments_exact(ManovaParams(Fraction(1, 2), Fraction(1, 2)), 2).values
    (Fraction(1, 4), Fraction(3, 16))
    """
    params = _law(params).params
    if not 0 <= K <= 24:
        raise ValueError("K must lie in [0, 24]")
    return MomentVector(_exact_moments(params.alpha, params.beta, K), True)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _theta_rule(panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [0, pi/2]."""
    h = (math.pi / 2) / panels
    left = np.arange(panels) * h
    nodes = (left[:, None] + (_GL_NODES[None, :] + 1) * h / 2).ravel()
    weights = np.tile(_GL_WEIGHTS * h / 2, panels)
    return nodes, weights


def _ac_weight(law: ManovaLaw, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Points ``x(theta)`` and the density weight in theta, after
    ``x = r- + (r+ - r-) sin^2 theta``.

    Both endpoint square roots cancel against the Jacobian, and ``x`` and
    ``1 - x`` are formed from the nearer endpoint to avoid cancellation.
    """
    delta = law.r_plus - law.r_minus
    s2, c2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    x = law.r_minus + delta * s2
    one_minus = (1 - law.r_plus) + delta * c2
    if law.r_minus == 0.0:
        w = delta * c2 / (math.pi * one_minus)
    else:
        w = delta**2 * s2 * c2 / (math.pi * x * one_minus)
    return x, w


def ac_integral(law, func: Callable[[np.ndarray], np.ndarray], tol: float = 1e-13, max_panels: int = 1 << 14) -> np.ndarray:
    """``int func(x) dmu_ac(x)`` over the absolutely continuous part.

    ``func`` maps an array of points of shape ``(n,)`` to ``(n,)`` or
    ``(n, m)``; panels are doubled until successive results agree to ``tol``.
    """
    law = _law(law)
    panels, prev = 4, None
    while True:
        theta, wts = _theta_rule(panels)
        x, w = _ac_weight(law, theta)
        vals = np.asarray(func(x), dtype=float)
        if vals.ndim == 1:
            cur = np.dot(wts * w, vals)
        else:
            cur = (wts * w) @ vals
        if prev is not None and np.max(np.abs(cur - prev)) <= tol:
            return cur
        if panels >= max_panels:
            raise RuntimeError("quadrature did not converge to %g" % tol)
        prev, panels = cur, panels * 2


def moments_quadrature(params, K: int) -> MomentVector:
    """Float moments ``m_1..m_K`` by quadrature of the density plus the atom at 1."""
    law = _law(params)
    if not 0 <= K <= 24:
        raise ValueError("K must lie in [0, 24]")
    powers = np.arange(1, K + 1)
    ac = ac_integral(law, lambda x: x[:, None] ** powers[None, :]) if K else np.zeros(0)
    return MomentVector(tuple(float(law.atom1) + ac), False)


def total_mass(params) -> float:
    """``atom0 + atom1 + int density``; equals 1 up to quadrature error."""
    law = _law(params)
    return float(law.atom0) + float(law.atom1) + float(ac_integral(law, np.ones_like))


def conditional_expectation(params, func: Callable[[np.ndarray], np.ndarray], condition: str = "positive") -> np.ndarray:
    """Expectation of ``func(X)`` conditioned on ``X > 0`` (``"positive"``)
    or ``0 < X < 1`` (``"interior"``).

    Conditioning on positivity gives the law parametrized by ``(a, b)`` in
    :func:`convert_params`.
    """
    law = _law(params)
    ac = ac_integral(law, func)
    if condition == "interior":
        return ac / float(law.ac_mass)
    if condition == "positive":
        one = np.asarray(func(np.array([1.0])), dtype=float)[0]
        return (ac + float(law.atom1) * one) / float(1 - law.atom0)
    raise ValueError("condition must be 'positive' or 'interior'")


# ---------------------------------------------------------------------------
# parametrizations and folding
# ---------------------------------------------------------------------------


def convert_params(params, target: str) -> tuple[Fraction, Fraction]:
    """Translate ``(alpha, beta)`` to another common parametrization.

    ``target="DE"`` gives ``(a, b) = (beta/alpha, (1-beta)/alpha)`` for the law
    conditioned to be positive, requiring ``alpha <= min(beta, 1-beta)``.
    ``target="HZG"`` gives ``(alpha/beta, beta)``; that convention describes the
    same law rescaled by ``1/beta`` (the rescaling is not applied here).
    """
    params = _law(params).params
    a, b = params.alpha, params.beta
    if target == "DE":
        if a > min(b, 1 - b):
            raise ValueError(
                "DE parameters need alpha <= min(beta, 1-beta); got alpha=%s, beta=%s. "
                "Swap the arguments or use beta in [alpha, 1-alpha]." % (a, b)
            )
        return b / a, (1 - b) / a
    if target == "HZG":
        return a / b, b
    raise ValueError("target must be 'DE' or 'HZG'")


def de_endpoints(a, b) -> tuple[float, float]:
    """Support endpoints ``((sqrt(b) -+ sqrt(a(a+b-1))) / (a+b))^2``."""
    a, b = float(a), float(b)
    root = math.sqrt(a * (a + b - 1))
    return ((math.sqrt(b) - root) / (a + b)) ** 2, ((math.sqrt(b) + root) / (a + b)) ** 2


@dataclass(frozen=True)
class FoldingReport:
    alpha: Fraction
    folded: tuple
    direct: tuple
    max_error: float
    passed: bool


def folding_check(alpha, K: int, tol: float = 1e-7) -> FoldingReport:
    """Compare ``E[((2X-1)^2)^k]`` for ``X ~ MANOVA(1/2, alpha)`` with
    ``E[Y^k]`` for ``Y ~ MANOVA(alpha, alpha)``, both conditioned off {0, 1},
    for ``k = 0..K``.
    """
    alpha = as_rational(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError("alpha must lie in (0, 1/2)")
    if not 0 <= K <= 12:
        raise ValueError("K must lie in [0, 12]")
    ks = np.arange(K + 1)
    folded = conditional_expectation(
        ManovaParams(Fraction(1, 2), alpha), lambda x: ((2 * x - 1) ** 2)[:, None] ** ks[None, :], "interior"
    )
    direct = conditional_expectation(
        ManovaParams(alpha, alpha), lambda x: x[:, None] ** ks[None, :], "interior"
    )
    err = float(np.max(np.abs(folded - direct)))
    return FoldingReport(alpha, tuple(folded), tuple(direct), err, err < tol)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

CDF_TABLE_SIZE = 4096


@lru_cache(maxsize=64)
def _inverse_cdf(alpha: Fraction, beta: Fraction) -> PchipInterpolator:
    law = ManovaLaw(ManovaParams(alpha, beta))
    edges = np.linspace(0, math.pi / 2, CDF_TABLE_SIZE)
    nodes, weights = np.polynomial.legendre.leggauss(12)
    h = np.diff(edges)
    theta = edges[:-1, None] + (nodes[None, :] + 1) * h[:, None] / 2
    _, w = _ac_weight(law, theta.ravel())
    pieces = (w.reshape(theta.shape) * weights[None, :]).sum(axis=1) * h / 2
    cdf = np.concatenate([[0.0], np.cumsum(pieces)])
    cdf /= cdf[-1]
    x = law.r_minus + (law.r_plus - law.r_minus) * np.sin(edges) ** 2
    keep = np.concatenate([[True], np.diff(cdf) > 0])
    return PchipInterpolator(cdf[keep], x[keep])


def ac_cdf(law, x) -> np.ndarray:
    """``mu_ac([0, x])`` (not normalized) at each point of ``x``."""
    law = _law(law)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    delta = law.r_plus - law.r_minus
    u = np.clip((x - law.r_minus) / delta, 0.0, 1.0) if delta > 0 else (x >= law.r_plus).astype(float)
    top = np.arcsin(np.sqrt(u))
    nodes, weights = np.polynomial.legendre.leggauss(64)
    theta = top[:, None] * (nodes[None, :] + 1) / 2
    _, w = _ac_weight(law, theta.ravel())
    return (w.reshape(theta.shape) * weights[None, :]).sum(axis=1) * top / 2


def bin_probabilities(law, edges) -> np.ndarray:
    """Mass of the law in each bin ``[e_i, e_{i+1})``; the last bin is closed.

    The atom at 0 goes to the bin containing 0 and the atom at 1 to the bin
    containing 1, matching ``numpy.histogram`` conventions.
    """
    law = _law(law)
    edges = np.asarray(edges, dtype=float)
    probs = np.diff(ac_cdf(law, edges))
    for point, mass in ((0.0, float(law.atom0)), (1.0, float(law.atom1))):
        if mass and edges[0] <= point <= edges[-1]:
            i = min(np.searchsorted(edges, point, side="right") - 1, len(probs) - 1)
            probs[i] += mass
    return probs


def sample(law, n: int, seed) -> np.ndarray:
    """Draw ``n`` i.i.d. values from the law; deterministic given ``seed``."""
    law = _law(law)
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    p0, p1 = float(law.atom0), float(law.atom1)
    out = np.zeros(n)
    out[(u >= p0) & (u < p0 + p1)] = 1.0
    cont = u >= p0 + p1
    v = (u[cont] - p0 - p1) / float(law.ac_mass)
    out[cont] = np.clip(_inverse_cdf(law.params.alpha, law.params.beta)(v), law.r_minus, law.r_plus)
    return out
