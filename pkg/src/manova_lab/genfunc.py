"""Closed-form generating functions and their exact series checks.

Covers the cyclic-runs function ``R``, the q-polynomial function ``Q``, the
polynomials ``s_k`` with their generating function ``S``, Chebyshev ``U_n``,
and the monic orthogonal polynomials ``f_n`` of the MANOVA law conditioned to
be positive, whose generating function ``F`` is tied to ``S`` by an exact
rational identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import MultiPoly, Polynomial, QuadraticSurd, TruncatedSeries, expand_rational
from .combinatorics import q_values
from .manova import ManovaParams

__all__ = [
    "runs",
    "runs_gf_closed",
    "runs_enumeration_gf",
    "q_gf_closed",
    "q_gf_expand",
    "q_from_series",
    "s_poly",
    "s_gf_from_polys",
    "s_gf_closed",
    "chebyshev_u",
    "chebyshev_gf",
    "DEPolySequence",
    "de_orth_polys",
    "de_gf_closed",
    "IdentityReport",
    "verify_orth_identity",
]


# ---------------------------------------------------------------------------
# cyclic runs
# ---------------------------------------------------------------------------


def runs(T, n: int) -> int:
    """Number of maximal cyclic runs of ``T`` inside the ``n``-cycle ``{1..n}``.

    Both the empty set and the full set count as zero runs.
    """
    T = set(T)
    if not T or len(T) == n:
        return 0
    return sum(1 for i in T if (i - 2) % n + 1 not in T)


def runs_gf_closed(variables: Sequence[str] = ("x", "y", "z")) -> tuple[MultiPoly, MultiPoly]:
    """Numerator and denominator of ``R(x, y, z)``."""
    x, y, z = MultiPoly.gens(variables)
    num = 2 * x * x * y * z + x * y * (1 - x) + x * (1 - x * y)
    den = (1 - x * y) * (1 - x) - x * x * y * z
    return num, den


def _runs_enumerate(n: int, y, z):
    total = 0
    for size in range(n + 1):
        for T in combinations(range(1, n + 1), size):
            total = total + y**size * z ** runs(T, n)
    return total


def runs_enumeration_gf(n_max: int, y_point, z_point) -> list[Fraction]:
    """Coefficients of ``x^1..x^n_max`` in ``R(x, y, z)`` at a rational point.

    The values are computed by enumerating subsets and by expanding the
    closed form; a mismatch raises ``AssertionError``.
    """
    if not 1 <= n_max <= 14:
        raise ValueError("n_max must lie in [1, 14]")
    y, z = Fraction(y_point), Fraction(z_point)
    num, den = runs_gf_closed()
    num, den = num.subs({"y": y, "z": z}), den.subs({"y": y, "z": z})
    series = expand_rational(num, den, "x", n_max).rational_coefficients()
    out = []
    for n in range(1, n_max + 1):
        direct = _runs_enumerate(n, y, z)
        if direct != series[n]:
            raise AssertionError("runs mismatch at n=%d: %s != %s" % (n, direct, series[n]))
        out.append(direct)
    return out


def runs_gf_series(order: int) -> TruncatedSeries:
    """Symbolic expansion of ``R`` in ``x`` with coefficients in ``y, z``."""
    return expand_rational(*runs_gf_closed(), "x", order)


def runs_polynomial(n: int) -> MultiPoly:
    """``sum over T of y^|T| z^runs(T)`` as a polynomial in ``y, z``."""
    y, z = MultiPoly.gens(("y", "z"))
    return _runs_enumerate(n, y, z)


# ---------------------------------------------------------------------------
# q-polynomials
# ---------------------------------------------------------------------------


def q_gf_closed(variables: Sequence[str] = ("x", "w", "y", "z")) -> tuple[MultiPoly, MultiPoly]:
    """Numerator and denominator of ``Q(w, x, y, z)``.

    ``variables`` names the roles ``(x, w, y, z)`` in that order.
    """
    x, w, y, z = MultiPoly.gens(variables)
    num = x * y * (-w * w * x * x + w * x * x * z + w * x * x + 2 * w * x + z)
    den = (w * x * x * y + w * x * x + x * y * z + w * x - x - 1) * (w * x - 1) * (x + 1)
    return num, den


def q_gf_expand(order_k: int) -> TruncatedSeries:
    """Expand ``Q`` in ``x`` through ``x^order_k``; coefficients live in ``(w, y, z)``."""
    if not 0 <= order_k <= 10:
        raise ValueError("order_k must lie in [0, 10]")
    return expand_rational(*q_gf_closed(), "x", order_k)


def q_from_series(series: TruncatedSeries, k: int, j: int, a: int) -> Polynomial:
    """Read ``q_{k,j,a}(w)`` off the coefficient of ``x^k y^j z^a``."""
    coeff = series[k]
    iw, iy, iz = (coeff.variables.index(v) for v in ("w", "y", "z"))
    out: dict[int, Fraction] = {}
    for exps, c in coeff.terms.items():
        if exps[iy] == j and exps[iz] == a:
            out[exps[iw]] = c
    deg = max(out, default=-1)
    return Polynomial(out.get(d, 0) for d in range(deg + 1))


# ---------------------------------------------------------------------------
# s_k polynomials
# ---------------------------------------------------------------------------


def _geom(r: Fraction, lo: int, hi: int) -> Fraction:
    return sum((r**b for b in range(lo, hi + 1)), Fraction(0))


def s_poly(k: int, params: ManovaParams) -> Polynomial:
    """The polynomial ``s_k(x)`` whose expectation under the positive part
    of the law vanishes.

    ``s_k(x) = sum_a (x/beta - 1)^a sum_j (-alpha)^(k-j) q_{k,j,a}(1/beta - 1)
    - alpha^(k-1) sum_{b=1}^{k-1} (1 - 1/beta)^b``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    alpha, beta = params.alpha, params.beta
    vals = q_values(k, params.eta)
    shift = Polynomial([Fraction(-1), 1 / beta])
    total = Polynomial()
    power = Polynomial([Fraction(1)])
    for a in range(k + 1):
        coeff = sum(((-alpha) ** (k - j) * vals[(j, a)] for j in range(max(a, 1), k + 1)), Fraction(0))
        if coeff:
            total = total + power * coeff
        power = power * shift
    return total - alpha ** (k - 1) * _geom(1 - 1 / beta, 1, k - 1)


def _poly_to_multi(p: Polynomial, name: str = "x") -> MultiPoly:
    return MultiPoly((name,), {(i,): c for i, c in enumerate(p.coefficients)})


def s_gf_from_polys(params: ManovaParams, order: int) -> TruncatedSeries:
    """``S(x, t) = sum_k s_k(x) t^k`` assembled term by term."""
    coeffs = [MultiPoly(("x",))] + [_poly_to_multi(s_poly(k, params)) for k in range(1, order + 1)]
    return TruncatedSeries("t", order, coeffs, ("x",))


def s_gf_closed(params: ManovaParams, order: int) -> TruncatedSeries:
    """``S(x, t)`` from the closed form
    ``Q(1/beta - 1, -alpha t, -1/alpha, x/beta - 1) + (1-beta)t/(1-alpha t)
    - beta(1-beta)t/(beta + alpha(1-beta)t)``.
    """
    alpha, beta = params.alpha, params.beta
    vars_ = ("t", "x")
    t, x = MultiPoly.gens(vars_)
    qn, qd = q_gf_closed(("u", "w", "y", "z"))
    sub = {"u": t * (-alpha), "w": 1 / beta - 1, "y": -1 / alpha, "z": x * (1 / beta) - 1}
    qn, qd = qn.subs(sub, vars_), qd.subs(sub, vars_)
    series = expand_rational(qn, qd, "t", order)
    series = series + expand_rational(t * (1 - beta), 1 - t * alpha, "t", order)
    series = series - expand_rational(t * (beta * (1 - beta)), beta + t * (alpha * (1 - beta)), "t", order)
    return series


# ---------------------------------------------------------------------------
# Chebyshev polynomials
# ---------------------------------------------------------------------------


def chebyshev_u(n: int) -> Polynomial:
    """Chebyshev ``U_n`` by ``U_n = 2x U_{n-1} - U_{n-2}``; ``U_{-1} = 0``."""
    if n < -1:
        raise ValueError("n must be >= -1")
    prev, cur = Polynomial(), Polynomial([1])
    if n == -1:
        return prev
    two_x = Polynomial([0, 2])
    for _ in range(n):
        prev, cur = cur, two_x * cur - prev
    return cur


def chebyshev_gf(order: int) -> TruncatedSeries:
    """Expansion of ``1 / (1 - 2tx + t^2)`` in ``t``."""
    t, x = MultiPoly.gens(("t", "x"))
    return expand_rational(MultiPoly.const(("t", "x"), 1), 1 - 2 * t * x + t * t, "t", order)


# ---------------------------------------------------------------------------
# orthogonal polynomials of the positive part
# ---------------------------------------------------------------------------


def _check_de_domain(params: ManovaParams) -> None:
    if params.alpha > min(params.beta, 1 - params.beta):
        raise ValueError("need alpha <= min(beta, 1 - beta), got alpha=%s, beta=%s" % (params.alpha, params.beta))


@dataclass(frozen=True)
class DEPolySequence:
    """Monic orthogonal polynomials ``f_0..f_n`` with rational coefficients.

    ``radical_forms`` holds the same polynomials computed over
    ``Q(sigma)``, ``sigma^2 = alpha(1-alpha)beta(1-beta)``, before the
    radical parts cancel.
    """

    params: ManovaParams
    polys: tuple
    radicand: Fraction
    radical_forms: tuple = field(repr=False)

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def __len__(self):
        return len(self.polys)


def de_orth_polys(params: ManovaParams, n_max: int) -> DEPolySequence:
    """``f_n(x) = (x - beta) sigma^(n-1) U_{n-1}(y / 2 sigma)
    - sigma^n U_{n-2}(y / 2 sigma) / (1 - alpha)`` with
    ``y = x - alpha(1-beta) - beta(1-alpha)``.

    Evaluated literally over the quadratic field; each result must come out
    rational and monic of degree ``n``.
    """
    _check_de_domain(params)
    if not 0 <= n_max <= 12:
        raise ValueError("n_max must lie in [0, 12]")
    alpha, beta = params.alpha, params.beta
    d = alpha * (1 - alpha) * beta * (1 - beta)
    sigma = QuadraticSurd.sqrt(d)
    centre = alpha * (1 - beta) + beta * (1 - alpha)
    # u = y / (2 sigma) as a polynomial in x over Q(sigma)
    inv2s = 1 / (2 * sigma)
    u = Polynomial([inv2s * (-centre), inv2s])
    x_minus_beta = Polynomial([QuadraticSurd(-beta, 0, d), QuadraticSurd(1, 0, d)])
    radical = [Polynomial([QuadraticSurd(1, 0, d)])]
    for n in range(1, n_max + 1):
        first = x_minus_beta * chebyshev_u(n - 1).compose(u) * sigma ** (n - 1)
        second = chebyshev_u(n - 2).compose(u) * (sigma**n / (1 - alpha)) if n >= 2 else Polynomial()
        radical.append(first - second)
    polys = []
    for n, p in enumerate(radical):
        if not all(c.is_rational() for c in p.coefficients):
            raise AssertionError("f_%d kept an irrational coefficient" % n)
        rp = Polynomial(c.a for c in p.coefficients)
        if rp.degree != n or rp.leading_coefficient() != 1:
            raise AssertionError("f_%d is not monic of degree %d" % (n, n))
        polys.append(rp)
    return DEPolySequence(params, tuple(polys), d, tuple(radical))


def de_gf_closed(params: ManovaParams, variables=("t", "x"), t_scale=Fraction(1)) -> tuple[MultiPoly, MultiPoly]:
    """Numerator and denominator of ``F(x, t * t_scale)``.

    ``F(x, t) = (1 + alpha(1-2beta)t - alpha^2 beta(1-beta)t^2)
    / (1 - t(x - alpha(1-beta) - beta(1-alpha)) + alpha(1-beta)beta(1-alpha)t^2)``.
    """
    alpha, beta = params.alpha, params.beta
    t, x = MultiPoly.gens(variables)
    t = t * Fraction(t_scale)
    num = 1 + t * (alpha * (1 - 2 * beta)) - t * t * (alpha**2 * beta * (1 - beta))
    den = 1 - t * (x - alpha * (1 - beta) - beta * (1 - alpha)) + t * t * (alpha * (1 - beta) * beta * (1 - alpha))
    return num, den


def de_gf_series(params: ManovaParams, order: int) -> TruncatedSeries:
    return expand_rational(*de_gf_closed(params), "t", order)


# ---------------------------------------------------------------------------
# the S-F identity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an exact series identity check.

    ``first_mismatch`` is ``(order, lhs, rhs)`` for the lowest differing
    coefficient; ``max_discrepancy`` is the largest absolute difference of
    any rational coefficient (0 when the identity holds).
    """

    passed: bool
    order: int
    max_discrepancy: Fraction
    first_mismatch: tuple | None = None


def _compare(lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    first, worst = None, Fraction(0)
    for k in range(lhs.order + 1):
        diff = lhs[k] - rhs[k]
        if not diff.is_zero():
            if first is None:
                first = (k, lhs[k], rhs[k])
            worst = max(worst, max(abs(c) for c in diff.terms.values()))
    return IdentityReport(first is None, lhs.order, worst, first)


def orth_identity_rhs(params: ManovaParams, order: int) -> TruncatedSeries:
    """``(F(x, t/beta) - 1)(beta - alpha(1-alpha)(1-beta)t^2)
    / (beta + alpha(1-2beta)t - alpha^2(1-beta)t^2)``.

    The substitution ``t -> t/beta`` is made on the closed form before
    expanding.
    """
    alpha, beta = params.alpha, params.beta
    vars_ = ("t", "x")
    t, _ = MultiPoly.gens(vars_)
    fn, fd = de_gf_closed(params, vars_, 1 / beta)
    num = (fn - fd) * (beta - t * t * (alpha * (1 - alpha) * (1 - beta)))
    den = fd * (beta + t * (alpha * (1 - 2 * beta)) - t * t * (alpha**2 * (1 - beta)))
    return expand_rational(num, den, "t", order)


def verify_orth_identity(params: ManovaParams, order: int) -> IdentityReport:
    """Check ``S(x, t)`` against the orthogonal-polynomial form built from ``F``.

    ``S`` is assembled from :func:`s_poly`; exact equality through ``t^order``
    is required.
    """
    _check_de_domain(params)
    if not 0 <= order <= 12:
        raise ValueError("order must lie in [0, 12]")
    return _compare(s_gf_from_polys(params, order), orth_identity_rhs(params, order))
