"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction` (aliased as ``BigRational``), which
already keeps lowest terms with a positive denominator.  On top of that this
module provides

* :class:`Polynomial` -- dense univariate polynomials over any exact ring
  (ints, Fractions, :class:`QuadraticSurd`),
* :class:`MultiPoly` -- sparse multivariate polynomials with rational
  coefficients over a fixed, named variable list,
* :class:`TruncatedSeries` -- power series in one main variable truncated at
  a fixed order, with :class:`MultiPoly` coefficients in the others,
* :class:`QuadraticSurd` -- elements ``a + b*sqrt(d)`` of a quadratic field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Mapping, Sequence

BigRational = Fraction

__all__ = [
    "BigRational",
    "as_rational",
    "rational_sqrt",
    "QuadraticSurd",
    "Polynomial",
    "poly_eval",
    "MultiPoly",
    "TruncatedSeries",
    "expand_rational",
    "NonInvertibleError",
]


class NonInvertibleError(ZeroDivisionError):
    """Raised when a series or ring element has no inverse."""


def as_rational(value, max_denominator: int = 10**6) -> Fraction:
    """Convert ints, Fractions, decimal strings or floats to a Fraction.

    Strings are parsed exactly (``"0.3"`` gives ``3/10``); floats are
    approximated by the closest rational with denominator at most
    ``max_denominator``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(float(value)).limit_denominator(max_denominator)


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# quadratic surds
# ---------------------------------------------------------------------------


class QuadraticSurd:
    """Exact number ``a + b*sqrt(d)`` with rational ``a, b`` and ``d > 0``.

    When ``d`` is the square of a rational the radical is folded into ``a``,
    so equality is always structural.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if d <= 0:
            raise ValueError("radicand must be positive")
        root = rational_sqrt(d)
        if root is not None:
            a, b, d = a + b * root, Fraction(0), Fraction(1)
        self.a, self.b, self.d = a, b, d

    @classmethod
    def sqrt(cls, d) -> "QuadraticSurd":
        return cls(0, 1, d)

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.b == 0:
                return QuadraticSurd(other.a, 0, self.d)
            if self.b != 0 and other.d != self.d:
                raise ValueError("cannot mix radicands %s and %s" % (self.d, other.d))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other, 0, self.d)
        return NotImplemented

    def _combine_d(self, other: "QuadraticSurd") -> Fraction:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._combine_d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._combine_d(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadraticSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("surd is zero")
        c = self.conjugate()
        return QuadraticSurd(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticSurd(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __abs__(self):
        return self if float(self) >= 0 else -self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticSurd):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return "QuadraticSurd(%s)" % self.a
        return "QuadraticSurd(%s + %s*sqrt(%s))" % (self.a, self.b, self.d)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "%s*sqrt(%s)" % (self.b, self.d)
        return "%s + %s*sqrt(%s)" % (self.a, self.b, self.d)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


def _is_zero(c) -> bool:
    return c == 0


class Polynomial:
    """Dense univariate polynomial, ``coefficients[i]`` multiplies ``x**i``.

    Coefficients may be ints, Fractions or :class:`QuadraticSurd` values.
    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = list(coefficients)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def leading_coefficient(self):
        return self.coefficients[-1] if self.coefficients else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def _wrap(self, other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial((other,))

    def __add__(self, other):
        other = self._wrap(other)
        return Polynomial(
            a + b for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=0)
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coefficients)
        p, q = self.coefficients, other.coefficients
        if not p or not q:
            return Polynomial()
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if _is_zero(a):
                continue
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner(x))``."""
        acc = Polynomial()
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(fn(c) for c in self.coefficients)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == (Polynomial((other,)).coefficients)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return "Polynomial(%r)" % (list(self.coefficients),)


def poly_eval(p: Polynomial, x):
    """Exact Horner evaluation of ``p`` at ``x``."""
    if isinstance(x, float):
        return p(x)
    return p(Fraction(x) if isinstance(x, int) else x)


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial with rational coefficients in named variables.

    Parameters
    ----------
    variables : sequence of str
        Fixed variable list; exponent tuples follow this order.
    terms : mapping
        ``{exponent_tuple: coefficient}``; zero coefficients are dropped.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError("exponent tuple %r does not match variables %r" % (exps, self.variables))
            c = Fraction(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise KeyError(name)
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]):
        return tuple(cls.var(variables, v) for v in variables)

    # -- helpers -------------------------------------------------------------
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ: %r vs %r" % (self.variables, other.variables))
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.variables, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero = (0,) * len(self.variables)
        return all(e == zero for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, **powers) -> Fraction:
        exps = tuple(powers.get(v, 0) for v in self.variables)
        return self.terms.get(exps, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, MultiPoly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_term())
        raise NonInvertibleError("can only divide a MultiPoly by a nonzero constant")

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- structural operations ----------------------------------------------
    def subs(self, values: Mapping[str, object], variables: Sequence[str] | None = None) -> "MultiPoly":
        """Substitute variables by rationals or by MultiPolys.

        Every MultiPoly in ``values`` must live on ``variables`` (by default
        the variables of ``self`` that are not substituted).
        """
        if variables is None:
            variables = tuple(v for v in self.variables if v not in values)
        variables = tuple(variables)
        images = []
        for v in self.variables:
            if v in values:
                val = values[v]
                if isinstance(val, MultiPoly):
                    if val.variables != variables:
                        raise ValueError("substituted polynomial must use variables %r" % (variables,))
                    images.append(val)
                else:
                    images.append(MultiPoly.const(variables, val))
            else:
                images.append(MultiPoly.var(variables, v))
        out = MultiPoly(variables)
        cache: dict = {}
        for exps, c in self.terms.items():
            term = MultiPoly.const(variables, c)
            for i, p in enumerate(exps):
                if p:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = images[i] ** p
                    term = term * cache[key]
            out = out + term
        return out

    def evaluate(self, **values):
        """Fully evaluate at rational points; returns a Fraction."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise KeyError("missing values for %r" % (missing,))
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, p in zip(self.variables, exps):
                if p:
                    term *= Fraction(values[v]) ** p
            total += term
        return total

    def split(self, name: str) -> list["MultiPoly"]:
        """Coefficients in ``name`` as MultiPolys in the remaining variables."""
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: dict[int, dict] = {}
        for exps, c in self.terms.items():
            buckets.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
        deg = max(buckets, default=-1)
        return [MultiPoly(rest, buckets.get(d, {})) for d in range(deg + 1)]

    def to_univariate(self) -> Polynomial:
        if len(self.variables) != 1:
            raise ValueError("not a univariate polynomial")
        deg = self.total_degree()
        return Polynomial(self.terms.get((d,), Fraction(0)) for d in range(deg + 1))

    @classmethod
    def from_univariate(cls, p: Polynomial, name: str) -> "MultiPoly":
        return cls((name,), {(i,): c for i, c in enumerate(p.coefficients)})

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(%r, 0)" % (self.variables,)
        parts = []
        for exps in sorted(self.terms):
            mono = "*".join(
                v if p == 1 else "%s^%d" % (v, p) for v, p in zip(self.variables, exps) if p
            )
            c = self.terms[exps]
            parts.append("%s%s" % (c, "*" + mono if mono else ""))
        return "MultiPoly(%s)" % " + ".join(parts)


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Power series in ``main_variable`` known exactly through ``x**order``.

    ``coefficients[k]`` is a :class:`MultiPoly` over ``aux_variables``.
    """

    __slots__ = ("main_variable", "order", "aux_variables", "coefficients")

    def __init__(self, main_variable: str, order: int, coefficients: Sequence, aux_variables: Sequence[str] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.main_variable = main_variable
        self.order = order
        self.aux_variables = tuple(aux_variables)
        coeffs = []
        for k in range(order + 1):
            c = coefficients[k] if k < len(coefficients) else 0
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(self.aux_variables, c)
            elif c.variables != self.aux_variables:
                raise ValueError("coefficient variables %r differ from %r" % (c.variables, self.aux_variables))
            coeffs.append(c)
        self.coefficients = tuple(coeffs)

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_rationals(cls, main_variable: str, values: Sequence, order: int | None = None) -> "TruncatedSeries":
        order = len(values) - 1 if order is None else order
        return cls(main_variable, order, [Fraction(v) for v in values])

    @classmethod
    def variable(cls, main_variable: str, order: int, aux_variables: Sequence[str] = ()) -> "TruncatedSeries":
        return cls(main_variable, order, [0, 1], aux_variables)

    @classmethod
    def one(cls, main_variable: str, order: int, aux_variables: Sequence[str] = ()) -> "TruncatedSeries":
        return cls(main_variable, order, [1], aux_variables)

    def _like(self, coeffs) -> "TruncatedSeries":
        return TruncatedSeries(self.main_variable, self.order, coeffs, self.aux_variables)

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if (other.main_variable, other.order, other.aux_variables) != (
                self.main_variable, self.order, self.aux_variables,
            ):
                raise ValueError("incompatible series")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self._like([other])
        return NotImplemented

    # -- access --------------------------------------------------------------
    def __getitem__(self, k: int) -> MultiPoly:
        return self.coefficients[k]

    def rational_coefficients(self) -> list[Fraction]:
        out = []
        for c in self.coefficients:
            if not c.is_constant():
                raise ValueError("series has non-constant coefficients")
            out.append(c.constant_term())
        return out

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._like([a + b for a, b in zip(self.coefficients, o.coefficients)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coefficients])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like([a * other for a in self.coefficients])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        K = self.order
        out = [MultiPoly(self.aux_variables) for _ in range(K + 1)]
        for i, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            for j in range(K + 1 - i):
                b = o.coefficients[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coefficients[0]
        if c0.is_zero() or not c0.is_constant():
            raise NonInvertibleError("non-invertible denominator: constant term %r" % (c0,))
        inv0 = 1 / c0.constant_term()
        out = [MultiPoly.const(self.aux_variables, inv0)]
        for n in range(1, self.order + 1):
            acc = MultiPoly(self.aux_variables)
            for i in range(1, n + 1):
                acc = acc + self.coefficients[i] * out[n - i]
            out.append(acc * (-inv0))
        return self._like(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self._like([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.main_variable == other.main_variable
            and self.order == other.order
            and self.aux_variables == other.aux_variables
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.main_variable, self.order, self.coefficients))

    # -- structural ----------------------------------------------------------
    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return TruncatedSeries(self.main_variable, order, self.coefficients, self.aux_variables)

    def valuation(self) -> int:
        for k, c in enumerate(self.coefficients):
            if not c.is_zero():
                return k
        return self.order + 1

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Return ``self(inner)``; ``inner`` must have zero constant term."""
        inner = self._lift(inner)
        if not inner.coefficients[0].is_zero():
            raise ValueError("inner series must have zero constant term")
        acc = self._like([])
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def scale_variable(self, factor) -> "TruncatedSeries":
        """Substitute ``x -> factor * x``."""
        factor = Fraction(factor)
        return self._like([c * factor**k for k, c in enumerate(self.coefficients)])

    def divide_by_variable(self, m: int = 1) -> "TruncatedSeries":
        """Exact division by ``x**m``; the order drops by ``m``."""
        for k in range(m):
            if not self.coefficients[k].is_zero():
                raise NonInvertibleError("series is not divisible by %s^%d" % (self.main_variable, m))
        return TruncatedSeries(self.main_variable, self.order - m, self.coefficients[m:], self.aux_variables)

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series with constant term 1."""
        if self.coefficients[0] != MultiPoly.const(self.aux_variables, 1):
            raise NonInvertibleError("sqrt needs constant term 1")
        out = [MultiPoly.const(self.aux_variables, 1)]
        for n in range(1, self.order + 1):
            acc = self.coefficients[n]
            for i in range(1, n):
                acc = acc - out[i] * out[n - i]
            out.append(acc * Fraction(1, 2))
        return self._like(out)

    def __repr__(self):
        return "TruncatedSeries(%s, order=%d, %r)" % (self.main_variable, self.order, list(self.coefficients))


def expand_rational(numerator: MultiPoly, denominator: MultiPoly, main_variable: str, order: int) -> TruncatedSeries:
    """Expand ``numerator / denominator`` as a series in ``main_variable``.

    Both polynomials must share a variable list containing ``main_variable``;
    the series coefficients are exact MultiPolys in the remaining variables.

    Raises
    ------
    NonInvertibleError
        If the denominator's constant term in ``main_variable`` is not a
        nonzero constant.
    """
    if numerator.variables != denominator.variables:
        raise ValueError("numerator and denominator must share variables")
    aux = tuple(v for v in numerator.variables if v != main_variable)
    num = TruncatedSeries(main_variable, order, numerator.split(main_variable)[: order + 1], aux)
    den = TruncatedSeries(main_variable, order, denominator.split(main_variable)[: order + 1], aux)
    return num * den.inverse()
