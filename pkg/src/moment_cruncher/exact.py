"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  On top of them this module provides

* :class:`LaurentPoly` -- sparse polynomials in one or more formal variables
  whose exponents may be negative,
* :class:`Poly` -- dense univariate polynomials (used for formulas in ``n``
  and in the moment order ``r``),
* :class:`TruncatedSeries` -- dense power series in one or two variables,
  truncated at fixed caps,
* Stirling / binomial / double factorial tables.

Every value is immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from .errors import ExactDivisionError, NotAUnit

Rational = Fraction

__all__ = [
    "Rational",
    "fmt_q",
    "parse_q",
    "LaurentPoly",
    "Poly",
    "TruncatedSeries",
    "series_reciprocal",
    "laurent_expand_at_one",
    "stirling2",
    "double_factorial",
    "CombinatoricsTables",
    "combinatorics_tables",
    "common_denominator",
]


def fmt_q(x) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"`` when q = 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text: str) -> Fraction:
    return Fraction(text.strip())


def _is_scalar(x) -> bool:
    return isinstance(x, (int, _RationalABC)) and not isinstance(x, bool)


def common_denominator(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Rewrite rationals as integers over one shared denominator.

    Summing the integers avoids a gcd per addition, which dominates the
    cost of long exact sums.
    """
    den = 1
    for v in values:
        d = v.denominator
        if den % d:
            den = den // math.gcd(den, d) * d
    return [v.numerator * (den // v.denominator) for v in values], den


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients.  The empty map is the zero polynomial.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], object] | None = None,
                 variables: Sequence[str] = ("t",)):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                if isinstance(e, int):
                    e = (e,)
                if len(e) != k:
                    raise ValueError(f"exponent {e} does not match variables {self.variables}")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...]) -> "LaurentPoly":
        # terms already clean
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ("t",)) -> "LaurentPoly":
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def monomial(cls, exps, coeff=1, variables: Sequence[str] = ("t",)) -> "LaurentPoly":
        return cls({tuple(exps) if not isinstance(exps, int) else (exps,): coeff}, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "LaurentPoly":
        variables = tuple(variables)
        e = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name!r} is not one of {variables}")
        return cls({e: 1}, variables)

    # -- inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, exps) -> Fraction:
        if isinstance(exps, int):
            exps = (exps,)
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return not self._terms or (len(self._terms) == 1 and zero in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree_range(self, index: int = 0) -> tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        es = [e[index] for e in self._terms]
        return min(es), max(es)

    def evaluate(self, values) -> Fraction:
        """Evaluate at a point given as a mapping name -> value or a sequence."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.variables]
        elif _is_scalar(values):
            values = [values] * self.nvars
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(values, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def specialize(self, values: Mapping[str, object]) -> "LaurentPoly":
        """Substitute values for some variables; the rest stay formal."""
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        fixed = [(i, Fraction(values[v])) for i, v in enumerate(self.variables) if v in values]
        out: dict = {}
        for e, c in self._terms.items():
            for i, x in fixed:
                if e[i]:
                    c = c * x ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(out, [self.variables[i] for i in keep])

    def split(self, name: str) -> dict[int, "LaurentPoly"]:
        """Group terms by the exponent of ``name``; values live in the other variables."""
        idx = self.variables.index(name)
        rest = self.variables[:idx] + self.variables[idx + 1:]
        groups: dict[int, dict] = {}
        for e, c in self._terms.items():
            groups.setdefault(e[idx], {})[e[:idx] + e[idx + 1:]] = c
        return {k: LaurentPoly._raw(v, rest) for k, v in groups.items()}

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-embed into a larger (or reordered) variable tuple."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(variables)
            for i, k in zip(pos, e):
                new[i] = k
            out[tuple(new)] = c
        return LaurentPoly._raw(out, variables)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return LaurentPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            other = Fraction(other)
            if not other:
                return LaurentPoly._raw({}, self.variables)
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()}, self.variables)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        if self.nvars == 1:
            for (a,), c in self._terms.items():
                for (b,), d in other._terms.items():
                    k = (a + b,)
                    out[k] = get(k, 0) + c * d
        else:
            for e, c in self._terms.items():
                for f, d in other._terms.items():
                    k = tuple(x + y for x, y in zip(e, f))
                    out[k] = get(k, 0) + c * d
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ExactDivisionError("only monomials are invertible Laurent polynomials")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(x * k for x in e): c ** k}, self.variables)
        result = LaurentPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.exact_div(other)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring; raises :class:`ExactDivisionError` on a remainder."""
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self._terms:
            return self
        if len(other._terms) == 1:
            (e, c), = other._terms.items()
            inv = 1 / c
            return LaurentPoly._raw(
                {tuple(x - y for x, y in zip(f, e)): d * inv for f, d in self._terms.items()},
                self.variables)
        k = self.nvars
        # per-variable exponent box the quotient must live in
        lo, hi = [], []
        for i in range(k):
            a_lo, a_hi = self.degree_range(i)
            b_lo, b_hi = other.degree_range(i)
            lo.append(a_lo - b_lo)
            hi.append(a_hi - b_hi)
            if lo[-1] > hi[-1]:
                raise ExactDivisionError("not divisible")
        lead = max(other._terms)
        lead_c = other._terms[lead]
        rem = dict(self._terms)
        quot = {}
        while rem:
            e = max(rem)
            qe = tuple(x - y for x, y in zip(e, lead))
            if any(not (lo[i] <= qe[i] <= hi[i]) for i in range(k)):
                raise ExactDivisionError("not divisible")
            c = rem[e] / lead_c
            quot[qe] = c
            for f, d in other._terms.items():
                key = tuple(x + y for x, y in zip(qe, f))
                v = rem.get(key, 0) - c * d
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly._raw(quot, self.variables)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self._terms == other._terms
        if _is_scalar(other):
            return self._terms == LaurentPoly.constant(other, self.variables)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self!s}, variables={self.variables})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            if not mono:
                parts.append(fmt_q(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = fmt_q(c)
                parts.append(f"({cs})*{mono}" if "/" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients listed from the constant term upward."""

    coeffs: tuple[Fraction, ...] = ()
    var: str = "n"

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls, var: str = "n") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "n") -> "Poly":
        return cls((c,), var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if _is_scalar(other):
            return Poly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return Poly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(m)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(tuple(out), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        c = Fraction(other)
        return Poly(tuple(x / c for x in self.coeffs), self.var)

    def __pow__(self, k: int):
        result = Poly((1,), self.var)
        for _ in range(k):
            result = result * self
        return result

    def to_json(self) -> list[str]:
        return [fmt_q(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = fmt_q(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if "/" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Power series in one or two variables, dense, truncated at ``caps``.

    Univariate series have ``caps == (J,)`` and ``J + 1`` coefficients;
    bivariate ones have ``caps == (J, K)`` and a row-major
    ``(J + 1) * (K + 1)`` coefficient tuple.  Binary operations require equal
    caps.
    """

    __slots__ = ("caps", "coeffs")

    def __init__(self, coeffs: Iterable, caps):
        if isinstance(caps, int):
            caps = (caps,)
        caps = tuple(caps)
        if len(caps) not in (1, 2) or any(c < 0 for c in caps):
            raise ValueError(f"bad caps {caps}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        size = math.prod(c + 1 for c in caps)
        if len(coeffs) != size:
            raise ValueError(f"expected {size} coefficients for caps {caps}, got {len(coeffs)}")
        self.caps = caps
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, coeffs: tuple, caps: tuple) -> "TruncatedSeries":
        s = object.__new__(cls)
        s.caps = caps
        s.coeffs = coeffs
        return s

    @classmethod
    def from_list(cls, values: Sequence, J: int | None = None) -> "TruncatedSeries":
        J = len(values) - 1 if J is None else J
        vals = list(values[:J + 1]) + [0] * (J + 1 - len(values))
        return cls(vals, (J,))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], caps: tuple[int, int]) -> "TruncatedSeries":
        J, K = caps
        flat = []
        for i in range(J + 1):
            row = rows[i] if i < len(rows) else ()
            flat.extend(row[j] if j < len(row) else 0 for j in range(K + 1))
        return cls(flat, caps)

    @classmethod
    def constant(cls, c, caps) -> "TruncatedSeries":
        if isinstance(caps, int):
            caps = (caps,)
        size = math.prod(k + 1 for k in caps)
        return cls._raw((Fraction(c),) + (Fraction(0),) * (size - 1), tuple(caps))

    @property
    def bivariate(self) -> bool:
        return len(self.caps) == 2

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.coeffs[i * (self.caps[1] + 1) + j]
        if self.bivariate:
            raise TypeError("bivariate series needs an (i, j) index")
        return self.coeffs[idx]

    def to_nested(self):
        if not self.bivariate:
            return list(self.coeffs)
        w = self.caps[1] + 1
        return [list(self.coeffs[i * w:(i + 1) * w]) for i in range(self.caps[0] + 1)]

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            return False
        if other.caps != self.caps:
            raise ValueError(f"truncation caps differ: {self.caps} vs {other.caps}")
        return True

    def __add__(self, other):
        if _is_scalar(other):
            other = TruncatedSeries.constant(other, self.caps)
        elif not self._check(other):
            return NotImplemented
        return TruncatedSeries._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.caps)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(tuple(-a for a in self.coeffs), self.caps)

    def __sub__(self, other):
        if _is_scalar(other):
            other = TruncatedSeries.constant(other, self.caps)
        elif not self._check(other):
            return NotImplemented
        return TruncatedSeries._raw(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.caps)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = Fraction(other)
            return TruncatedSeries._raw(tuple(a * c for a in self.coeffs), self.caps)
        if not self._check(other):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = [0] * len(a)
        if not self.bivariate:
            J = self.caps[0]
            for i, x in enumerate(a):
                if x:
                    for j in range(J + 1 - i):
                        y = b[j]
                        if y:
                            out[i + j] += x * y
        else:
            J, K = self.caps
            w = K + 1
            nz_b = [(idx // w, idx % w, y) for idx, y in enumerate(b) if y]
            for idx, x in enumerate(a):
                if not x:
                    continue
                i1, j1 = divmod(idx, w)
                for i2, j2, y in nz_b:
                    if i1 + i2 <= J and j1 + j2 <= K:
                        out[(i1 + i2) * w + j1 + j2] += x * y
        return TruncatedSeries._raw(tuple(Fraction(v) for v in out), self.caps)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.constant(1, self.caps)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / Fraction(other))
        if not self._check(other):
            return NotImplemented
        return self * other.reciprocal()

    def reciprocal(self) -> "TruncatedSeries":
        return series_reciprocal(self)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.caps == other.caps and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.caps, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[fmt_q(c) for c in self.coeffs]}, caps={self.caps})"


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of ``f`` in the truncated ring."""
    c0 = f.coeffs[0]
    if not c0:
        raise NotAUnit("series has zero constant term")
    inv0 = 1 / c0
    if not f.bivariate:
        J = f.caps[0]
        a = f.coeffs
        g = [inv0] + [Fraction(0)] * J
        for k in range(1, J + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * g[k - i]
            g[k] = -acc * inv0
        return TruncatedSeries._raw(tuple(g), f.caps)
    J, K = f.caps
    w = K + 1
    nz = [(idx // w, idx % w, c) for idx, c in enumerate(f.coeffs) if c and idx]
    g = [Fraction(0)] * len(f.coeffs)
    g[0] = inv0
    for i in range(J + 1):
        for j in range(K + 1):
            if i == 0 and j == 0:
                continue
            acc = Fraction(0)
            for a, b, c in nz:
                if a <= i and b <= j:
                    acc += c * g[(i - a) * w + (j - b)]
            g[i * w + j] = -acc * inv0
    return TruncatedSeries._raw(tuple(g), f.caps)


@lru_cache(maxsize=None)
def _one_plus_u_power(e: int, J: int) -> tuple[Fraction, ...]:
    if e >= 0:
        return tuple(Fraction(math.comb(e, j)) for j in range(J + 1))
    base = TruncatedSeries.from_list([Fraction(math.comb(-e, j)) for j in range(J + 1)], J)
    return series_reciprocal(base).coeffs


def laurent_expand_at_one(p: LaurentPoly, caps) -> TruncatedSeries:
    """Taylor expansion of ``p(1 + u)`` (or ``p(1 + u, 1 + w)``) truncated at ``caps``.

    Negative powers go through :func:`series_reciprocal` of ``(1 + u)^k``.
    """
    if isinstance(caps, int):
        caps = (caps,)
    caps = tuple(caps)
    if p.nvars != len(caps):
        raise ValueError(f"{p.nvars} variables but caps {caps}")
    if len(caps) == 1:
        J = caps[0]
        out = [Fraction(0)] * (J + 1)
        for (e,), c in p.items():
            for j, b in enumerate(_one_plus_u_power(e, J)):
                out[j] += c * b
        return TruncatedSeries._raw(tuple(out), caps)
    J, K = caps
    w = K + 1
    out = [Fraction(0)] * ((J + 1) * w)
    for (e1, e2), c in p.items():
        xs = _one_plus_u_power(e1, J)
        ys = _one_plus_u_power(e2, K)
        for i, x in enumerate(xs):
            if x:
                cx = c * x
                for j, y in enumerate(ys):
                    if y:
                        out[i * w + j] += cx * y
    return TruncatedSeries._raw(tuple(out), caps)


# ---------------------------------------------------------------------------
# Combinatorial tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling_row(r: int) -> tuple[int, ...]:
    if r == 0:
        return (1,)
    prev = _stirling_row(r - 1)
    row = [0] * (r + 1)
    for j in range(1, r + 1):
        row[j] = j * (prev[j] if j < len(prev) else 0) + prev[j - 1]
    return tuple(row)


def stirling2(r: int, j: int) -> int:
    """Stirling number of the second kind S(r, j)."""
    if j < 0 or j > r:
        return 0
    return _stirling_row(r)[j]


def double_factorial(r: int) -> int:
    """(2r - 1)!! = 1 * 3 * 5 ... (2r - 1); equals 1 for r = 0."""
    out = 1
    for k in range(1, 2 * r, 2):
        out *= k
    return out


@dataclass(frozen=True)
class CombinatoricsTables:
    max_r: int
    stirling2: tuple[tuple[int, ...], ...]
    binomial: tuple[tuple[int, ...], ...]
    double_factorial: tuple[int, ...]


def combinatorics_tables(max_r: int) -> CombinatoricsTables:
    if max_r < 0:
        raise ValueError("max_r must be nonnegative")
    return CombinatoricsTables(
        max_r=max_r,
        stirling2=tuple(tuple(stirling2(r, j) for j in range(r + 1)) for r in range(max_r + 1)),
        binomial=tuple(tuple(math.comb(r, i) for i in range(r + 1)) for r in range(max_r + 1)),
        double_factorial=tuple(double_factorial(r) for r in range(max_r + 1)),
    )
