"""Rational generating functions R(t, s) and their expansion in s.

The coefficient of ``s^n`` in ``R`` is the (unnormalized) generating
polynomial ``Q_n`` of the n-th member of a family of discrete random
variables.  Two independent routes extract it:

* :func:`expand_exact` runs the denominator recurrence over Laurent
  polynomials in the markers and returns full distributions;
* :func:`expand_truncated` substitutes ``t = 1 + u`` first and runs the same
  recurrence over truncated series, reading factorial moments straight off
  the ``u`` coefficients.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (DegenerateWeight, ExactDivisionError, ExpansionError,
                     InadmissibleDenominator, NotADistribution)
from .exact import LaurentPoly, TruncatedSeries, common_denominator, fmt_q, laurent_expand_at_one

Value = Union[int, tuple[int, int]]

UNIVARIATE = ("t",)
BIVARIATE = ("t1", "t2")


def _trim(coeffs: Sequence[LaurentPoly]) -> tuple[LaurentPoly, ...]:
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class RationalGF:
    """``N(s)/D(s)`` with Laurent-polynomial coefficients in the markers.

    ``num[k]`` and ``den[k]`` are the coefficients of ``s^k``.  The
    denominator's constant term must not vanish at markers = 1.
    """

    num: tuple[LaurentPoly, ...]
    den: tuple[LaurentPoly, ...]
    markers: tuple[str, ...] = UNIVARIATE

    def __post_init__(self):
        markers = tuple(self.markers)
        if markers not in (UNIVARIATE, BIVARIATE):
            raise ValueError(f"markers must be {UNIVARIATE} or {BIVARIATE}, got {markers}")
        num = _trim(self.num)
        den = _trim(self.den)
        for c in num + den:
            if c.variables != markers:
                raise ValueError(f"coefficient over {c.variables}, expected {markers}")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den[0].is_zero():
            raise InadmissibleDenominator("denominator vanishes at s = 0")
        if den[0].evaluate([1] * len(markers)) == 0:
            raise InadmissibleDenominator("denominator constant term vanishes at markers = 1")
        object.__setattr__(self, "markers", markers)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def marker_count(self) -> int:
        return len(self.markers)

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly, markers=None, s: str = "s") -> "RationalGF":
        """Build from Laurent polynomials over ``(s, *markers)`` with no negative powers of s."""
        markers = tuple(markers) if markers is not None else tuple(v for v in num.variables if v != s)
        full = (s,) + markers
        num = num.with_variables(full) if num.variables != full else num
        den = den.with_variables(full) if den.variables != full else den
        parts = []
        for p in (num, den):
            groups = p.split(s)
            if groups and min(groups) < 0:
                raise ValueError("negative power of s")
            top = max(groups) if groups else -1
            parts.append([groups.get(k, LaurentPoly({}, markers)) for k in range(top + 1)])
        return cls(tuple(parts[0]), tuple(parts[1]), markers)

    @classmethod
    def from_coefficients(cls, num: Sequence, den: Sequence, markers=UNIVARIATE) -> "RationalGF":
        """Convenience constructor; scalar entries are promoted to constants."""
        def lift(c):
            return c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c, markers)
        return cls(tuple(lift(c) for c in num), tuple(lift(c) for c in den), tuple(markers))

    def scale_s(self, factor) -> "RationalGF":
        """Substitute ``s -> factor * s``."""
        f = Fraction(factor)
        return RationalGF(tuple(c * f ** k for k, c in enumerate(self.num)),
                          tuple(c * f ** k for k, c in enumerate(self.den)), self.markers)

    def specialize(self, value) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """Evaluate every coefficient at markers = ``value`` (scalar or per-marker sequence)."""
        vals = [value] * self.marker_count if not isinstance(value, (list, tuple)) else list(value)
        return (tuple(c.evaluate(vals) for c in self.num), tuple(c.evaluate(vals) for c in self.den))

    def s_coefficients(self, value, n_max: int) -> list[Fraction]:
        """Coefficients of s^0..s^n_max after specializing the markers."""
        num, den = self.specialize(value)
        if not den[0]:
            raise ZeroDivisionError("denominator vanishes at s = 0 after specialization")
        out = []
        for n in range(n_max + 1):
            acc = num[n] if n < len(num) else Fraction(0)
            for k in range(1, min(n, len(den) - 1) + 1):
                acc -= den[k] * out[n - k]
            out.append(acc / den[0])
        return out

    def __str__(self):
        def render(cs):
            parts = []
            for k, c in enumerate(cs):
                if c.is_zero():
                    continue
                body = str(c)
                sk = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
                if not sk:
                    parts.append(f"({body})")
                else:
                    parts.append(f"({body})*{sk}")
            return " + ".join(parts) or "0"
        return f"[{render(self.num)}] / [{render(self.den)}]"

    def to_json(self) -> dict:
        def enc(cs):
            return [[[list(e), fmt_q(c)] for e, c in sorted(p.items())] for p in cs]
        return {"markers": list(self.markers), "num": enc(self.num), "den": enc(self.den),
                "text": str(self)}


@dataclass(frozen=True)
class Distribution:
    """Exact finite distribution of the n-th family member."""

    n: int
    support: tuple[tuple[Value, Fraction], ...]
    signed: bool = False

    def __post_init__(self):
        support = tuple(sorted((v, Fraction(p)) for v, p in self.support))
        values = [v for v, _ in support]
        if len(set(values)) != len(values):
            raise ValueError("support entries must be distinct")
        if sum(p for _, p in support) != 1:
            raise NotADistribution(f"probabilities at n={self.n} do not sum to 1")
        if not self.signed and any(p < 0 for _, p in support):
            raise NotADistribution(f"negative probability at n={self.n}")
        object.__setattr__(self, "support", support)

    @property
    def bivariate(self) -> bool:
        return bool(self.support) and isinstance(self.support[0][0], tuple)

    def as_dict(self) -> dict:
        return dict(self.support)

    def probability(self, value) -> Fraction:
        return self.as_dict().get(value, Fraction(0))

    def factorial_moments(self, caps) -> tuple:
        """E[X^(j)] for j <= J, or E[X^(i) Y^(j)] for i <= J, j <= K."""
        if isinstance(caps, int):
            caps = (caps,)
        ints, den = common_denominator([p for _, p in self.support])
        if not self.bivariate:
            J = caps[0]
            out = []
            for j in range(J + 1):
                total = sum(c * math.perm(v, j) if v >= 0 else c * _falling(v, j)
                            for (v, _), c in zip(self.support, ints))
                out.append(Fraction(total, den))
            return tuple(out)
        J, K = caps
        rows = []
        for i in range(J + 1):
            row = []
            for j in range(K + 1):
                total = sum(c * _falling(a, i) * _falling(b, j)
                            for ((a, b), _), c in zip(self.support, ints))
                row.append(Fraction(total, den))
            rows.append(tuple(row))
        return tuple(rows)

    def to_json(self) -> dict:
        return {"n": self.n,
                "support": [[list(v) if isinstance(v, tuple) else v, fmt_q(p)] for v, p in self.support]}

    def csv_rows(self) -> list[list[str]]:
        if self.bivariate:
            return [["value1", "value2", "probability"]] + [
                [str(a), str(b), fmt_q(p)] for (a, b), p in self.support]
        return [["value", "probability"]] + [[str(v), fmt_q(p)] for v, p in self.support]


def _falling(x: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= x - i
    return out


@dataclass(frozen=True)
class FactorialMomentVector:
    """Normalized factorial moments of Q_n.

    ``F`` is a tuple (univariate) or a tuple of rows (bivariate, mixed
    falling-factorial moments).
    """

    n: int
    total_weight: Fraction
    F: tuple

    @property
    def bivariate(self) -> bool:
        return bool(self.F) and isinstance(self.F[0], tuple)

    @property
    def caps(self) -> tuple[int, ...]:
        if self.bivariate:
            return (len(self.F) - 1, len(self.F[0]) - 1)
        return (len(self.F) - 1,)


def _divide(acc: LaurentPoly, den0: LaurentPoly, n: int) -> LaurentPoly:
    try:
        return acc.exact_div(den0)
    except ExactDivisionError:
        raise ExpansionError(f"coefficient of s^{n} is not a Laurent polynomial in the markers") from None


def expand_exact(R: RationalGF, n_max: int, signed_weights: bool = False) -> list[Distribution]:
    """Distributions Q_0 .. Q_{n_max}, each normalized by Q_n(1)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return list(itertools.islice(iter_exact(R, signed_weights), n_max + 1))


def iter_exact(R: RationalGF, signed_weights: bool = False) -> Iterator[Distribution]:
    """Endless stream Q_0, Q_1, ... of the exact pathway."""
    zero = LaurentPoly({}, R.markers)
    den = R.den
    history: list[LaurentPoly] = []
    n = 0
    while True:
        acc = R.num[n] if n < len(R.num) else zero
        for k in range(1, min(n, len(den) - 1) + 1):
            if not den[k].is_zero():
                acc = acc - den[k] * history[n - k]
        q = _divide(acc, den[0], n)
        history.append(q)
        if len(history) > len(den):
            history[n - len(den)] = None  # no longer reachable by the recurrence
        yield _normalize(q, n, signed_weights)
        n += 1


def _normalize(q: LaurentPoly, n: int, signed_weights: bool) -> Distribution:
    weight = sum((c for _, c in q.items()), Fraction(0))
    if weight == 0:
        raise DegenerateWeight(f"Q_{n}(1) = 0")
    inv = 1 / weight
    if q.nvars == 1:
        support = tuple((e[0], c * inv) for e, c in q.items())
    else:
        support = tuple((tuple(e), c * inv) for e, c in q.items())
    negative = any(p < 0 for _, p in support)
    if negative:
        if not signed_weights:
            raise NotADistribution(f"negative weight in Q_{n}")
        warnings.warn(f"negative weight in Q_{n} (signed weights allowed)", stacklevel=3)
    return Distribution(n, support, signed=signed_weights)


def expand_truncated(R: RationalGF, n_range: Iterable[int], caps) -> list[FactorialMomentVector]:
    """Factorial moments of Q_n for each requested n, via the truncated ring.

    ``caps`` is ``J`` (or ``(J,)``) for one marker and ``(J, K)`` for two.
    Cost is linear in ``max(n_range)`` for fixed caps.
    """
    if isinstance(caps, int):
        caps = (caps,)
    caps = tuple(caps)
    if len(caps) != R.marker_count:
        raise ValueError(f"caps {caps} do not match {R.marker_count} marker(s)")
    wanted = sorted(set(n_range))
    if not wanted:
        return []
    num = [laurent_expand_at_one(c, caps) for c in R.num]
    den = [laurent_expand_at_one(c, caps) for c in R.den]
    inv0 = den[0].reciprocal()
    zero = TruncatedSeries.constant(0, caps)
    depth = len(den) - 1
    history: list[TruncatedSeries] = []
    results = {}
    target = set(wanted)
    for n in range(wanted[-1] + 1):
        acc = num[n] if n < len(num) else zero
        for k in range(1, min(n, depth) + 1):
            acc = acc - den[k] * history[-k]
        q = acc * inv0
        history.append(q)
        if len(history) > depth:
            history.pop(0)
        if n in target:
            results[n] = _factorial_vector(q, n)
    return [results[n] for n in wanted]


def _factorial_vector(q: TruncatedSeries, n: int) -> FactorialMomentVector:
    w = q.coeffs[0]
    if w == 0:
        raise DegenerateWeight(f"Q_{n}(1) = 0")
    inv = 1 / w
    if not q.bivariate:
        F = tuple(math.factorial(j) * c * inv for j, c in enumerate(q.coeffs))
    else:
        J, K = q.caps
        F = tuple(tuple(math.factorial(i) * math.factorial(j) * q[i, j] * inv for j in range(K + 1))
                  for i in range(J + 1))
    return FactorialMomentVector(n, w, F)
