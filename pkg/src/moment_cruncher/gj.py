"""Goulden-Jackson cluster method for marked consecutive-pattern occurrences.

For a reduced pattern set P over an alphabet of size d, with each pattern
v carrying marker t_v, the weight enumerator

    sum over words w of s^|w| * prod_v t_v^(occurrences of v in w)

equals 1 / (1 - d*s - sum_v C_v), where the cluster generating functions
solve the linear system

    C_v = (t_v - 1) * (s^|v| + sum_u C_u * (u:v)(s))

and (u:v)(s) is the overlap polynomial of :func:`correlation_poly`.  The
system is solved by Cramer's rule with fraction-free (Bareiss) determinants
over polynomials in s and the markers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ExactDivisionError, NotReduced, SingularSystem
from .exact import LaurentPoly, Poly
from .families import GFFamily
from .series import BIVARIATE, UNIVARIATE, RationalGF


@dataclass(frozen=True)
class PatternSet:
    """Patterns (strings of single-character symbols) with marker indices 1 or 2."""

    patterns: tuple[str, ...]
    marks: tuple[int, ...] = ()

    def __post_init__(self):
        patterns = tuple(self.patterns)
        marks = tuple(self.marks) if self.marks else (1,) * len(patterns)
        if not patterns:
            raise ValueError("empty pattern set")
        if len(marks) != len(patterns):
            raise ValueError("one mark per pattern")
        if any(not p for p in patterns):
            raise ValueError("patterns must be nonempty")
        if len(set(patterns)) != len(patterns):
            raise NotReduced("patterns must be distinct")
        if any(m not in (1, 2) for m in marks):
            raise ValueError("marks must be 1 or 2")
        for u in patterns:
            for v in patterns:
                if u != v and u in v:
                    raise NotReduced(f"{u!r} is a factor of {v!r}")
        object.__setattr__(self, "patterns", patterns)
        object.__setattr__(self, "marks", marks)

    @property
    def marker_count(self) -> int:
        return 2 if 2 in self.marks else 1

    @property
    def markers(self) -> tuple[str, ...]:
        return BIVARIATE if self.marker_count == 2 else UNIVARIATE

    @property
    def longest(self) -> int:
        return max(len(p) for p in self.patterns)

    @property
    def symbols(self) -> list[str]:
        return sorted(set("".join(self.patterns)))

    def mark_of(self, pattern: str) -> int:
        return self.marks[self.patterns.index(pattern)]


def parse_patterns(text: str) -> PatternSet:
    """Parse ``"HH,TT"`` or ``"HH:t1,TT:t2"``."""
    patterns, marks = [], []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        word, _, mark = item.partition(":")
        word = word.strip()
        mark = mark.strip()
        if mark in ("", "t", "t1"):
            marks.append(1)
        elif mark == "t2":
            marks.append(2)
        else:
            raise ValueError(f"unknown marker {mark!r} (use t, t1 or t2)")
        patterns.append(word)
    return PatternSet(tuple(patterns), tuple(marks))


def correlation_poly(u: str, v: str, var: str = "s") -> Poly:
    """Sum of s^(|v| - k) over 1 <= k < min(|u|, |v|) with suffix_k(u) == prefix_k(v)."""
    if not u or not v:
        raise ValueError("words must be nonempty")
    coeffs = [0] * len(v)
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            coeffs[len(v) - k] += 1
    return Poly(tuple(coeffs), var)


def _bareiss_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return m[k][k] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else val.exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def weight_enumerator(d: int, P: PatternSet) -> RationalGF:
    """Counting GF in s with occurrences of each pattern marked (t, or t1/t2)."""
    if d < 2:
        raise ValueError("alphabet size must be at least 2")
    if len(P.symbols) > d:
        raise ValueError(f"patterns use {len(P.symbols)} symbols but the alphabet has {d}")
    markers = P.markers
    variables = ("s",) + markers
    one = LaurentPoly.constant(1, variables)
    s = LaurentPoly.var("s", variables)

    def x(v):
        name = "t" if markers == UNIVARIATE else f"t{P.mark_of(v)}"
        return LaurentPoly.var(name, variables) - 1

    def lift(poly: Poly) -> LaurentPoly:
        return LaurentPoly({(k,) + (0,) * len(markers): c for k, c in enumerate(poly.coeffs)}, variables)

    pats = P.patterns
    A = [[(one if u == v else one * 0) - x(v) * lift(correlation_poly(u, v)) for u in pats] for v in pats]
    b = [x(v) * s ** len(v) for v in pats]
    try:
        D = _bareiss_det(A)
        if D.is_zero():
            raise SingularSystem("cluster system is singular")
        N = one * 0
        for col in range(len(pats)):
            Ac = [row[:col] + [b[i]] + row[col + 1:] for i, row in enumerate(A)]
            N = N + _bareiss_det(Ac)
    except ExactDivisionError as exc:
        raise SingularSystem(f"elimination failed: {exc}") from None
    den = D - s * D * d - N
    return RationalGF.from_laurent(D, den, markers)


def probability_gf(F: RationalGF, d: int) -> RationalGF:
    """Rescale a counting GF by s -> s/d so each coefficient is a PGF."""
    return F.scale_s(Fraction(1, d))


def avoid_counts(d: int, P: PatternSet, n_max: int) -> list[int]:
    """Number of length-n words containing no pattern (all markers set to 0)."""
    F = weight_enumerator(d, P)
    return [int(c) for c in F.s_coefficients(0, n_max)]


def pattern_family(d: int, P: PatternSet, n0: int | None = None) -> GFFamily:
    name = f"gj(d={d}; " + ",".join(
        p if P.marker_count == 1 else f"{p}:t{m}" for p, m in zip(P.patterns, P.marks)) + ")"
    return GFFamily(probability_gf(weight_enumerator(d, P), d), name,
                    n0=2 * P.longest if n0 is None else n0)
