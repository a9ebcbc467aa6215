"""Families of distributions indexed by n, and the built-in catalogue.

A family answers two questions: the exact distribution at a given n, and
the (normalized) factorial moments for a batch of n.  GF-backed families
delegate to :mod:`moment_cruncher.series`; the arcsine family is computed
by dynamic programming over walk prefixes.

Arcsine positivity convention: among n fair +-1 steps with partial sums
S_0 = 0, S_1, ..., S_n, time unit i counts when S_i > 0, or S_i = 0 and
S_{i-1} > 0.  Equivalently S_{i-1} + S_i > 0, i.e. the i-th edge of the
path lies above the axis.  Under this convention the count is always even
for even n.
"""
from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import UnknownFamily
from .exact import LaurentPoly
from .series import (BIVARIATE, UNIVARIATE, Distribution, FactorialMomentVector, RationalGF,
                     expand_truncated, iter_exact)


_CACHE_LOCK = threading.RLock()


class Family:
    """Common interface.  Subclasses set ``name``, ``markers``, ``n0``, ``n_step``.

    ``n_step`` > 1 means moments are polynomial in n only along an
    arithmetic progression (starting at ``n0``); fitting code samples
    accordingly.
    """

    name: str = "family"
    markers: int = 1
    n0: int = 1
    n_step: int = 1

    def distribution(self, n: int) -> Distribution:
        raise NotImplementedError

    def factorial_moments(self, ns: Iterable[int], caps) -> list[FactorialMomentVector]:
        raise NotImplementedError

    def stable_from(self, order: int) -> int:
        """First n from which the moments through ``order`` are polynomial in n."""
        return self.n0

    def sample_ns(self, count: int, n0: int | None = None) -> list[int]:
        start = self.n0 if n0 is None else n0
        if self.n_step > 1:
            start += (self.n0 - start) % self.n_step
        return [start + i * self.n_step for i in range(count)]

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


@dataclass(repr=False)
class GFFamily(Family):
    gf: RationalGF
    name: str = "gf"
    n0: int = 1
    n_step: int = 1
    signed_weights: bool = False
    _cache: dict = field(default_factory=dict, compare=False)

    @property
    def markers(self) -> int:
        return self.gf.marker_count

    def distributions(self, n_max: int) -> list[Distribution]:
        # the exact stream is resumable, so growing n_max never recomputes
        key = ("exact", self.signed_weights)
        with _CACHE_LOCK:
            if key not in self._cache:
                self._cache[key] = ([], iter_exact(self.gf, self.signed_weights))
            done, stream = self._cache[key]
            while len(done) <= n_max:
                done.append(next(stream))
            return done[:n_max + 1]

    def distribution(self, n: int) -> Distribution:
        return self.distributions(n)[n]

    def factorial_moments(self, ns, caps) -> list[FactorialMomentVector]:
        return expand_truncated(self.gf, ns, caps)

    def stable_from(self, order: int) -> int:
        # The order-j derivative at markers = 1 is P_j(s) / D(1, s)^(j + 1) with
        # deg P_j <= (j + 1) * max(deg N, deg D); coefficients are polynomial
        # (when they are at all) once n exceeds deg P_j - deg D(1, s)^(j + 1).
        num, den = self.gf.specialize(1)
        den_at_one = max(k for k, c in enumerate(den) if c)
        excess = max(len(self.gf.num), len(self.gf.den)) - 1 - den_at_one
        return max(self.n0, (order + 1) * excess + 1)


class ArcsineFamily(Family):
    """Time spent positive by a fair +-1 walk of n steps (lead convention)."""

    name = "arcsine-positive-time"
    markers = 1
    n0 = 2
    n_step = 2

    def distribution(self, n: int) -> Distribution:
        # state: position -> {count: number of walks}
        states: dict[int, dict[int, int]] = {0: {0: 1}}
        for _ in range(n):
            nxt: dict[int, dict[int, int]] = {}
            for pos, counts in states.items():
                for step in (1, -1):
                    new = pos + step
                    bump = 1 if pos + new > 0 else 0
                    bucket = nxt.setdefault(new, {})
                    for c, w in counts.items():
                        bucket[c + bump] = bucket.get(c + bump, 0) + w
            states = nxt
        totals: dict[int, int] = {}
        for counts in states.values():
            for c, w in counts.items():
                totals[c] = totals.get(c, 0) + w
        return Distribution(n, tuple((c, Fraction(w, 2 ** n)) for c, w in totals.items()))

    def factorial_moments(self, ns, caps) -> list[FactorialMomentVector]:
        J = caps[0] if isinstance(caps, tuple) else caps
        wanted = sorted(set(ns))
        if not wanted:
            return []
        # state: position -> [sum over walks of C(count, j) for j <= J]
        states: dict[int, list[int]] = {0: [1] + [0] * J}
        out = {}
        if 0 in wanted:
            out[0] = FactorialMomentVector(0, Fraction(1), (Fraction(1),) + (Fraction(0),) * J)
        for n in range(1, wanted[-1] + 1):
            nxt: dict[int, list[int]] = {}
            for pos, vec in states.items():
                for step in (1, -1):
                    new = pos + step
                    if pos + new > 0:
                        moved = [vec[0]] + [vec[j] + vec[j - 1] for j in range(1, J + 1)]
                    else:
                        moved = vec
                    acc = nxt.get(new)
                    if acc is None:
                        nxt[new] = list(moved)
                    else:
                        for j in range(J + 1):
                            acc[j] += moved[j]
            states = nxt
            if n in wanted:
                sums = [0] * (J + 1)
                for vec in states.values():
                    for j in range(J + 1):
                        sums[j] += vec[j]
                total = 2 ** n
                F = tuple(Fraction(math.factorial(j) * sums[j], total) for j in range(J + 1))
                out[n] = FactorialMomentVector(n, Fraction(1), F)
        return [out[n] for n in wanted]


# ---------------------------------------------------------------------------
# GF constructors for the built-ins
# ---------------------------------------------------------------------------


def _t(power=1, coeff=1):
    return LaurentPoly({(power,): coeff}, UNIVARIATE)


def _t2(a, b, coeff=1):
    return LaurentPoly({(a, b): coeff}, BIVARIATE)


def coin_difference_gf(p=Fraction(1, 2)) -> RationalGF:
    """Heads minus tails: 1 / (1 - s (p t + (1 - p) / t))."""
    p = Fraction(p)
    step = _t(1, p) + _t(-1, 1 - p)
    return RationalGF((_t(0),), (_t(0), -step), UNIVARIATE)


def heads_count_gf(p=Fraction(1, 2)) -> RationalGF:
    """Number of heads: 1 / (1 - s (1 - p + p t))."""
    p = Fraction(p)
    step = _t(0, 1 - p) + _t(1, p)
    return RationalGF((_t(0),), (_t(0), -step), UNIVARIATE)


def point_mass_gf() -> RationalGF:
    return RationalGF((_t(0),), (_t(0), _t(0, -1)), UNIVARIATE)


def heads_tails_gf(p=Fraction(1, 2)) -> RationalGF:
    """(heads, tails) of n tosses: 1 / (1 - s (p t1 + (1 - p) t2))."""
    p = Fraction(p)
    step = _t2(1, 0, p) + _t2(0, 1, 1 - p)
    return RationalGF((_t2(0, 0),), (_t2(0, 0), -step), BIVARIATE)


def independent_coins_gf(p=Fraction(1, 2)) -> RationalGF:
    """Two independent coins tossed n times, markers on disjoint coordinates.

    1 / (1 - s (1 - p + p t1)(1 - p + p t2)).
    """
    p = Fraction(p)
    q = 1 - p
    step = _t2(0, 0, q * q) + _t2(1, 0, p * q) + _t2(0, 1, q * p) + _t2(1, 1, p * p)
    return RationalGF((_t2(0, 0),), (_t2(0, 0), -step), BIVARIATE)


BUILTINS = {
    "coin-difference": ("heads minus tails in n tosses of a p-coin (default p = 1/2)", True),
    "heads-count": ("number of heads in n tosses of a p-coin (default p = 1/2)", True),
    "arcsine-positive-time": ("time units a fair walk of n steps spends positive (lead convention)", False),
    "point-mass": ("constant 0 for every n (degenerate control)", False),
    "heads-tails": ("bivariate (heads, tails) of n tosses of a p-coin", True),
    "independent-coins": ("bivariate heads counts of two independent p-coins", True),
}


def builtin_family(name: str, p=None) -> Family:
    """Construct a built-in family; ``p`` is the head probability where relevant."""
    if name not in BUILTINS:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(BUILTINS)}")
    takes_p = BUILTINS[name][1]
    if p is not None and not takes_p:
        raise ValueError(f"family {name!r} takes no parameter")
    p = Fraction(1, 2) if p is None else Fraction(p)
    if takes_p and not (0 < p < 1):
        raise ValueError("p must lie strictly between 0 and 1")
    label = name if p == Fraction(1, 2) or not takes_p else f"{name}({p})"
    if name == "coin-difference":
        return GFFamily(coin_difference_gf(p), label, n0=1)
    if name == "heads-count":
        return GFFamily(heads_count_gf(p), label, n0=1)
    if name == "point-mass":
        return GFFamily(point_mass_gf(), label, n0=1)
    if name == "heads-tails":
        return GFFamily(heads_tails_gf(p), label, n0=1)
    if name == "independent-coins":
        return GFFamily(independent_coins_gf(p), label, n0=1)
    return ArcsineFamily()


_SPEC = re.compile(r"^\s*([a-z][a-z-]*)\s*(?:\(\s*([-0-9/ ]+)\s*\))?\s*$")


def parse_family(text: str) -> Family:
    """Parse ``"heads-count"`` or ``"heads-count(1/3)"``."""
    m = _SPEC.match(text)
    if not m:
        raise UnknownFamily(f"cannot parse family {text!r}")
    name, arg = m.groups()
    return builtin_family(name, Fraction(arg.replace(" ", "")) if arg else None)
