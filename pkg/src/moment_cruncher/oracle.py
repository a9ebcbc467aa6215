"""Ground truth by brute force.

Everything here is computed by direct counting over all words or walks, or
by repeated convolution.  Only :class:`fractions.Fraction` is shared with the
rest of the package; distributions are returned as plain dicts so the
cross-checks in the test suite compare two independent computations.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import BudgetExceeded
from .parallel import pmap

BUDGET = 10 ** 7

FILLER = "0123456789!#$%&*+<=>?@^_~"


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate.

    kind ``"words"``: ``alphabet`` size d, ``patterns`` maps pattern -> marker
    index (1 or 2).  kind ``"walks"``: ``steps`` maps step -> probability and
    ``statistic`` names a function of the step sequence.  kind
    ``"iid-sum"``: ``base`` maps value -> probability (values may be int
    pairs).
    """

    kind: str
    alphabet: int = 2
    patterns: Mapping[str, int] = field(default_factory=dict)
    steps: Mapping[int, Fraction] = field(default_factory=dict)
    statistic: str = "position"
    base: Mapping = field(default_factory=dict)
    n_max: int = 12

    def __post_init__(self):
        if self.kind not in ("words", "walks", "iid-sum"):
            raise ValueError(f"unknown enumeration kind {self.kind!r}")


def words_spec(d: int, patterns, n_max: int = 12) -> EnumerationSpec:
    if isinstance(patterns, str):
        patterns = {p: 1 for p in patterns.split(",")}
    elif not isinstance(patterns, Mapping):
        patterns = {p: 1 for p in patterns}
    return EnumerationSpec("words", alphabet=d, patterns=dict(patterns), n_max=n_max)


def fair_walk_spec(statistic: str = "position", n_max: int = 12) -> EnumerationSpec:
    return EnumerationSpec("walks", steps={1: Fraction(1, 2), -1: Fraction(1, 2)},
                           statistic=statistic, n_max=n_max)


def _alphabet(d: int, patterns: Mapping[str, int]) -> list[str]:
    used = sorted(set("".join(patterns)))
    if len(used) > d:
        raise ValueError(f"patterns use {len(used)} symbols, alphabet has {d}")
    fillers = [c for c in FILLER if c not in used]
    return used + fillers[:d - len(used)]


def _occurrences(word: str, pattern: str) -> int:
    L = len(pattern)
    return sum(1 for i in range(len(word) - L + 1) if word[i:i + L] == pattern)


def _count_words(letters: Sequence[str], patterns: Mapping[str, int], n: int, first: str | None) -> Counter:
    bivariate = 2 in patterns.values()
    counts: Counter = Counter()
    prefix = first or ""
    for tail in itertools.product(letters, repeat=n - len(prefix)):
        word = prefix + "".join(tail)
        c1 = c2 = 0
        for p, mark in patterns.items():
            k = _occurrences(word, p)
            if mark == 2:
                c2 += k
            else:
                c1 += k
        counts[(c1, c2) if bivariate else c1] += 1
    return counts


def enumerate_words(d: int, patterns: Mapping[str, int], n: int) -> dict:
    """Distribution of marked occurrence counts over all d^n words (uniform)."""
    if d ** n > BUDGET:
        raise BudgetExceeded(f"{d}^{n} words exceed the budget of {BUDGET}")
    letters = _alphabet(d, patterns)
    if n == 0:
        parts = [_count_words(letters, patterns, 0, None)]
    else:
        parts = pmap(lambda a: _count_words(letters, patterns, n, a), letters)
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return {k: Fraction(v, d ** n) for k, v in total.items()}


def _positive_time(path: Sequence[int]) -> int:
    pos = 0
    count = 0
    for step in path:
        new = pos + step
        if new > 0 or (new == 0 and pos > 0):
            count += 1
        pos = new
    return count


STATISTICS: dict[str, Callable[[Sequence[int]], object]] = {
    "position": lambda path: sum(path),
    "up-steps": lambda path: sum(1 for x in path if x > 0),
    "positive-time": _positive_time,
    "up-down": lambda path: (sum(1 for x in path if x > 0), sum(1 for x in path if x < 0)),
}


def enumerate_walks(steps: Mapping[int, Fraction], statistic: str, n: int) -> dict:
    """Distribution of a path statistic over all step sequences of length n."""
    if len(steps) ** n > BUDGET:
        raise BudgetExceeded(f"{len(steps)}^{n} walks exceed the budget of {BUDGET}")
    stat = STATISTICS[statistic]
    out: dict = {}
    for path in itertools.product(list(steps), repeat=n):
        prob = Fraction(1)
        for x in path:
            prob *= steps[x]
        key = stat(path)
        out[key] = out.get(key, 0) + prob
    return {k: v for k, v in out.items() if v}


def _add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def iid_sum(base: Mapping, n: int) -> dict:
    """n-fold convolution power of ``base``."""
    zero = (0,) * len(next(iter(base))) if isinstance(next(iter(base)), tuple) else 0
    dist = {zero: Fraction(1)}
    for _ in range(n):
        nxt: dict = {}
        for v, p in dist.items():
            for w, q in base.items():
                key = _add(v, w)
                nxt[key] = nxt.get(key, 0) + p * Fraction(q)
        dist = nxt
    return {k: v for k, v in dist.items() if v}


def enumerate_spec(spec: EnumerationSpec, n: int) -> dict:
    if n > spec.n_max:
        raise BudgetExceeded(f"n={n} exceeds the spec's n_max={spec.n_max}")
    if spec.kind == "words":
        return enumerate_words(spec.alphabet, spec.patterns, n)
    if spec.kind == "walks":
        return enumerate_walks(spec.steps, spec.statistic, n)
    return iid_sum(spec.base, n)


@dataclass(frozen=True)
class OracleMoments:
    raw: object
    central: object
    mean: object


def moments_by_enumeration(dist: Mapping, order: int) -> OracleMoments:
    """Raw and central moments summed directly over the distribution.

    Bivariate distributions (pair-valued keys) give mixed moments indexed
    ``[i][j]`` for i, j <= order.
    """
    items = list(dist.items())
    if items and isinstance(items[0][0], tuple):
        mx = sum(k[0] * p for k, p in items)
        my = sum(k[1] * p for k, p in items)
        raw = [[sum((Fraction(k[0]) ** i * k[1] ** j * p for k, p in items), Fraction(0))
                for j in range(order + 1)] for i in range(order + 1)]
        central = [[sum(((k[0] - mx) ** i * (k[1] - my) ** j * p for k, p in items), Fraction(0))
                    for j in range(order + 1)] for i in range(order + 1)]
        return OracleMoments(raw, central, (mx, my))
    mu = sum((k * p for k, p in items), Fraction(0))
    raw = [sum((Fraction(k) ** r * p for k, p in items), Fraction(0)) for r in range(order + 1)]
    central = [sum(((k - mu) ** r * p for k, p in items), Fraction(0)) for r in range(order + 1)]
    return OracleMoments(raw, central, mu)


def factorial_moments_by_enumeration(dist: Mapping, order: int) -> list:
    """E[X^(j)] (or mixed E[X^(i) Y^(j)]) summed directly."""
    def falling(x, j):
        return math.prod(x - i for i in range(j))
    items = list(dist.items())
    if items and isinstance(items[0][0], tuple):
        return [[sum((falling(k[0], i) * falling(k[1], j) * p for k, p in items), Fraction(0))
                 for j in range(order + 1)] for i in range(order + 1)]
    return [sum((falling(k, j) * p for k, p in items), Fraction(0)) for j in range(order + 1)]


def avoid_counts_automaton(d: int, patterns: Sequence[str], n_max: int) -> list[int]:
    """Words of each length avoiding every pattern, by a suffix automaton DP.

    State is the last (longest - 1) letters; a transition is rejected when
    the extended suffix ends with a pattern.
    """
    pats = list(patterns)
    letters = _alphabet(d, {p: 1 for p in pats})
    keep = max(len(p) for p in pats) - 1
    states = Counter({"": 1})
    out = [1]
    for _ in range(n_max):
        nxt: Counter = Counter()
        for suffix, w in states.items():
            for a in letters:
                ext = suffix + a
                if any(ext.endswith(p) for p in pats):
                    continue
                nxt[ext[-keep:] if keep else ""] += w
        states = nxt
        out.append(sum(states.values()))
    return out
