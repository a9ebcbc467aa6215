"""Factorial -> raw -> central -> normalized moments, uni- and bivariate.

Odd normalized moments carry a square root of the variance.  To stay in
the rationals we store ``beta[2r+1] = m[2r+1] / m2^r``; the true normalized
moment is ``beta / sqrt(m2)``.  Correlations are stored as the signed
square ``sign(cov) * cov^2 / (varX * varY)`` plus a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateVariance, OrderTooLow
from .exact import fmt_q, stirling2
from .series import FactorialMomentVector


def raw_from_factorial(F: Sequence) -> tuple[Fraction, ...]:
    """E[X^r] = sum_j S(r, j) F[j]."""
    return tuple(sum((stirling2(r, j) * F[j] for j in range(r + 1)), Fraction(0))
                 for r in range(len(F)))


def central_from_raw(raw: Sequence) -> tuple[Fraction, ...]:
    if raw[0] != 1:
        raise ValueError("raw moments must be normalized (raw[0] = 1)")
    mu = raw[1] if len(raw) > 1 else Fraction(0)
    out = []
    for r in range(len(raw)):
        out.append(sum((math.comb(r, i) * raw[i] * (-mu) ** (r - i) for i in range(r + 1)), Fraction(0)))
    return tuple(out)


def normalize(central: Sequence) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Return (alpha_2, alpha_4, ...) and (beta_3, beta_5, ...)."""
    if len(central) < 3:
        raise ValueError("need central moments through order 2")
    m2 = central[2]
    if m2 == 0:
        raise DegenerateVariance("variance is zero")
    alpha = tuple(central[2 * r] / m2 ** r for r in range(1, (len(central) - 1) // 2 + 1))
    beta = tuple(central[2 * r + 1] / m2 ** r for r in range(1, (len(central) - 2) // 2 + 1))
    return alpha, beta


@dataclass(frozen=True)
class MomentTable:
    n: int
    mean: Fraction
    central: tuple[Fraction, ...]
    alpha_even: tuple[Fraction, ...]
    beta_odd: tuple[Fraction, ...]

    @property
    def variance(self) -> Fraction:
        return self.central[2]

    def alpha_odd_numeric(self) -> tuple[float, ...]:
        if not self.beta_odd:
            return ()
        root = math.sqrt(self.central[2])
        return tuple(float(b) / root for b in self.beta_odd)

    def to_json(self) -> dict:
        return {"n": self.n, "mean": fmt_q(self.mean),
                "central": [fmt_q(c) for c in self.central],
                "alphaEven": [fmt_q(a) for a in self.alpha_even],
                "betaOdd": [fmt_q(b) for b in self.beta_odd],
                "alphaOddNumeric": list(self.alpha_odd_numeric())}


def moment_table(fmv: FactorialMomentVector) -> MomentTable:
    raw = raw_from_factorial(fmv.F)
    central = central_from_raw(raw)
    mean = raw[1] if len(raw) > 1 else Fraction(0)
    try:
        alpha, beta = normalize(central)
    except (DegenerateVariance, ValueError):
        alpha, beta = (), ()
    return MomentTable(fmv.n, mean, central, alpha, beta)


@dataclass(frozen=True)
class BivariateMomentTable:
    n: int
    mean: tuple[Fraction, Fraction]
    mixed_raw: tuple[tuple[Fraction, ...], ...]
    mixed_central: tuple[tuple[Fraction, ...], ...]

    @property
    def cap(self) -> int:
        return len(self.mixed_central) - 1

    def m(self, i: int, j: int) -> Fraction:
        return self.mixed_central[i][j]

    def marginal(self, axis: int) -> MomentTable:
        if axis == 0:
            central = tuple(row[0] for row in self.mixed_central)
        else:
            central = tuple(self.mixed_central[0])
        try:
            alpha, beta = normalize(central)
        except (DegenerateVariance, ValueError):
            alpha, beta = (), ()
        return MomentTable(self.n, self.mean[axis], central, alpha, beta)

    def to_json(self) -> dict:
        mx, my = self.marginal(0), self.marginal(1)
        return {"n": self.n, "mean": [fmt_q(m) for m in self.mean],
                "central": [[fmt_q(c) for c in mx.central], [fmt_q(c) for c in my.central]],
                "alphaEven": [[fmt_q(a) for a in mx.alpha_even], [fmt_q(a) for a in my.alpha_even]],
                "betaOdd": [[fmt_q(b) for b in mx.beta_odd], [fmt_q(b) for b in my.beta_odd]],
                "mixedCentral": [[i, j, fmt_q(self.mixed_central[i][j])]
                                 for i in range(self.cap + 1) for j in range(self.cap + 1)]}


def mixed_moments(fmv: FactorialMomentVector, cap: int) -> BivariateMomentTable:
    """Mixed raw and central moments m_{i,j} for i, j <= cap."""
    if not fmv.bivariate:
        raise ValueError("mixed moments need a bivariate factorial moment vector")
    J, K = fmv.caps
    if J < cap or K < cap:
        raise OrderTooLow(f"factorial moments computed to {fmv.caps}, need ({cap}, {cap})")
    F = fmv.F
    rng = range(cap + 1)
    # apply Stirling in each coordinate separately
    half = [[sum((stirling2(a, i) * F[i][j] for i in range(a + 1)), Fraction(0)) for j in rng] for a in rng]
    raw = tuple(tuple(sum((stirling2(b, j) * half[a][j] for j in range(b + 1)), Fraction(0)) for b in rng)
                for a in rng)
    mx, my = raw[1][0] if cap >= 1 else Fraction(0), raw[0][1] if cap >= 1 else Fraction(0)
    # recenter one coordinate at a time
    half = [[sum((math.comb(a, i) * raw[i][b] * (-mx) ** (a - i) for i in range(a + 1)), Fraction(0))
             for b in rng] for a in rng]
    central = tuple(tuple(sum((math.comb(b, j) * half[a][j] * (-my) ** (b - j) for j in range(b + 1)),
                              Fraction(0)) for b in rng) for a in rng)
    return BivariateMomentTable(fmv.n, (mx, my), raw, central)


@dataclass(frozen=True)
class CorrelationValue:
    n: int
    covariance: Fraction
    correlation_squared_signed: Fraction
    correlation_numeric: float

    def to_json(self) -> dict:
        return {"n": self.n, "covariance": fmt_q(self.covariance),
                "correlationSquaredSigned": fmt_q(self.correlation_squared_signed),
                "correlationNumeric": self.correlation_numeric}


def signed_square_correlation(cov, vx, vy) -> Fraction:
    sq = Fraction(cov) ** 2 / (Fraction(vx) * vy)
    return -sq if cov < 0 else sq


def correlation_at(table: BivariateMomentTable) -> CorrelationValue:
    if table.cap < 2:
        raise OrderTooLow("need mixed moments through order 2")
    cov, vx, vy = table.m(1, 1), table.m(2, 0), table.m(0, 2)
    if vx == 0 or vy == 0:
        raise DegenerateVariance("a marginal variance is zero")
    signed = signed_square_correlation(cov, vx, vy)
    numeric = math.copysign(math.sqrt(abs(signed)), float(signed))
    return CorrelationValue(table.n, cov, signed, max(-1.0, min(1.0, numeric)))
