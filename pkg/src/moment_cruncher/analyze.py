"""Mean/variance formulas, normality verdicts, AnalyseMoms-style reports,
asymptotic correlation and histogram export.

Every limit here is the leading term of an exact expansion at n = infinity
of a ratio of fitted polynomials; nothing is decided in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .ansatz import (AsymptoticFormula, GuessCertificate, expand_at_infinity, guess_in_n_and_r,
                     guess_in_n_and_rs, guess_poly)
from .errors import DegenerateVariance, NoFit, NotEnoughPoints, NotIndependentlyNormal
from .exact import Poly, double_factorial, fmt_q
from .families import Family
from .moments import mixed_moments, moment_table
from .parallel import pmap

DEFAULT_R_MAX = 4
DEFAULT_DEPTH = 3
DEFAULT_PROBE = 40
DEFAULT_HOLD_OUT = 5

NORMAL = "normal"
NOT_NORMAL = "not-normal"
INCONCLUSIVE = "inconclusive"


def probe_ns(family: Family, n0: int | None = None, probe: int = DEFAULT_PROBE,
             hold_out: int = DEFAULT_HOLD_OUT) -> list[int]:
    """n0 .. n0 + probe (in the family's step) plus ``hold_out`` further points."""
    return family.sample_ns(probe + 1 + hold_out, n0)


@dataclass
class MomentFit:
    """Central moments m_j(n) fitted as polynomials along a probe range."""

    family: str
    ns: list[int]
    polys: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    mean: Poly | None = None
    mean_certificate: GuessCertificate | None = None

    def poly(self, key) -> Poly | None:
        return self.polys.get(key)


def _fit_series(data, max_deg, hold_out):
    try:
        return guess_poly(data, max_deg, hold_out, n0=data[0][0])
    except (NoFit, NotEnoughPoints) as exc:
        return exc


def _order_ns(family: Family, order: int, n0: int | None, probe: int, hold_out: int) -> list[int]:
    start = family.stable_from(order) if n0 is None else n0
    return probe_ns(family, start, probe, hold_out)


def fit_moments(family: Family, order: int, n0: int | None = None, probe: int = DEFAULT_PROBE,
                hold_out: int = DEFAULT_HOLD_OUT) -> MomentFit:
    """Fit the mean and central moments m_0..m_order of a univariate family.

    Each order is sampled from its own start (``family.stable_from(j)``)
    unless ``n0`` is given explicitly.
    """
    if family.markers != 1:
        raise ValueError("fit_moments needs a univariate family; use fit_mixed_moments")
    per_order = {j: _order_ns(family, j, n0, probe, hold_out) for j in range(order + 1)}
    per_order["mean"] = _order_ns(family, 1, n0, probe, hold_out)
    ns = sorted(set().union(*per_order.values()))
    tables = {t.n: t for t in map(moment_table, family.factorial_moments(ns, order))}
    fit = MomentFit(family.name, ns)
    jobs = [("mean", [(n, tables[n].mean) for n in per_order["mean"]], 1)]
    jobs += [(j, [(n, tables[n].central[j]) for n in per_order[j]], j) for j in range(order + 1)]
    results = pmap(lambda job: _fit_series(job[1], job[2], hold_out), jobs)
    for (key, _, _), res in zip(jobs, results):
        if isinstance(res, Exception):
            fit.failures[key] = str(res)
        elif key == "mean":
            fit.mean, fit.mean_certificate = res
        else:
            fit.polys[key], fit.certificates[key] = res
    return fit


def fit_mixed_moments(family: Family, cap: int, n0: int | None = None, probe: int = DEFAULT_PROBE,
                      hold_out: int = DEFAULT_HOLD_OUT) -> MomentFit:
    """Fit mixed central moments m_{i,j}(n), i, j <= cap, of a bivariate family."""
    if family.markers != 2:
        raise ValueError("fit_mixed_moments needs a bivariate family")
    keys = [(i, j) for i in range(cap + 1) for j in range(cap + 1)]
    per_key = {k: _order_ns(family, k[0] + k[1], n0, probe, hold_out) for k in keys}
    ns = sorted(set().union(*per_key.values()))
    tables = {f.n: mixed_moments(f, cap) for f in family.factorial_moments(ns, (cap, cap))}
    fit = MomentFit(family.name, ns)
    jobs = [(k, [(n, tables[n].m(*k)) for n in per_key[k]], k[0] + k[1]) for k in keys]
    results = pmap(lambda job: _fit_series(job[1], job[2], hold_out), jobs)
    for (key, _, _), res in zip(jobs, results):
        if isinstance(res, Exception):
            fit.failures[key] = str(res)
        else:
            fit.polys[key], fit.certificates[key] = res
    return fit


# ---------------------------------------------------------------------------
# Mean and variance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeanVariance:
    mean: Poly
    variance: Poly
    mean_certificate: GuessCertificate
    variance_certificate: GuessCertificate

    def to_json(self) -> dict:
        return {"mean": str(self.mean), "variance": str(self.variance),
                "meanCoefficients": self.mean.to_json(), "varianceCoefficients": self.variance.to_json(),
                "certificates": {"mean": self.mean_certificate.to_json(),
                                 "variance": self.variance_certificate.to_json()}}


def mean_variance(family: Family, n0: int | None = None, probe: int = DEFAULT_PROBE,
                  hold_out: int = DEFAULT_HOLD_OUT) -> MeanVariance:
    return _mean_variance_from(fit_moments(family, 2, n0, probe, hold_out))


def _mean_variance_from(fit: MomentFit) -> MeanVariance:
    if fit.mean is None:
        raise NoFit(f"mean: {fit.failures.get('mean')}")
    if 2 not in fit.polys:
        raise NoFit(f"variance: {fit.failures.get(2)}")
    return MeanVariance(fit.mean, fit.polys[2], fit.mean_certificate, fit.certificates[2])


# ---------------------------------------------------------------------------
# Normality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalityVerdict:
    """Per-order limits of the normalized moments and the resulting verdict.

    ``even_limits[r]`` is lim alpha[2r] (None when it diverges or a fit
    failed).  ``odd_limits[r]`` is the limit of the signed square
    sign(alpha) * alpha[2r+1]^2, exact and zero iff alpha[2r+1] -> 0.
    """

    family: str
    verdict: str
    even_limits: Mapping[int, Fraction | None]
    odd_limits: Mapping[int, Fraction | None]
    is_normal_even: Mapping[int, bool]
    is_normal_odd: Mapping[int, bool]
    notes: tuple[str, ...] = ()

    @property
    def limits_found(self) -> dict:
        return {"even": dict(self.even_limits), "odd": dict(self.odd_limits)}

    def to_json(self) -> dict:
        def enc(d):
            return [[r, None if v is None else fmt_q(v)] for r, v in sorted(d.items())]
        return {"family": self.family, "verdict": self.verdict, "evenLimits": enc(self.even_limits),
                "oddLimitsSignedSquare": enc(self.odd_limits), "notes": list(self.notes)}


def _limit(num: Poly, den: Poly) -> Fraction | None:
    return expand_at_infinity(num, den, 0).limit() if not num.is_zero() else Fraction(0)


def _signed_square_limit(num: Poly, den: Poly) -> Fraction | None:
    """Limit of sign(num) * num^2 / den for large n (den > 0 eventually)."""
    if num.is_zero():
        return Fraction(0)
    lim = _limit(num * num, den)
    if lim is None:
        return None
    return -lim if num.lead < 0 else lim


def verdict_from_polys(name: str, central: Mapping[int, Poly], r_max: int,
                       failures: Mapping | None = None) -> NormalityVerdict:
    """Normality verdict from fitted central moment polynomials m_j(n)."""
    notes = []
    m2 = central.get(2)
    if m2 is None:
        return NormalityVerdict(name, INCONCLUSIVE, {}, {}, {}, {}, ("variance fit failed",))
    if m2.is_zero():
        raise DegenerateVariance(f"{name}: variance is identically zero")
    even, odd, ok_even, ok_odd = {}, {}, {}, {}
    missing = False
    for r in range(1, r_max + 1):
        m_even = central.get(2 * r)
        if m_even is None:
            even[r] = None
            missing = True
            notes.append(f"m_{2 * r} fit failed: {(failures or {}).get(2 * r, '')}")
        else:
            even[r] = _limit(m_even, m2 ** r)
            ok_even[r] = even[r] == double_factorial(r)
        m_odd = central.get(2 * r + 1) if r > 0 else None
        if m_odd is None:
            odd[r] = None
            missing = True
            notes.append(f"m_{2 * r + 1} fit failed: {(failures or {}).get(2 * r + 1, '')}")
        else:
            odd[r] = _signed_square_limit(m_odd, m2 ** (2 * r + 1))
            ok_odd[r] = odd[r] == 0
    if not missing and all(ok_even.values()) and all(ok_odd.values()):
        verdict = NORMAL
    elif any(v is False for v in list(ok_even.values()) + list(ok_odd.values())):
        verdict = NOT_NORMAL
    else:
        verdict = INCONCLUSIVE
    return NormalityVerdict(name, verdict, even, odd, ok_even, ok_odd, tuple(notes))


def normality_verdict(family: Family, r_max: int = DEFAULT_R_MAX, n0: int | None = None,
                      probe: int = DEFAULT_PROBE, hold_out: int = DEFAULT_HOLD_OUT) -> NormalityVerdict:
    fit = fit_moments(family, 2 * r_max + 1, n0, probe, hold_out)
    return verdict_from_polys(family.name, fit.polys, r_max, fit.failures)


# ---------------------------------------------------------------------------
# AnalyseMoms analogues
# ---------------------------------------------------------------------------


def _formulas_from_fit(fit: MomentFit, r_max: int, depth: int, r_hold_out: int,
                       max_deg: int | None) -> tuple[AsymptoticFormula, AsymptoticFormula]:
    needed = [j for j in range(2, 2 * r_max + 2) if j not in fit.polys]
    if needed:
        raise NoFit(f"moment fits failed for orders {needed}")
    moment_polys = {r: (fit.polys[2 * r], fit.polys[2 * r + 1]) for r in range(1, r_max + 1)}
    return guess_in_n_and_r(moment_polys, fit.polys[2], depth, r_max, r_hold_out, max_deg)


def analyse_moms(family: Family, r_max: int = DEFAULT_R_MAX, depth: int = DEFAULT_DEPTH,
                 n0: int | None = None, probe: int = DEFAULT_PROBE, hold_out: int = DEFAULT_HOLD_OUT,
                 r_hold_out: int = 1, max_deg: int | None = None) -> tuple[AsymptoticFormula, AsymptoticFormula]:
    """Even and odd normalized-moment formulas in n and r."""
    fit = fit_moments(family, 2 * r_max + 1, n0, probe, hold_out)
    return _formulas_from_fit(fit, r_max, depth, r_hold_out, max_deg)


@dataclass(frozen=True)
class AnalysisReport:
    family: str
    verdict: NormalityVerdict
    mean_variance: MeanVariance | None
    even: AsymptoticFormula | None
    odd: AsymptoticFormula | None
    certificates: Mapping
    error: str = ""
    central_moments: Mapping = field(default_factory=dict)

    def to_json(self) -> dict:
        formulas = {}
        if self.even is not None:
            formulas = {"even": self.even.to_json(), "odd": self.odd.to_json()}
        ev = self.verdict.to_json()
        return {"family": self.family, "verdict": self.verdict.verdict, "evenLimits": ev["evenLimits"],
                "oddLimitsSignedSquare": ev["oddLimitsSignedSquare"], "formulas": formulas,
                "meanVariance": self.mean_variance.to_json() if self.mean_variance else None,
                "centralMoments": {str(j): p.to_json() for j, p in sorted(self.central_moments.items())},
                "certificates": [{"moment": k, **c.to_json()} for k, c in self.certificates.items()],
                "notes": list(ev["notes"]) + ([self.error] if self.error else [])}


def analyse_report(family: Family, r_max: int = DEFAULT_R_MAX, depth: int = DEFAULT_DEPTH,
                   n0: int | None = None, probe: int = DEFAULT_PROBE, hold_out: int = DEFAULT_HOLD_OUT,
                   r_hold_out: int = 1) -> AnalysisReport:
    """One fit, reused for the mean/variance, the verdict and the formulas."""
    fit = fit_moments(family, 2 * r_max + 1, n0, probe, hold_out)
    verdict = verdict_from_polys(family.name, fit.polys, r_max, fit.failures)
    try:
        mv = _mean_variance_from(fit)
    except NoFit:
        mv = None
    even = odd = None
    error = ""
    try:
        even, odd = _formulas_from_fit(fit, r_max, depth, r_hold_out, None)
    except NoFit as exc:
        error = str(exc)
    certs = {str(k): c for k, c in sorted(fit.certificates.items())}
    return AnalysisReport(family.name, verdict, mv, even, odd, certs, error, dict(fit.polys))


# ---------------------------------------------------------------------------
# Bivariate
# ---------------------------------------------------------------------------


def correlation_limit(fit: MomentFit) -> Fraction | None:
    """Limit of the signed squared correlation, from fitted cov and variances."""
    cov, vx, vy = fit.poly((1, 1)), fit.poly((2, 0)), fit.poly((0, 2))
    if cov is None or vx is None or vy is None:
        return None
    if vx.is_zero() or vy.is_zero():
        raise DegenerateVariance("a marginal variance is identically zero")
    return _signed_square_limit(cov, vx * vy)


@dataclass(frozen=True)
class BivariateAnalysis:
    family: str
    correlation_limit: Fraction
    marginals: tuple[NormalityVerdict, NormalityVerdict]
    formulas: Mapping[tuple[int, int], AsymptoticFormula]

    def to_json(self) -> dict:
        return {"family": self.family, "correlationLimitSignedSquare": fmt_q(self.correlation_limit),
                "marginals": [m.to_json() for m in self.marginals],
                "formulas": {f"{a},{b}": f.to_json() for (a, b), f in self.formulas.items()}}


def analyse_moms2(family: Family, r_max: int = DEFAULT_R_MAX, depth: int = DEFAULT_DEPTH,
                  n0: int | None = None, probe: int = DEFAULT_PROBE, hold_out: int = DEFAULT_HOLD_OUT,
                  r_hold_out: int = 1, max_deg: int | None = None) -> BivariateAnalysis:
    """Four parity-class formulas, gated on asymptotic independent normality."""
    cap = 2 * r_max + 1
    fit = fit_mixed_moments(family, cap, n0, probe, hold_out)
    limit = correlation_limit(fit)
    if limit is None:
        raise NoFit("covariance or variance fit failed")
    mx = verdict_from_polys(family.name + "[X]", {j: fit.polys[j, 0] for j in range(cap + 1)
                                                  if (j, 0) in fit.polys}, r_max)
    my = verdict_from_polys(family.name + "[Y]", {j: fit.polys[0, j] for j in range(cap + 1)
                                                  if (0, j) in fit.polys}, r_max)
    if limit != 0:
        raise NotIndependentlyNormal(
            f"{family.name}: asymptotic squared correlation is {fmt_q(limit)}, not 0", limit)
    if mx.verdict != NORMAL or my.verdict != NORMAL:
        raise NotIndependentlyNormal(
            f"{family.name}: marginal verdicts {mx.verdict}/{my.verdict}", limit)
    missing = [k for k in ((i, j) for i in range(cap + 1) for j in range(cap + 1)) if k not in fit.polys]
    if missing:
        raise NoFit(f"mixed moment fits failed for {missing[:5]}")
    formulas = guess_in_n_and_rs(fit.polys, fit.polys[2, 0], fit.polys[0, 2], depth, r_max,
                                 r_hold_out, max_deg)
    return BivariateAnalysis(family.name, limit, (mx, my), formulas)


# ---------------------------------------------------------------------------
# Histogram export
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HistogramExport:
    n: int
    mode: str
    points: tuple[tuple[float, float], ...]
    distribution: object

    def csv_rows(self) -> list[list]:
        return [["x", "y"]] + [[repr(x), repr(y)] for x, y in self.points]

    def to_svg(self, width: int = 640, height: int = 400, margin: int = 20) -> str:
        xs = [x for x, _ in self.points]
        ys = [y for _, y in self.points]
        x0, x1 = min(xs), max(xs)
        y1 = max(ys) or 1.0
        span = (x1 - x0) or 1.0
        coords = " ".join(
            f"{margin + (x - x0) / span * (width - 2 * margin):.3f},"
            f"{height - margin - y / y1 * (height - 2 * margin):.3f}" for x, y in self.points)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
                f'viewBox="0 0 {width} {height}">\n'
                f'  <polyline fill="none" stroke="black" stroke-width="1.5" points="{coords}"/>\n'
                f'</svg>\n')


def plot_dist(family: Family, n: int, mode: str = "standardized") -> HistogramExport:
    """Points (x, y) of the exact distribution at n.

    Standardized mode uses ((k - mu)/sigma, sigma*P/h) where h is the lattice
    span of the support (gcd of gaps, 1 for a single point), so that a
    normal family's export approaches the standard normal density.
    """
    if mode not in ("standardized", "raw"):
        raise ValueError("mode must be 'standardized' or 'raw'")
    dist = family.distribution(n)
    if dist.bivariate:
        raise ValueError("plot_dist handles univariate families only")
    support = dist.support
    if mode == "raw":
        return HistogramExport(n, mode, tuple((float(k), float(p)) for k, p in support), dist)
    mu = sum((k * p for k, p in support), Fraction(0))
    var = sum(((k - mu) ** 2 * p for k, p in support), Fraction(0))
    if var == 0:
        raise DegenerateVariance(f"{family.name} has zero variance at n={n}")
    sigma = math.sqrt(var)
    values = [k for k, _ in support]
    span = math.gcd(*(b - a for a, b in zip(values, values[1:]))) or 1
    return HistogramExport(n, mode, tuple((float(k - mu) / sigma, sigma * float(p) / span)
                                          for k, p in support), dist)
