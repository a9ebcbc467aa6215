"""Polynomial-ansatz guessing.

:func:`guess_poly` finds the least-degree polynomial through the data and
insists that it reproduce every remaining point.  A fit is only *proved*
when the caller also supplies an a-priori degree bound D and at least D + 1
points agree: two polynomials of degree <= D that coincide at D + 1 places
are equal.  Without a bound the certificate says ``verified-semi-rigorous``.

:func:`guess_in_n_and_r` runs the two-stage guess: each normalized moment
(an exact rational function of n) is expanded at n = infinity, then every
coefficient of ``n^-i`` is fitted as a polynomial in the moment order r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NoFit, NotEnoughPoints
from .exact import LaurentPoly, Poly, double_factorial, fmt_q

PROVED = "proved-polynomial-identity"
SEMI = "verified-semi-rigorous"
FAILED = "failed"


@dataclass(frozen=True)
class GuessCertificate:
    fitted_degree: int
    points_used: tuple
    held_out_matches: int
    status: str
    degree_bound: int | None = None

    def to_json(self) -> dict:
        return {"fittedDegree": self.fitted_degree, "pointsUsed": [
            list(p) if isinstance(p, tuple) else p for p in self.points_used],
            "heldOutMatches": self.held_out_matches, "status": self.status,
            "degreeBound": self.degree_bound}


def interpolate(points: Sequence[tuple], var: str = "n") -> Poly:
    """Lagrange interpolant through ``(x, y)`` pairs with distinct x."""
    xs = [Fraction(x) for x, _ in points]
    result = Poly((), var)
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        if not yi:
            continue
        basis = Poly((1,), var)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, 1), var)
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


def guess_poly(data: Sequence[tuple], max_deg: int, hold_out: int = 5, n0: int = 0,
               degree_bound: int | None = None, var: str = "n") -> tuple[Poly, GuessCertificate]:
    """Least-degree polynomial (<= max_deg) reproducing all data with n >= n0.

    The interpolant uses the first d + 1 eligible points; every later point
    must match exactly, and only degrees leaving at least ``hold_out`` later
    points are tried.  Raises :class:`NotEnoughPoints` when not even a
    constant can be checked that way and :class:`NoFit` when no degree works.
    """
    pts = [(x, Fraction(y)) for x, y in data if x >= n0]
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("abscissae must be distinct")
    top = min(max_deg, len(pts) - 1 - hold_out)
    if max_deg < 0 or top < 0:
        raise NotEnoughPoints(f"{len(pts)} points with n >= {n0}; need at least {1 + hold_out}")
    for d in range(top + 1):
        poly = interpolate(pts[:d + 1], var)
        rest = pts[d + 1:]
        if all(poly(x) == y for x, y in rest):
            used = tuple(x for x, _ in pts)
            proved = (degree_bound is not None and d <= degree_bound
                      and len(used) >= degree_bound + 1 and len(rest) >= 1)
            return poly, GuessCertificate(d, used, len(rest), PROVED if proved else SEMI, degree_bound)
    raise NoFit(f"no polynomial of degree <= {top} fits {len(pts)} points")


# ---------------------------------------------------------------------------
# Expansion at n = infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InfinityExpansion:
    """``sum_k coeffs[k] * n^-(leading_power + k)``; zero when ``coeffs`` is empty."""

    leading_power: int
    coeffs: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, i: int) -> Fraction:
        """Coefficient of n^-i (0 below the leading power)."""
        k = i - self.leading_power
        if k < 0:
            return Fraction(0)
        if k >= len(self.coeffs):
            raise IndexError(f"expansion only known through n^-{self.leading_power + len(self.coeffs) - 1}")
        return self.coeffs[k]

    def limit(self) -> Fraction | None:
        """Value at n = infinity; None when the expression grows without bound."""
        if self.is_zero():
            return Fraction(0)
        first = next(k for k, c in enumerate(self.coeffs) if c) + self.leading_power
        if first < 0:
            return None
        return self.coefficient(0)

    def truncated_value(self, n) -> Fraction:
        n = Fraction(n)
        return sum((c * n ** -(self.leading_power + k) for k, c in enumerate(self.coeffs)), Fraction(0))

    def to_json(self) -> dict:
        return {"leadingPower": self.leading_power, "coefficients": [fmt_q(c) for c in self.coeffs]}


def expand_at_infinity(num: Poly, den: Poly, depth: int) -> InfinityExpansion:
    """Exact expansion of num(n)/den(n) in powers of 1/n, ``depth`` terms past the leading one."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return InfinityExpansion(0, ())
    a, b = num.degree, den.degree
    # num/den = n^(a-b) * N(x)/D(x) with x = 1/n
    N = list(reversed(num.coeffs))
    D = list(reversed(den.coeffs))
    out = []
    for k in range(depth + 1):
        acc = N[k] if k < len(N) else Fraction(0)
        for j in range(1, min(k, len(D) - 1) + 1):
            acc -= D[j] * out[k - j]
        out.append(acc / D[0])
    return InfinityExpansion(b - a, tuple(out))


def inverse_power_coefficients(num: Poly, den: Poly, depth: int) -> list[Fraction] | None:
    """Coefficients of n^0, n^-1, ..., n^-depth; None if the ratio grows with n."""
    exp = expand_at_infinity(num, den, depth)
    if exp.is_zero():
        return [Fraction(0)] * (depth + 1)
    if exp.leading_power < 0:
        return None
    full = expand_at_infinity(num, den, depth - exp.leading_power) if exp.leading_power <= depth else exp
    return [full.coefficient(i) if i - full.leading_power < len(full.coeffs) else Fraction(0)
            for i in range(depth + 1)]


# ---------------------------------------------------------------------------
# Two-stage guessing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientFit:
    """Coefficient of n^-index as a polynomial in the order variable(s)."""

    index: int
    poly: object | None  # Poly in r, or LaurentPoly in (r1, r2)
    certificate: GuessCertificate | None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.poly is not None

    def to_json(self) -> dict:
        out = {"inversePower": self.index, "certificate": self.certificate.to_json() if self.certificate else None}
        if isinstance(self.poly, Poly):
            out["rCoefficients"] = self.poly.to_json()
        elif isinstance(self.poly, LaurentPoly):
            out["rsCoefficients"] = [[list(e), fmt_q(c)] for e, c in sorted(self.poly.items())]
        else:
            out["failed"] = self.reason
        return out


@dataclass(frozen=True)
class AsymptoticFormula:
    """``quantity(n) ~ prefactor * sum_i c_i(order) / n^i``."""

    parity_class: object
    quantity: str
    prefactor: str
    depth: int
    coefficients: tuple[CoefficientFit, ...]
    stage1: Mapping = field(default_factory=dict, compare=False)

    def c(self, i: int):
        return self.coefficients[i].poly

    def render(self) -> str:
        terms = []
        for fit in self.coefficients:
            body = f"({fit.poly})" if fit.ok else "(?)"
            terms.append(body if fit.index == 0 else
                         f"{body}/n" if fit.index == 1 else f"{body}/n^{fit.index}")
        return f"{self.quantity} = {self.prefactor}*({' + '.join(terms)} + O(n^-{self.depth + 1}))"

    def to_json(self) -> dict:
        cls = self.parity_class
        return {"class": list(cls) if isinstance(cls, tuple) else cls, "quantity": self.quantity,
                "prefactor": self.prefactor, "depth": self.depth, "text": self.render(),
                "coefficients": [c.to_json() for c in self.coefficients]}


def odd_prefactor(r: int) -> int:
    """(2r + 1)!!, the normalizer of the odd class."""
    return double_factorial(r + 1)


def _prefactor(r: int, odd: int) -> int:
    return odd_prefactor(r) if odd else double_factorial(r)


def _fit_over_r(values: Sequence[tuple[int, Fraction]], i: int, hold_out: int,
                max_deg: int | None, var: str) -> CoefficientFit:
    cap = 2 * i + 2 if max_deg is None else max_deg
    cap = min(cap, len(values) - 1 - hold_out)
    if cap < 0:
        return CoefficientFit(i, None, None, "not enough order values")
    try:
        poly, cert = guess_poly(values, cap, hold_out, n0=min(x for x, _ in values), var=var)
    except (NoFit, NotEnoughPoints) as exc:
        return CoefficientFit(i, None, None, str(exc))
    return CoefficientFit(i, poly, cert)


def guess_in_n_and_r(moment_polys: Mapping[int, tuple[Poly, Poly]], variance_poly: Poly, depth: int,
                     r_max: int, hold_out: int = 1, max_deg: int | None = None
                     ) -> tuple[AsymptoticFormula, AsymptoticFormula]:
    """Fit the even and odd normalized-moment expansions as polynomials in r.

    ``moment_polys[r] = (m_{2r}(n), m_{2r+1}(n))`` for r = 1..r_max.  The
    order r = 0 is added from the identities m_0 = 1, m_1 = 0.  The even class
    is ``alpha[2r] / (2r-1)!!``, the odd class ``beta[2r+1] / (2r+1)!!``.
    """
    polys = {0: (Poly((1,)), Poly(()))}
    polys.update({r: moment_polys[r] for r in range(1, r_max + 1)})
    formulas = []
    for odd in (0, 1):
        stage1 = {}
        failed_reason = ""
        for r in range(r_max + 1):
            num = polys[r][odd]
            den = variance_poly ** r * _prefactor(r, odd)
            coeffs = inverse_power_coefficients(num, den, depth)
            if coeffs is None:
                failed_reason = f"order r={r} grows with n"
                break
            stage1[r] = coeffs
        fits = []
        for i in range(depth + 1):
            if failed_reason:
                fits.append(CoefficientFit(i, None, None, failed_reason))
            else:
                fits.append(_fit_over_r([(r, stage1[r][i]) for r in range(r_max + 1)], i, hold_out,
                                        max_deg, "r"))
        quantity = "beta[2r+1](n)" if odd else "alpha[2r](n)"
        prefactor = "(2r+1)!!" if odd else "(2r-1)!!"
        formulas.append(AsymptoticFormula("odd" if odd else "even", quantity, prefactor, depth,
                                          tuple(fits), stage1))
    return formulas[0], formulas[1]


PARITY_CLASSES = ((0, 0), (1, 0), (0, 1), (1, 1))


def _fit_grid(grid: Mapping[tuple[int, int], Fraction], r_max: int, i: int, hold_out: int,
              max_deg: int | None) -> CoefficientFit:
    """Fit c(r1, r2) on the square grid by nested one-variable fits, then re-verify."""
    rows = {}
    for r1 in range(r_max + 1):
        fit = _fit_over_r([(r2, grid[r1, r2]) for r2 in range(r_max + 1)], i, hold_out, max_deg, "r2")
        if not fit.ok:
            return CoefficientFit(i, None, None, f"row r1={r1}: {fit.reason}")
        rows[r1] = fit
    width = max(f.poly.degree for f in rows.values()) + 1
    terms = {}
    deg1 = 0
    for b in range(width):
        column = [(r1, rows[r1].poly.coeffs[b] if b < len(rows[r1].poly.coeffs) else Fraction(0))
                  for r1 in range(r_max + 1)]
        fit = _fit_over_r(column, i, hold_out, max_deg, "r1")
        if not fit.ok:
            return CoefficientFit(i, None, None, f"r2^{b} column: {fit.reason}")
        deg1 = max(deg1, fit.poly.degree)
        for a, c in enumerate(fit.poly.coeffs):
            terms[(a, b)] = c
    poly = LaurentPoly(terms, ("r1", "r2"))
    if any(poly.evaluate((r1, r2)) != v for (r1, r2), v in grid.items()):
        return CoefficientFit(i, None, None, "nested fit does not reproduce the grid")
    used = tuple(sorted(grid))
    interp = (deg1 + 1) * width
    cert = GuessCertificate(max(deg1, width - 1) if terms else 0, used, len(used) - interp, SEMI)
    return CoefficientFit(i, poly, cert)


def guess_in_n_and_rs(mixed_polys: Mapping[tuple[int, int], Poly], var_x: Poly, var_y: Poly,
                      depth: int, r_max: int, hold_out: int = 1, max_deg: int | None = None
                      ) -> dict[tuple[int, int], AsymptoticFormula]:
    """Four parity-class expansions of mixed moments with coefficients in (r1, r2).

    ``mixed_polys[i, j]`` is m_{i,j}(n) for i, j <= 2*r_max + 1.  Class
    (a, b) normalizes m_{2r1+a, 2r2+b} by varX^r1 varY^r2 and by the even or
    odd double-factorial prefactor in each coordinate.
    """
    out = {}
    for a, b in PARITY_CLASSES:
        grid: dict[int, dict] = {}
        failed_reason = ""
        for r1 in range(r_max + 1):
            for r2 in range(r_max + 1):
                i, j = 2 * r1 + a, 2 * r2 + b
                num = mixed_polys[i, j] if (i, j) != (0, 0) else Poly((1,))
                den = var_x ** r1 * var_y ** r2 * (_prefactor(r1, a) * _prefactor(r2, b))
                coeffs = inverse_power_coefficients(num, den, depth)
                if coeffs is None:
                    failed_reason = f"orders ({i},{j}) grow with n"
                    break
                grid[r1, r2] = coeffs
            if failed_reason:
                break
        fits = []
        for k in range(depth + 1):
            if failed_reason:
                fits.append(CoefficientFit(k, None, None, failed_reason))
            else:
                fits.append(_fit_grid({key: v[k] for key, v in grid.items()}, r_max, k, hold_out, max_deg))
        names = {0: "2r{}", 1: "2r{}+1"}
        quantity = f"gamma[{names[a].format(1)},{names[b].format(2)}](n)"
        prefactor = "*".join([("(2r1+1)!!" if a else "(2r1-1)!!"), ("(2r2+1)!!" if b else "(2r2-1)!!")])
        out[a, b] = AsymptoticFormula((a, b), quantity, prefactor, depth, tuple(fits), grid)
    return out
