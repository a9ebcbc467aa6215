"""Exact moments and asymptotic normality of distributions given by rational generating functions."""
from .analyze import (analyse_moms, analyse_moms2, analyse_report, fit_mixed_moments, fit_moments,
                      mean_variance, normality_verdict, plot_dist)
from .ansatz import expand_at_infinity, guess_in_n_and_r, guess_in_n_and_rs, guess_poly
from .errors import *  # noqa: F401,F403
from .exact import LaurentPoly, Poly, Rational, TruncatedSeries, laurent_expand_at_one, series_reciprocal
from .expr import parse, render, to_rational_gf
from .families import ArcsineFamily, Family, GFFamily, builtin_family, parse_family
from .gj import PatternSet, parse_patterns, pattern_family, probability_gf, weight_enumerator
from .moments import central_from_raw, mixed_moments, moment_table, normalize, raw_from_factorial
from .series import Distribution, FactorialMomentVector, RationalGF, expand_exact, expand_truncated

__version__ = "0.1.0"
