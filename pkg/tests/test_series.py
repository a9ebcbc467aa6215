import warnings
from fractions import Fraction as Q

import pytest

from moment_cruncher.errors import (DegenerateWeight, ExpansionError, InadmissibleDenominator,
                                    NotADistribution)
from moment_cruncher.exact import LaurentPoly
from moment_cruncher.expr import to_rational_gf
from moment_cruncher.families import (coin_difference_gf, heads_count_gf, heads_tails_gf,
                                      point_mass_gf)
from moment_cruncher.series import Distribution, RationalGF, expand_exact, expand_truncated

FAIR = "1/(1-s*(t+1/t)/2)"


def test_fair_coin_exact_n2():
    dists = expand_exact(to_rational_gf(FAIR), 2)
    assert dists[2].as_dict() == {-2: Q(1, 4), 0: Q(1, 2), 2: Q(1, 4)}


def test_point_mass_every_n():
    for d in expand_exact(point_mass_gf(), 6):
        assert d.as_dict() == {0: 1}


def test_binomial_n3():
    d = expand_exact(to_rational_gf("1/(1-s*(1+t)/2)"), 3)[3]
    assert d.as_dict() == {0: Q(1, 8), 1: Q(3, 8), 2: Q(3, 8), 3: Q(1, 8)}


def test_truncated_examples():
    (fmv,) = expand_truncated(coin_difference_gf(), [2], (2,))
    assert fmv.total_weight == 1 and fmv.F == (1, 0, 2)
    for fmv in expand_truncated(coin_difference_gf(), range(6), (0,)):
        assert fmv.F == (1,)
    (fmv,) = expand_truncated(heads_count_gf(), [4], (3,))
    assert fmv.F[1] == 2


def test_truncated_matches_exact_heads_tails():
    R = heads_tails_gf(Q(1, 3))
    exact = expand_exact(R, 8)
    for fmv in expand_truncated(R, range(9), (3, 3)):
        assert fmv.F == exact[fmv.n].factorial_moments((3, 3))


def test_inadmissible_denominator():
    t = LaurentPoly.var("t", ("t",))
    with pytest.raises(InadmissibleDenominator):
        RationalGF((t ** 0,), (t - 1, t ** 0), ("t",))


def test_negative_weights():
    R = to_rational_gf("1/(1-s*(2*t-1))")
    with pytest.raises(NotADistribution):
        expand_exact(R, 2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        dists = expand_exact(R, 2, signed_weights=True)
    assert caught
    assert dists[1].as_dict() == {0: -1, 1: 2}


def test_degenerate_weight():
    with pytest.raises(DegenerateWeight):
        expand_exact(to_rational_gf("(1-s)/(1-s*t)"), 2)


def test_expansion_error_for_non_laurent_coefficient():
    with pytest.raises(ExpansionError):
        expand_exact(to_rational_gf("1/((1+t)/2-s)"), 1)


def test_distribution_invariants():
    with pytest.raises(NotADistribution):
        Distribution(1, ((0, Q(1, 2)), (1, Q(1, 3))))
    with pytest.raises(ValueError):
        Distribution(1, ((0, Q(1, 2)), (0, Q(1, 2))))
    d = Distribution(1, ((1, Q(1, 2)), (0, Q(1, 2))))
    assert d.to_json() == {"n": 1, "support": [[0, "1/2"], [1, "1/2"]]}
    assert d.csv_rows()[0] == ["value", "probability"]


def test_normalization_over_builtins():
    for R in (coin_difference_gf(Q(1, 3)), heads_count_gf(Q(2, 5)), heads_tails_gf()):
        for d in expand_exact(R, 10):
            assert sum(p for _, p in d.support) == 1
