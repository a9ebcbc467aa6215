import random
from fractions import Fraction as Q

import pytest

from helpers import random_pattern_set
from moment_cruncher import oracle
from moment_cruncher.errors import NotReduced
from moment_cruncher.exact import LaurentPoly, Poly
from moment_cruncher.gj import (PatternSet, avoid_counts, correlation_poly, parse_patterns,
                                pattern_family, probability_gf, weight_enumerator)
from moment_cruncher.series import expand_exact

HH = parse_patterns("HH")


def test_correlation_poly_examples():
    s = Poly.x("s")
    assert correlation_poly("HH", "HH") == s
    assert correlation_poly("HT", "TH") == s
    assert correlation_poly("HH", "TT").is_zero()
    assert correlation_poly("HTH", "HTH") == s * s


def test_hh_avoiding_specialization():
    F = weight_enumerator(2, HH)
    num, den = F.specialize(0)
    assert num == (1, 1) and den == (1, -1, -1)
    assert F.s_coefficients(0, 5) == [1, 2, 3, 5, 8, 13]


def test_marker_erasure():
    for text in ("HH", "HTH,THT", "aab:t1,bba:t2"):
        P = parse_patterns(text)
        d = 2
        coeffs = weight_enumerator(d, P).s_coefficients(1, 10)
        assert coeffs == [d ** n for n in range(11)]


def test_hh_n3_coefficient():
    F = weight_enumerator(2, HH)
    t = LaurentPoly.var("t", ("t",))
    dists = expand_exact(F, 3)
    # expand_exact normalizes; undo with the total 2^3
    counts = {k: p * 8 for k, p in dists[3].support}
    assert counts == {0: 5, 1: 2, 2: 1}
    assert sum((c * t ** k for k, c in counts.items()), LaurentPoly()) == 5 + 2 * t + t * t


def test_probability_gf_hh():
    R = probability_gf(weight_enumerator(2, HH), 2)
    dists = expand_exact(R, 14)
    assert dists[3].as_dict() == {0: Q(5, 8), 1: Q(2, 8), 2: Q(1, 8)}
    for d in dists:
        assert sum(p for _, p in d.support) == 1
    mean3 = sum(k * p for k, p in dists[3].support)
    assert mean3 == Q(1, 2) == Q(3 - 1, 4)


def test_not_reduced():
    with pytest.raises(NotReduced):
        parse_patterns("HH,HHT")
    with pytest.raises(NotReduced):
        PatternSet(("ab", "ab"))


def test_avoid_counts_vs_automaton():
    for d, pats in ((2, ["HH"]), (2, ["HTH", "TT"]), (3, ["ab", "ca"]), (3, ["aba", "bcb", "cc"])):
        P = PatternSet(tuple(pats))
        assert avoid_counts(d, P, 12) == oracle.avoid_counts_automaton(d, pats, 12)


def test_random_pattern_sets_match_enumeration():
    rng = random.Random(20261015)
    for _ in range(12):
        d = rng.choice([2, 3])
        text, marks = random_pattern_set(rng, d)
        fam = pattern_family(d, parse_patterns(text))
        n_max = 12 if d == 2 else 8
        dists = fam.distributions(n_max)
        for n in range(n_max + 1):
            assert dists[n].as_dict() == oracle.enumerate_words(d, marks, n), (text, n)


def test_ternary_length_twelve():
    marks = {"ab": 1, "bca": 2}
    fam = pattern_family(3, parse_patterns("ab:t1,bca:t2"))
    assert fam.distribution(12).as_dict() == oracle.enumerate_words(3, marks, 12)


def test_pattern_family_defaults():
    fam = pattern_family(2, parse_patterns("HHT,TT"))
    assert fam.n0 == 6
    assert fam.name == "gj(d=2; HHT,TT)"
