from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from artifact.aperiodic_sets import (SEPARATOR, AperiodicFamily, FamilyExhausted, StarFailure, YSet,
                                     build_Y, check_double_star, check_star, count_cube_free,
                                     enumerate_family, growth_estimate, require_star)
from artifact.core_words import is_s_aperiodic, order_key

# Positive cube-free binary words per length 1..14 (same numbers as the brute-force oracle below).
CUBE_FREE_COUNTS = [2, 4, 6, 10, 16, 24, 36, 56, 80, 118, 174, 254, 378, 554]
# Lengths of Y_1..Y_8 at N0 = 200, fixed from the oracle reconstruction.
Y_LENGTHS = [3221, 3907, 4171, 4372, 4472, 4600, 4652, 4800]


def oracle_family(count):
    words, n = [], 0
    while len(words) < count:
        n += 1
        words += [w for w in oracles.cube_free_words(n) if w[0] == "b" and w[-1] == "b"]
    return words


def test_small_families():
    assert enumerate_family(1).words == ("b",)
    assert enumerate_family(3).words == ("b", "bb", "bab")
    with pytest.raises(ValueError):
        enumerate_family(0)


def test_cube_free_counts_match_brute_force():
    assert count_cube_free(14) == CUBE_FREE_COUNTS
    assert [len(oracles.cube_free_words(n)) for n in range(1, 13)] == CUBE_FREE_COUNTS[:12]


def test_family_matches_oracle_and_invariants():
    fam = enumerate_family(12)
    assert list(fam.words) == oracles.family(12)
    keys = [order_key(w) for w in fam.words]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for w in fam.words:
        assert set(w) <= {"a", "b"} and w[0] == w[-1] == "b"
        assert is_s_aperiodic(w, 3) and is_s_aperiodic(w, 6)


def test_build_Y_examples():
    fam = AperiodicFamily(tuple(oracles.family(4)), 4)
    ys = YSet(2, fam)
    assert build_Y(1, ys) == SEPARATOR + "b" + SEPARATOR + "bb"
    assert build_Y(2, ys) == SEPARATOR + "bab" + SEPARATOR + "baab"
    assert build_Y(1, YSet(1, fam)) == SEPARATOR + "b"
    with pytest.raises(FamilyExhausted, match="extend the family"):
        build_Y(4, ys)
    with pytest.raises(ValueError):
        YSet(0, fam)


def test_fixture_prefix_matches_oracle():
    ys = YSet.generate(200, 8)
    fam = oracle_family(1600)
    expected = ["".join(SEPARATOR + fam[i] for i in range((j - 1) * 200, j * 200)) for j in range(1, 9)]
    assert ys.prefix(8) == expected
    assert [len(y) for y in expected] == Y_LENGTHS


@pytest.mark.parametrize("n0", [1, 3, 7])
def test_Y_length_and_disjoint_blocks(n0):
    ys = YSet.generate(n0, 6)
    for j in range(1, 7):
        blocks = ys.family.words[(j - 1) * n0:j * n0]
        assert len(ys[j]) == 6 * n0 + sum(len(b) for b in blocks)
        assert ys[j].split(SEPARATOR)[1:] == list(blocks)


def test_double_star_examples():
    fam = AperiodicFamily(tuple(oracles.family(4)), 4)
    assert check_double_star(build_Y(1, YSet(2, fam)))
    assert not check_double_star("a" * 7)
    assert check_double_star("")


def test_star_examples():
    W = YSet.generate(200, 2)[1]
    V = W[1000:1000 + 40]
    rep = check_star([W, "bb" + V + "ab"])
    assert not rep.passed
    assert any(V in v.word or v.word in V for v in rep.violations)
    assert check_star([W]).passed
    assert not check_star(["abab" + "b" * 50 + "abab"], Fraction(1, 20)).passed
    with pytest.raises(ValueError):
        check_star([W, W])
    with pytest.raises(ValueError):
        check_star([W], 1)


def test_require_star_raises_with_guidance():
    with pytest.raises(StarFailure, match="increase N0"):
        require_star(["abab" * 20, "ab" * 5 + "b"], Fraction(1, 10), n0=1)


def test_small_N0_fails_star():
    # with eight blocks per word, (*) does not hold at lambda = 0.01
    assert not check_star(YSet.generate(8, 20).prefix(20)).passed


small_words = st.lists(st.text(alphabet="ab", min_size=1, max_size=12), min_size=1, max_size=3, unique=True)


@settings(max_examples=150, deadline=None)
@given(small_words, st.sampled_from([Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]))
def test_star_matches_naive_oracle(words, lam):
    assert check_star(words, lam).passed == oracles.star_passes(words, lam)


@settings(max_examples=100, deadline=None)
@given(small_words, st.integers(1, 9), st.integers(1, 9))
def test_star_monotone_in_lambda(words, x, y):
    lo, hi = sorted((Fraction(x, 10), Fraction(y, 10)))
    if check_star(words, lo).passed:
        assert check_star(words, hi).passed


def test_growth_estimate():
    linear = ["b" * i for i in range(1, 13)]
    est = growth_estimate(linear, 12)
    assert not est.exponential
    full = growth_estimate(enumerate_family(12), 12)
    counts = [c for _, c in full.counts]
    assert all(x < y for x, y in zip(counts[1:], counts[2:]))
    assert full.c > 1 and full.exponential
    with pytest.raises(ValueError, match="empty family"):
        growth_estimate([], 5)
