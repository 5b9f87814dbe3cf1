import pytest
from hypothesis import given, settings, strategies as st

import oracles
from artifact.core_words import (CyclicWord, Letter, cancellation, check_word, common_prefix,
                                 common_suffix, cyclic_core, cyclic_reduce, free_reduce, inverse,
                                 is_periodic_with, is_reduced, is_s_aperiodic,
                                 longest_periodic_subword, occurrences, reduced_words, rotate)

words = st.text(alphabet="aAbB", max_size=40)
positive = st.text(alphabet="ab", max_size=30)


def test_letter_parse_and_inverse():
    assert str(Letter.parse("a").inverse()) == "A"
    with pytest.raises(ValueError):
        Letter.parse("c")
    with pytest.raises(ValueError):
        check_word("abx")


@pytest.mark.parametrize("w, expected", [("aA", ""), ("abBA", ""), ("baAb", "bb")])
def test_free_reduce_examples(w, expected):
    assert free_reduce(w) == expected


@pytest.mark.parametrize("w, core, conj", [
    ("abA", "b", "a"),
    ("", "", ""),
    # oracle: core bbA, least rotation Abb in the a < A < b < B order
    ("abbAA", "Abb", "abb"),
])
def test_cyclic_reduce_examples(w, core, conj):
    c, u = cyclic_reduce(w)
    assert c.letters == core and u == conj
    assert oracles.cyclic_reduce(w) in oracles.rotations(core)


def test_aperiodicity_examples():
    assert not is_s_aperiodic("ab" * 7, 7)
    assert is_s_aperiodic("b", 7)
    assert not is_s_aperiodic("aabbaabb", 2)


def test_occurrence_examples():
    assert occurrences("aa", "aaa") == [0, 1]
    assert occurrences("ab", "bbb") == []
    assert occurrences("bab", "a" * 6 + "bab" + "a" * 6 + "bb") == [6]


def test_periodic_examples():
    assert is_periodic_with("aba", "ab")
    assert not is_periodic_with("bb", "ab")
    assert not is_periodic_with("a" * 6 + "b", "aaa")


def test_reduced_words_count():
    # 4 * 3^(n-1) reduced words of length n
    assert [sum(1 for _ in reduced_words(n)) for n in range(5)] == [1, 4, 12, 36, 108]
    assert all(is_reduced(w) for w in reduced_words(4))


@given(words)
def test_free_reduce_matches_oracle(w):
    r = free_reduce(w)
    assert r == oracles.free_reduce(w)
    assert is_reduced(r)


@given(words, words)
def test_free_reduce_is_a_homomorphism(u, v):
    assert free_reduce(u + v) == free_reduce(free_reduce(u) + free_reduce(v))
    assert free_reduce(u + inverse(u)) == ""


@given(words)
def test_cyclic_reduce_conjugates_back(w):
    c, u = cyclic_reduce(w)
    assert free_reduce(u + c.letters + inverse(u)) == free_reduce(w)
    assert c.letters in oracles.rotations(oracles.cyclic_reduce(w))
    assert cyclic_core(w) == oracles.cyclic_reduce(w)


@given(words, st.integers(0, 50))
def test_cyclic_word_is_rotation_invariant(w, r):
    core = cyclic_core(w)
    assert CyclicWord.of(rotate(core, r)) == CyclicWord.of(core)
    assert CyclicWord.of(core).key() == CyclicWord.of(inverse(core)).key()


@given(positive, st.integers(2, 4))
def test_aperiodicity_matches_regex_oracle(w, s):
    assert is_s_aperiodic(w, s) == (not oracles.has_power(w, s))


@given(st.text(alphabet="ab", min_size=1, max_size=3), positive)
def test_occurrences_match_scan(p, t):
    assert occurrences(p, t) == oracles.occurrences(p, t)


@given(st.text(alphabet="ab", max_size=14), st.text(alphabet="ab", min_size=1, max_size=4))
def test_longest_periodic_subword_matches_oracle(V, A):
    start, length = longest_periodic_subword(V, A)
    assert length == oracles.longest_periodic(V, A)
    if length:
        assert is_periodic_with(V[start:start + length], A)


@given(words, words)
def test_cancellation_and_common_affixes(x, y):
    x, y = free_reduce(x), free_reduce(y)
    c = cancellation(x, y)
    assert len(free_reduce(x + y)) == len(x) + len(y) - 2 * c
    assert x[len(x) - c:] == inverse(y[:c])
    m = common_prefix(x, 0, y, 0, min(len(x), len(y)))
    assert x[:m] == y[:m]
    s = common_suffix(x, len(x), y, len(y), min(len(x), len(y)))
    assert x[len(x) - s:] == y[len(y) - s:]


@settings(max_examples=30)
@given(st.text(alphabet="ab", max_size=12))
def test_cube_free_check_agrees_with_naive(w):
    assert is_s_aperiodic(w, 3) == (not oracles.has_cube(w))
