from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import common
import oracles
from artifact.aperiodic_sets import AperiodicFamily, YSet
from artifact.core_words import free_reduce, inverse
from artifact.embedding import (DataIntegrityError, EmbeddingMap, FiniteGroup, LengthFunction,
                                assign_codes, cyclic_group, evaluate_in_G, gword, junction_losses,
                                klein_four, parse_gword, reduce_gword, symmetric3,
                                validate_length_function, word_length)


def test_validate_length_function_examples():
    Z2, Z3, Z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    assert validate_length_function(Z2, LengthFunction((0, 1), Fraction(2))).ok
    bad = validate_length_function(Z3, LengthFunction((0, 0, 0), Fraction(2)))
    assert ("zero-iff-identity", 1) in bad.violations
    lf = word_length(Z4, [1], 3)
    assert lf.values == (0, 1, 2, 1)
    assert validate_length_function(Z4, lf).ok
    asym = validate_length_function(Z3, LengthFunction((0, 1, 2), Fraction(3)))
    assert ("symmetry", 1, 2) in asym.violations


def test_group_tables_are_groups():
    for G in (cyclic_group(5), klein_four(), symmetric3()):
        assert G.check() == []
    assert FiniteGroup.from_json(symmetric3().to_json()) == symmetric3()
    broken = cyclic_group(3).to_json()
    broken["mul"][1][1] = 1
    with pytest.raises(ValueError):
        FiniteGroup.from_json(broken)


def test_trivial_group_has_no_codes():
    G = cyclic_group(1)
    emb = assign_codes(G, LengthFunction((0,), Fraction(1)), YSet.generate(200, 1))
    assert emb.codes == {} and emb.d == 1


@pytest.mark.parametrize("name", common.FIXTURE_NAMES)
def test_fixture_codes_match_greedy_oracle(name):
    emb = common.embedding(name)
    ys = common.yset()
    lengths = [(g, emb.length(g)) for g in emb.group.nonidentity()]
    assert emb.codes == oracles.greedy_codes(lengths, ys.prefix(len(lengths)))
    assert emb.check() == []
    assert len(set(emb.codes.values())) == len(emb.codes)
    for g, x in emb.codes.items():
        assert emb.length(g) <= len(x) < emb.d * emb.length(g)


def test_z2_code_is_shortest_y_word():
    emb = common.embedding("Z2")
    (x,) = emb.codes.values()
    assert x == common.yset()[1]
    assert emb.d == len(x) + 1


def test_greedy_skips_short_y_words():
    # with a large l(g), the first Y-word long enough is taken
    fam = AperiodicFamily(tuple(oracles.family(6)), 6)
    ys = YSet(1, fam)
    emb = assign_codes(cyclic_group(2), LengthFunction((0, 9), Fraction(2)), ys)
    assert emb.codes[1] == ys[3] and len(ys[3]) >= 9 and len(ys[2]) < 9


def test_gword_examples():
    emb = common.embedding("Z3")
    g, g2 = 1, 2
    gw = gword([(g, 1)], emb)
    assert gw.rendered == emb.codes[g] and gw.entire_positions == (0, len(emb.codes[g]))
    assert free_reduce(gword([(g, 1), (g, -1)], emb).rendered) == ""
    gw = gword([(g, 1), (g, 1), (g2, -1)], emb)
    assert gw.rendered == emb.codes[g] * 2 + inverse(emb.codes[g2])
    assert evaluate_in_G(gw.factors, emb.group) == emb.group.identity
    with pytest.raises(ValueError):
        gword([(emb.group.identity, 1)], emb)


def test_evaluate_examples():
    Z2, Z6 = cyclic_group(2), cyclic_group(6)
    assert evaluate_in_G([(1, 1), (1, -1)], Z2) == 0
    assert evaluate_in_G([(1, 1), (1, 1)], Z2) == 0
    assert evaluate_in_G([(2, 1), (3, 1)], Z6) == Z6.mul[2][3] == 5


def test_reduce_gword_junctions():
    emb = common.embedding("S3")
    X = emb.codes
    r = reduce_gword(gword([(1, 1), (2, 1)], emb), emb)
    assert r.losses == (0, 0) and r.core == X[1] + X[2]
    gw = gword([(1, -1), (2, 1)], emb)
    r = reduce_gword(gw, emb)
    assert r.core == free_reduce(gw.rendered)
    # X_s^-1 X_t cancels exactly the common prefix of the two codes
    common_prefix = next(i for i, (x, y) in enumerate(zip(X[1], X[2])) if x != y)
    assert r.losses[1] == common_prefix >= 7
    assert 100 * common_prefix <= min(len(X[1]), len(X[2]))
    assert reduce_gword(gword([(1, 1), (1, -1)], emb), emb).core == ""


def test_junction_loss_guard():
    with pytest.raises(DataIntegrityError):
        junction_losses(["ab" * 10 + "b", "B" + "BA" * 3], cyclic=False)


def test_embedding_json_round_trip():
    emb = common.embedding("S3")
    assert EmbeddingMap.from_json(emb.to_json()) == emb


factor_lists = st.lists(st.tuples(st.sampled_from([1, 2, 3, 4, 5]), st.sampled_from([1, -1])), max_size=6)


@given(factor_lists, factor_lists)
def test_evaluation_is_a_homomorphism(u, v):
    G = common.embedding("S3").group
    assert evaluate_in_G(u + v, G) == G.mul[evaluate_in_G(u, G)][evaluate_in_G(v, G)]


@given(factor_lists)
def test_junction_losses_are_small_and_parse_back(factors):
    emb = common.embedding("S3")
    gw = gword(factors, emb)
    r = reduce_gword(gw, emb)
    assert r.core == free_reduce(gw.rendered)
    for i, c in enumerate(r.losses):
        assert 100 * c <= len(emb.codes[r.factors[i][0]])
    seq = parse_gword(r.core, emb)
    assert seq is not None and free_reduce(emb.render(seq)) == r.core


def test_parse_gword_rejects_non_gwords():
    emb = common.embedding("Z3")
    X = emb.codes[1]
    assert parse_gword(X[:-1], emb) is None
    assert parse_gword("ab" + X, emb) is None
    assert parse_gword("", emb) == ()
    w = X[: len(X) // 2] + "b" + X[len(X) // 2:]
    assert parse_gword(w, emb) is None
