import random

import pytest

import common
from artifact.core_words import free_reduce, inverse
from artifact.diagrams import (AmalgamationRefused, CompatiblePair, Diagram, DiagramError, amalgamate,
                               cell_view, diagram_from_trace, find_compatible_pairs,
                               greendlinger_audit, reduce_diagram, shared_arcs)
from artifact.embedding import invert_factors
from artifact.experiments import solver_for
from artifact.small_cancellation import DehnStep, DehnTrace, Presentation, dehn_reduce


def euler_ok(D):
    V, E, F = D.euler()
    return V - E + F == 2


def traced(name, w):
    emb = common.embedding(name)
    p = solver_for(emb, max(1, len(w)))
    final, trace = dehn_reduce(w, p)
    assert final == ""
    return diagram_from_trace(w, trace, emb), p


def mirror_pair():
    """R = P S glued to R^-1 along S; the boundary reads P P^-1."""
    emb = common.embedding("Z2")
    rw = common.relator_set("Z2").rwords[0]
    R = rw.rendered
    cut = len(R) * 9 // 10
    P, S = R[:cut], R[cut:]
    p = solver_for(emb, 2 * len(R))
    rinv = p.rword(invert_factors(rw.syllables))
    w = P + inverse(P)
    steps = [DehnStep(w, len(P), len(P), S, rinv, len(S), P + S),
             DehnStep(P + S, 0, len(R), "", rw, 0, "")]
    return diagram_from_trace(w, DehnTrace(w, steps, "", False), emb), p, w


def three_cells():
    emb = common.embedding("Z3")
    rs = common.relator_set("Z3")
    X = emb.codes[1]
    R, R2 = rs.rwords[0].rendered, rs.rwords[1].rendered
    w = free_reduce(R + X + inverse(R) + inverse(X) + "ab" + R2 + "BA")
    return traced("Z3", w)


def test_empty_diagram():
    emb = common.embedding("Z2")
    final, trace = dehn_reduce("", common.explicit("Z2"))
    D = diagram_from_trace("", trace, emb)
    assert D.r_cells() == [] and D.boundary_word() == "" and D.check() == []
    audit = greendlinger_audit(D)
    assert audit.passed and audit.cell is None


def test_single_cell_diagram():
    rw = common.relator_set("Z3").rwords[0]
    D, _ = traced("Z3", rw.rendered)
    assert len(D.r_cells()) == 1 and D.boundary_word() == rw.rendered
    assert D.check() == [] and euler_ok(D)
    audit = greendlinger_audit(D)
    assert audit.passed and audit.fraction == 1 and audit.inner_edges == 0
    view = cell_view(D, D.r_cells()[0])
    assert len(view.reduced_contour) == len(rw)
    assert view.reduced_contour in rw.rendered * 2 or view.reduced_contour in inverse(rw.rendered) * 2
    assert 100 * len(view.reduced_contour) >= 98 * len(view.contour)


def test_two_cell_diagram_from_conjugated_product():
    rs = common.relator_set("Z2xZ2")
    R1, R2 = rs.rwords[0].rendered, rs.rwords[3].rendered
    w = free_reduce(R1 + "ab" + R2 + "BA")
    D, p = traced("Z2xZ2", w)
    assert len(D.r_cells()) == 2 and D.boundary_word() == w
    assert D.check() == [] and euler_ok(D)
    assert find_compatible_pairs(D) == []
    assert shared_arcs(D) == []
    assert reduce_diagram(D, p).r_cells() == D.r_cells()


def test_trace_mismatch_is_rejected():
    emb = common.embedding("Z2")
    rw = common.relator_set("Z2").rwords[0]
    _, trace = dehn_reduce(rw.rendered, solver_for(emb, len(rw)))
    with pytest.raises(DiagramError):
        diagram_from_trace(rw.rendered + "a", trace, emb)
    _, trace = dehn_reduce("ab", common.explicit("Z2"))
    with pytest.raises(DiagramError):
        diagram_from_trace("ab", trace, emb)


def test_mirror_pair_is_compatible_and_annihilates():
    D, p, w = mirror_pair()
    assert D.check() == [] and len(D.r_cells()) == 2
    assert shared_arcs(D)  # glued along S, a tenth of the perimeter
    pairs = find_compatible_pairs(D)
    assert len(pairs) == 1 and pairs[0].witness == ()
    E = reduce_diagram(D, p)
    assert E.r_cells() == [] and E.check() == [] and euler_ok(E)
    assert E.boundary_word() == w
    assert greendlinger_audit(E).passed


def test_three_cells_reduce_to_two():
    D, p = three_cells()
    assert len(D.r_cells()) == 3
    pairs = find_compatible_pairs(D)
    assert len(pairs) == 1
    E = amalgamate(D, pairs[0], p)
    assert len(E.r_cells()) == 2 and E.check() == [] and euler_ok(E)
    assert free_reduce(E.boundary_word()) == free_reduce(D.boundary_word())
    R = reduce_diagram(D, p)
    assert len(R.r_cells()) == 2 and find_compatible_pairs(R) == []
    assert greendlinger_audit(R).passed


def test_amalgamation_refused_when_under_generated():
    D, p = three_cells()
    pair = find_compatible_pairs(D)[0]
    with pytest.raises(AmalgamationRefused):
        amalgamate(D, pair, Presentation(p.emb, 2))


def test_invalid_pair_is_rejected():
    D, p = three_cells()
    cells = D.r_cells()
    with pytest.raises(DiagramError):
        amalgamate(D, CompatiblePair(cells[0], cells[0], (), "", ()), p)
    bogus = CompatiblePair(cells[0], cells[1], (D.base,), "", ())
    with pytest.raises(DiagramError):
        amalgamate(D, bogus, p)


def test_json_round_trip_and_dot():
    D, p = three_cells()
    E = Diagram.from_json(D.to_json(), D.emb)
    assert E.boundary_word() == D.boundary_word()
    assert E.check() == [] and E.r_cells() == D.r_cells()
    assert E.euler() == D.euler()
    assert "digraph" in D.to_dot()


@pytest.mark.parametrize("name", common.FIXTURE_NAMES)
@pytest.mark.parametrize("cyclic", [False, True])
def test_pipeline_invariants(name, cyclic):
    emb = common.embedding(name)
    rng = random.Random(11)
    for _ in range(2):
        w = common.conjugated_product(name, rng, 2)
        p = solver_for(emb, len(w))
        final, trace = dehn_reduce(w, p, cyclic=cyclic)
        assert final == ""
        D = diagram_from_trace(w, trace, emb)
        assert D.boundary_word() == w and D.check() == [] and euler_ok(D)
        R = reduce_diagram(D, p)
        assert R.check() == [] and euler_ok(R)
        assert free_reduce(R.boundary_word()) == free_reduce(w)
        assert find_compatible_pairs(R) == []
        assert shared_arcs(R) == []
        audit = greendlinger_audit(R)
        assert audit.passed, audit.flags
