import pytest

import oracles as O
from switchlab import switches as S
from switchlab.errors import PreconditionError, TheoremViolation, VertexRangeError
from switchlab.graph import LabeledGraph, build_graph, degree_vector, structural_class
from switchlab.switches import (
    TwoSwitch,
    apply,
    classifier_sweep,
    classify,
    classify_f,
    classify_p,
    classify_t,
    classify_u,
    enumerate_switches,
    inverse,
    is_valid,
    symmetric_difference_size,
)

P4 = build_graph(4, [(1, 2), (2, 3), (3, 4)])
P6 = build_graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])
C6 = build_graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])
TRIANGLES = build_graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])


def test_is_valid_examples():
    assert is_valid(P4, TwoSwitch(1, 2, 3, 4))
    assert not is_valid(P4, TwoSwitch(2, 1, 3, 4))
    assert not is_valid(P4, TwoSwitch(1, 2, 1, 2))
    with pytest.raises(VertexRangeError):
        is_valid(P4, TwoSwitch(1, 2, 3, 5))


def test_apply_examples():
    assert apply(P4, TwoSwitch(1, 2, 3, 4)).edges() == ((1, 3), (2, 3), (2, 4))
    out = apply(P6, TwoSwitch(2, 1, 4, 5))
    assert set(out.edges()) == {(2, 3), (3, 4), (2, 4), (1, 5), (5, 6)}
    assert not structural_class(out).is_forest


def test_apply_invalid_names_condition():
    with pytest.raises(PreconditionError, match="added edge"):
        apply(P4, TwoSwitch(2, 1, 3, 4))


def test_inverse_examples():
    tau = TwoSwitch(1, 2, 3, 4)
    assert inverse(tau) == TwoSwitch(1, 3, 2, 4)
    assert inverse(inverse(tau)) == tau
    assert apply(apply(P4, tau), inverse(tau)) == P4


def test_enumerate_switches_examples():
    k3 = build_graph(3, [(1, 2), (2, 3), (1, 3)])
    assert enumerate_switches(k3) == []
    assert len(enumerate_switches(P4)) == 1
    matching = build_graph(4, [(1, 2), (3, 4)])
    images = {apply(matching, t).edges() for t in enumerate_switches(matching)}
    assert images == {((1, 3), (2, 4)), ((1, 4), (2, 3))}


def test_enumerate_switches_matches_oracle_images_n5():
    for edges in O.all_graphs(5):
        g = build_graph(5, [tuple(e) for e in edges])
        taus = enumerate_switches(g)
        assert taus == sorted(taus)
        images = {apply(g, t).edge_set() for t in taus}
        assert len(images) == len(taus)
        assert images == O.switch_images(5, edges)


def test_switch_contracts_on_all_graphs_n5():
    for code in range(1 << 10):
        g = LabeledGraph.from_code(5, code)
        for tau in enumerate_switches(g):
            h = apply(g, tau)
            assert degree_vector(h) == degree_vector(g)
            assert symmetric_difference_size(g, h) == 4
            assert apply(h, inverse(tau)) == g


def test_canonical_is_shared_by_equivalent_encodings():
    tau = TwoSwitch(3, 1, 4, 2)
    same = [TwoSwitch(4, 2, 3, 1), TwoSwitch(1, 3, 2, 4), TwoSwitch(2, 4, 1, 3)]
    assert all(t.canonical() == tau.canonical() for t in same)
    g = build_graph(4, [(1, 3), (2, 4)])
    assert {apply(g, t) for t in same + [tau]} == {apply(g, tau)}


def test_classify_t_examples():
    v = classify_t(P4, TwoSwitch(1, 2, 3, 4))
    assert v.preserves and v.kind == "t"
    v = classify_t(P6, TwoSwitch(2, 1, 4, 5))
    assert not v.preserves and v.kind == "none"
    star = build_graph(4, [(1, 2), (1, 3), (1, 4)])
    assert enumerate_switches(star) == []


def test_classify_f_examples():
    two = build_graph(4, [(1, 2), (3, 4)])
    v = classify_f(two, TwoSwitch(1, 2, 3, 4))
    assert v.preserves and v.reason == "f:different-components"
    assert not classify_f(P6, TwoSwitch(2, 1, 4, 5)).preserves
    assert classify_f(P4, TwoSwitch(1, 2, 3, 4)).preserves


def test_classify_u_examples():
    # C4 1-2-3-4 with pendants 5 at 1 and 6 at 3; switch the edges 12 and 34
    g = build_graph(6, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (3, 6)])
    tau = TwoSwitch(1, 2, 3, 4)
    assert is_valid(g, tau)
    assert classify_u(g, tau).preserves
    # removing 12 and 45 and adding 15 and 24 leaves two triangles
    v = classify_u(C6, TwoSwitch(1, 2, 5, 4))
    assert not v.preserves
    assert classify_p(C6, TwoSwitch(1, 2, 5, 4)).preserves
    # adding 14 and 25 instead keeps a single hexagon
    assert classify_u(C6, TwoSwitch(1, 2, 4, 5)).preserves
    # triangle 1-2-3 with paths 1-4-5 and 2-6-7; mix cycle edge 23 and tree edge 45
    g = build_graph(7, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (2, 6), (6, 7)])
    v = classify_u(g, TwoSwitch(2, 3, 5, 4))
    assert v.preserves and v.reason == "u:cycle-edge-and-forest-edge"


def test_classify_p_examples():
    v = classify_p(TRIANGLES, TwoSwitch(1, 2, 4, 5))
    assert v.preserves
    assert structural_class(apply(TRIANGLES, TwoSwitch(1, 2, 4, 5))).is_unicyclic
    # two triangles, each with a pendant leaf; switching the pendant edges so
    # that each leaf moves to the other triangle keeps both cycles apart
    g = build_graph(8, [(1, 2), (2, 3), (1, 3), (1, 4), (5, 6), (6, 7), (5, 7), (5, 8)])
    for tau in enumerate_switches(g):
        v = classify_p(g, tau)
        assert v.preserves == structural_class(apply(g, tau)).is_pseudoforest


def test_classify_p_same_hanging_tree_can_fail():
    # triangle xyz = 1,2,3 with paths 1-4-5 and 1-6-7; switching 45 with 67
    g = build_graph(7, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
    tau = TwoSwitch(4, 5, 6, 7)
    assert is_valid(g, tau)
    assert not classify_p(g, tau).preserves
    assert not structural_class(apply(g, tau)).is_pseudoforest


def test_classifier_preconditions():
    with pytest.raises(PreconditionError):
        classify_t(C6, TwoSwitch(1, 2, 5, 4))
    with pytest.raises(PreconditionError):
        classify_f(C6, TwoSwitch(1, 2, 5, 4))
    with pytest.raises(PreconditionError):
        classify_u(P6, TwoSwitch(1, 2, 3, 4))
    k4 = build_graph(5, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)] + [(4, 5)])
    with pytest.raises(PreconditionError):
        classify_p(k4, TwoSwitch(1, 2, 3, 5))
    assert classify(k4, TwoSwitch(1, 2, 5, 4)) is None


def test_classify_dispatches_by_class():
    assert classify(P4, TwoSwitch(1, 2, 3, 4)).kind == "t"
    two = build_graph(4, [(1, 2), (3, 4)])
    assert classify(two, TwoSwitch(1, 2, 3, 4)).kind == "f"
    assert classify(C6, TwoSwitch(1, 2, 5, 4)).kind == "none"
    assert classify(TRIANGLES, TwoSwitch(1, 2, 4, 5)).kind == "p"


def _oracle_predicate(kind, n, edges):
    if kind == "t":
        return O.is_forest(n, edges) and O.components_count(n, edges) == 1
    if kind == "f":
        return O.is_forest(n, edges)
    if kind == "u":
        return O.is_unicyclic(n, edges)
    return O.is_pseudoforest(n, edges)


def test_classifiers_match_networkx_oracle_n6_pseudoforests():
    n = 6
    for edges in O.all_graphs(n):
        if not O.is_pseudoforest(n, edges):
            continue
        g = build_graph(n, [tuple(e) for e in edges])
        s = structural_class(g)
        kinds = [k for k, ok in (("t", s.is_tree), ("f", s.is_forest),
                                 ("u", s.is_unicyclic), ("p", True)) if ok]
        for tau in enumerate_switches(g):
            image = apply(g, tau).edge_set()
            for kind in kinds:
                v = S._classify(kind, g, tau, verify=False)
                assert v.preserves == _oracle_predicate(kind, n, image), (kind, g, tau)


def test_verify_mode_catches_wrong_criterion(monkeypatch):
    class Liar:
        @staticmethod
        def classify(kind, n, rows, a, b, c, d):
            return False, S.K.R_T_PATH_AB_CD

    monkeypatch.setattr(S, "core", Liar)
    with pytest.raises(TheoremViolation) as info:
        classify_t(P4, TwoSwitch(1, 2, 3, 4), verify=True)
    assert info.value.witness["switch"] == [1, 2, 3, 4]
    assert not classify_t(P4, TwoSwitch(1, 2, 3, 4), verify=False).preserves


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_classifier_sweep_small(n):
    sweep = classifier_sweep(n)
    assert sweep.ok, sweep.first
    assert sweep.graphs["p"] >= sweep.graphs["f"] >= sweep.graphs["t"]


def test_classifier_sweep_counts_n5():
    # labeled trees on 5 vertices: 5^3
    assert classifier_sweep(5).graphs["t"] == 125
