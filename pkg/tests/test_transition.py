from collections import deque

import numpy as np
import pytest

import oracles as O
from switchlab.errors import BudgetExceededError, PreconditionError, TheoremViolation
from switchlab.graph import build_graph, structural_class
from switchlab.realization import (
    build_realization_graph,
    construct_counterexample,
    distance,
    distance_matrix,
    nonincreasing_degree_vectors,
)
from switchlab.switches import TwoSwitch, apply
from switchlab.transition import (
    SwitchSequence,
    check_edge_difference,
    forest_transition,
    make_trimmable,
    pseudoforest_to_forest,
    pseudoforest_to_unicyclic,
    pseudoforest_transition,
    sweep_forest_transitions,
    transition_bound,
    trimmable_leaves,
)

M12 = build_graph(4, [(1, 2), (3, 4)])
M13 = build_graph(4, [(1, 3), (2, 4)])
TRIANGLE = [(1, 2), (2, 3), (1, 3)]


def _shift(edges, k):
    return [(u + k, v + k) for u, v in edges]


def test_trimmable_leaves():
    f = build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    g = build_graph(5, [(1, 2), (2, 4), (4, 3), (3, 5)])
    assert trimmable_leaves(f, g) == {1}
    assert trimmable_leaves(M12, M13) == frozenset()
    with pytest.raises(PreconditionError):
        trimmable_leaves(M12, build_graph(4, [(1, 2)]))


def test_make_trimmable_all_leaves_case():
    tau = make_trimmable(M12, M13)
    assert tau == TwoSwitch(1, 2, 3, 4)
    out = apply(M12, tau)
    assert out == M13 and 1 in trimmable_leaves(out, M13)


def test_make_trimmable_result_has_trimmable_leaf():
    for d in nonincreasing_degree_vectors(6):
        if 0 in d:
            continue
        rg = build_realization_graph(d, "forest")
        graphs = list(rg.vertices())
        for f in graphs:
            for g in graphs:
                if f == g or trimmable_leaves(f, g):
                    continue
                tau = make_trimmable(f, g)
                out = apply(f, tau)
                assert structural_class(out).is_forest
                assert trimmable_leaves(out, g)


def test_make_trimmable_preconditions():
    f = build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    with pytest.raises(PreconditionError, match="nothing to fix"):
        make_trimmable(f, f)
    with pytest.raises(PreconditionError):
        make_trimmable(build_graph(5, [(1, 2), (3, 4)]), build_graph(5, [(1, 3), (2, 4)]))


def test_forest_transition_examples():
    assert len(forest_transition(M12, M12)) == 0
    seq = forest_transition(M12, M13)
    assert len(seq) == 1 and transition_bound(M12, M13) == 1
    assert seq.target == M13


def test_forest_transition_avoids_zero_gain_switch():
    # the plain lowest-index trimming switch loses a shared edge here
    f = build_graph(6, [(1, 4), (1, 6), (2, 3), (2, 5), (3, 4)])
    g = build_graph(6, [(1, 2), (1, 4), (2, 6), (3, 4), (3, 5)])
    seq = forest_transition(f, g)
    assert len(seq) == 2 == transition_bound(f, g)
    assert seq.all_satisfy(lambda h: structural_class(h).is_forest)


def _forest_distance(n, src, dst):
    start, goal = src.edge_set(), dst.edge_set()
    seen = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            return seen[x]
        for y in O.switch_images(n, x):
            if y not in seen and O.is_forest(n, y):
                seen[y] = seen[x] + 1
                queue.append(y)
    return None


def test_forest_pair_beyond_edge_difference_bound():
    # two labeled paths 8-1-6-3-4-5-2-7 and 8-4-5-2-1-6-3-7 differ in 3 edges
    # but no f-switch gains a shared edge, so they are 3 f-switches apart
    f = build_graph(8, [(8, 1), (1, 6), (6, 3), (3, 4), (4, 5), (5, 2), (2, 7)])
    g = build_graph(8, [(8, 4), (4, 5), (5, 2), (2, 1), (1, 6), (6, 3), (3, 7)])
    assert check_edge_difference(f, g) == 3
    assert transition_bound(f, g) == 2
    assert _forest_distance(8, f, g) == 3
    seq = forest_transition(f, g)
    assert len(seq) == 3 and seq.target == g
    assert seq.all_satisfy(lambda h: structural_class(h).is_forest)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_forest_sweep_within_bound(n):
    for d in nonincreasing_degree_vectors(n):
        rg = build_realization_graph(d, "forest")
        if rg.vertex_count == 0:
            continue
        sweep = sweep_forest_transitions(rg)
        assert sweep.invalid == 0
        assert sweep.within_bound, d
        assert (distance_matrix(rg) <= sweep.lengths).all()


def test_forest_sweep_matches_single_calls():
    rg = build_realization_graph((2, 2, 2, 1, 1), "forest")
    sweep = sweep_forest_transitions(rg)
    for i, f in enumerate(rg.vertices()):
        for j, g in enumerate(rg.vertices()):
            assert len(forest_transition(f, g)) == sweep.lengths[i, j]


def test_forest_sweep_needs_forest_filter():
    with pytest.raises(PreconditionError):
        sweep_forest_transitions(build_realization_graph((1, 1, 1, 1), "all"))


def test_forest_transition_preconditions():
    with pytest.raises(PreconditionError):
        forest_transition(build_graph(3, TRIANGLE), build_graph(3, TRIANGLE))
    with pytest.raises(PreconditionError):
        forest_transition(M12, build_graph(4, [(1, 2), (2, 3)]))


def test_pseudoforest_to_unicyclic_examples():
    c5 = build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert len(pseudoforest_to_unicyclic(c5)) == 0
    two = build_graph(6, TRIANGLE + _shift(TRIANGLE, 3))
    seq = pseudoforest_to_unicyclic(two)
    assert len(seq) == 1
    out = seq.target
    assert structural_class(out).is_unicyclic and all(out.degree(v) == 2 for v in range(1, 7))
    for k in (1, 2, 3):
        g = build_graph(3 * k, [e for i in range(k) for e in _shift(TRIANGLE, 3 * i)])
        seq = pseudoforest_to_unicyclic(g)
        assert len(seq) == k - 1
        kappas = [structural_class(h).kappa for h in seq.trace]
        assert kappas == list(range(k, 0, -1))


def test_pseudoforest_to_unicyclic_rejects_tree_components():
    with pytest.raises(PreconditionError):
        pseudoforest_to_unicyclic(construct_counterexample("N", 4))


def test_pseudoforest_to_forest_examples():
    f = build_graph(5, [(1, 2), (2, 3), (4, 5)])
    assert len(pseudoforest_to_forest(f)) == 0
    seq = pseudoforest_to_forest(construct_counterexample("N", 4))
    assert len(seq) == 1 and structural_class(seq.target).is_tree
    g = build_graph(8, TRIANGLE + _shift(TRIANGLE, 3) + [(7, 8)])
    seq = pseudoforest_to_forest(g)
    assert len(seq) == 2 and structural_class(seq.target).is_forest
    assert seq.all_satisfy(lambda h: structural_class(h).is_pseudoforest)


def test_pseudoforest_to_forest_preconditions():
    with pytest.raises(PreconditionError):
        pseudoforest_to_forest(build_graph(3, TRIANGLE))
    with pytest.raises(PreconditionError):
        pseudoforest_to_forest(build_graph(4, TRIANGLE))


def test_pseudoforest_transition_examples():
    n4 = construct_counterexample("N", 4)
    assert len(pseudoforest_transition(n4, n4)) == 0
    n4p = construct_counterexample("Nprime", 4)
    seq = pseudoforest_transition(n4, n4p)
    assert seq.source == n4 and seq.target == n4p
    assert seq.all_satisfy(lambda h: structural_class(h).is_pseudoforest)
    assert any(structural_class(h).is_bipartite for h in seq.trace)


def test_pseudoforest_transition_unicyclic_bridge():
    g = build_graph(6, TRIANGLE + _shift(TRIANGLE, 3))
    h = build_graph(6, [(1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1)])
    seq = pseudoforest_transition(g, h)
    assert seq.target == h
    assert seq.all_satisfy(lambda x: structural_class(x).is_pseudoforest)


def test_pseudoforest_transition_budget():
    g = build_graph(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 7)])
    h = build_graph(7, [(1, 3), (3, 5), (5, 7), (7, 2), (2, 4), (4, 6), (1, 6)])
    with pytest.raises(BudgetExceededError):
        pseudoforest_transition(g, h, budget=1)


def test_pseudoforest_transition_all_pairs_n5():
    for d in nonincreasing_degree_vectors(5):
        rg = build_realization_graph(d, "pseudoforest")
        graphs = list(rg.vertices())
        for g in graphs:
            for h in graphs:
                seq = pseudoforest_transition(g, h, unicyclic_moves=rg.moves())
                assert seq.target == h
                assert seq.all_satisfy(lambda x: structural_class(x).is_pseudoforest)


def test_check_edge_difference_examples():
    assert check_edge_difference(M12, M12) == 0
    assert check_edge_difference(M12, M13) == 2
    with pytest.raises(PreconditionError):
        check_edge_difference(M12, build_graph(4, [(1, 2)]))


def test_check_edge_difference_never_one_n6():
    for d in nonincreasing_degree_vectors(6):
        rg = build_realization_graph(d, "all")
        codes = np.array(rg.codes, dtype=np.uint64)
        diff = np.bitwise_count(codes[:, None] & ~codes[None, :])
        assert not (diff == 1).any()


def test_switch_sequence_replay():
    seq = SwitchSequence.replay(M12, [TwoSwitch(1, 2, 3, 4)])
    assert seq.trace == (M12, M13) and len(seq) == 1
    with pytest.raises(PreconditionError):
        SwitchSequence.replay(M12, [TwoSwitch(1, 3, 2, 4)])


def test_distance_never_exceeds_transition_length_n6():
    rg = build_realization_graph((2, 2, 2, 2, 1, 1), "forest")
    graphs = list(rg.vertices())
    for f in graphs[:20]:
        for g in graphs[:20]:
            assert distance(rg, f, g) <= len(forest_transition(f, g))


def test_theorem_violation_carries_witness():
    err = TheoremViolation("x", {"n": 1})
    assert err.witness == {"n": 1}
