"""Exhaustive desk-scale checks, one test per acceptance criterion.

The terminal summary prints one pass/fail line per criterion.
"""

import subprocess
import sys

import numpy as np
import pytest

from switchlab.graph import (
    LabeledGraph,
    build_graph,
    cycle_count,
    degree_vector,
    format_edge_list,
    structural_class,
    zeta,
)
from switchlab.params import ParamId, param_value, z_grundy_direct, zero_forcing_number
from switchlab.realization import (
    are_isomorphic,
    build_realization_graph,
    component_labels,
    connectivity,
    construct_counterexample,
    distance_matrix,
    nonincreasing_degree_vectors,
)
from switchlab.stability import check_interval_property, check_stability, rank_jump_report
from switchlab.switches import apply, classifier_sweep, enumerate_switches
from switchlab.transition import pseudoforest_transition, sweep_forest_transitions

STABLE_ALL = ["matching", "edge_cover", "independence", "vertex_cover", "clique",
              "domination", "components", "path_cover", "chromatic"]
STABLE_FOREST = ["zero_forcing", "z_grundy"]


def _families(n_max, flt):
    for n in range(1, n_max + 1):
        for d in nonincreasing_degree_vectors(n):
            rg = build_realization_graph(d, flt)
            if rg.vertex_count:
                yield d, rg


@pytest.fixture(scope="module")
def forest_families():
    return list(_families(8, "forest"))


@pytest.fixture(scope="module")
def stability_reports(forest_families):
    reports = []
    for d, rg in _families(7, "all"):
        reports += [check_stability(d, p, "all", rg) for p in STABLE_ALL]
    for d, rg in forest_families:
        reports += [check_stability(d, p, "forest", rg) for p in STABLE_FOREST]
    return reports


@pytest.mark.criterion(1, "classifiers agree with apply-then-check on all pseudoforests, n<=8")
def test_criterion_01_classifier_equivalence():
    for n in range(1, 9):
        sweep = classifier_sweep(n)
        assert sweep.ok, (n, sweep.disagreements, sweep.first)
        assert sum(sweep.checks.values()) > 0 or n < 4


@pytest.mark.criterion(2, "forest realization graphs are connected, n<=8")
def test_criterion_02_forest_graphs_connected(forest_families):
    assert len(forest_families) > 0
    bad = [d for d, rg in forest_families if connectivity(rg).component_count != 1]
    assert bad == []


@pytest.mark.criterion(3, "forest transitions stay in forests within |E(F')-E(F)|-1 switches, n<=8")
def test_criterion_03_forest_transition_bound(forest_families):
    invalid, over, short, pairs = 0, [], 0, 0
    for d, rg in forest_families:
        sweep = sweep_forest_transitions(rg)
        pairs += sweep.lengths.size
        invalid += sweep.invalid
        miss = np.argwhere(sweep.lengths > sweep.bounds)
        over += [(d, int(i), int(j)) for i, j in miss]
        short += int((distance_matrix(rg) > sweep.lengths).sum())
    assert invalid == 0
    assert short == 0
    assert not over, f"{len(over)} of {pairs} ordered pairs exceed the bound, first {over[:3]}"


@pytest.mark.criterion(4, "no two same-degree graphs differ in exactly one edge, n<=7")
def test_criterion_04_edge_difference_never_one():
    for d, rg in _families(7, "all"):
        codes = np.array(rg.codes, dtype=np.uint64)
        diff = np.bitwise_count(codes[:, None] & ~codes[None, :])
        assert not (diff == 1).any(), d


@pytest.mark.criterion(5, "pseudoforest realization graphs connected, identities hold, transitions valid, n<=7")
def test_criterion_05_pseudoforests():
    families = 0
    for d, rg in _families(7, "pseudoforest"):
        families += 1
        assert connectivity(rg).component_count == 1, d
        graphs = list(rg.vertices())
        z = {zeta(g) for g in graphs}
        assert len(z) == 1, d
        for g in graphs:
            assert g.size + structural_class(g).kappa == g.n + cycle_count(g)
        moves = rg.moves()
        members = set(graphs)
        for g in graphs:
            for h in graphs:
                seq = pseudoforest_transition(g, h, unicyclic_moves=moves)
                assert seq.source == g and seq.target == h
                assert all(x in members for x in seq.trace), (g, h)
    assert families > 0


def _other_component(flt, g, h):
    rg = build_realization_graph(degree_vector(g), flt)
    labels = component_labels(rg)
    return labels[rg.index_of(g)] != labels[rg.index_of(h)]


@pytest.mark.criterion(6, "B_3 and N_4 are stranded in their bipartite / non-bipartite families")
def test_criterion_06_counterexamples():
    b3, b3p = construct_counterexample("B", 3), construct_counterexample("Bprime", 3)
    for tau in enumerate_switches(b3):
        image = apply(b3, tau)
        assert not structural_class(image).is_bipartite or are_isomorphic(image, b3)
    assert degree_vector(b3) == (4, 4, 3, 3, 3, 3, 1, 1)
    assert _other_component("bipartite", b3, b3p)

    n4, n4p = construct_counterexample("N", 4), construct_counterexample("Nprime", 4)
    taus = enumerate_switches(n4)
    assert taus
    for tau in taus:
        assert structural_class(apply(n4, tau)).is_tree
    assert sorted(degree_vector(n4), reverse=True) == [3, 2, 2, 2, 1, 1, 1]
    assert _other_component("nonbipartite", n4, n4p)


@pytest.mark.criterion(7, "matching, edge cover, independence, vertex cover, clique, domination, "
                          "components, path cover, chromatic number are stable, n<=7")
def test_criterion_07_stability(stability_reports):
    reports = [r for r in stability_reports if r.filter == "all"]
    assert {r.param.value for r in reports} == set(STABLE_ALL)
    bad = [(r.param.value, r.degree, r.stability_witness) for r in reports if not r.is_stable]
    assert bad == []
    assert any(r.excluded for r in reports if r.param is ParamId.EDGE_COVER)


def _isolated_free(n):
    for code in range(1 << n * (n - 1) // 2):
        g = LabeledGraph.from_code(n, code)
        if all(g.rows):
            yield g


@pytest.mark.criterion(8, "zero forcing and Z-Grundy numbers are stable on forests, n<=8")
def test_criterion_08_forcing_stability(stability_reports):
    reports = [r for r in stability_reports if r.filter == "forest"]
    assert {r.param.value for r in reports} == set(STABLE_FOREST)
    bad = [(r.param.value, r.degree, r.stability_witness) for r in reports if not r.is_stable]
    assert bad == []
    for n in range(2, 7):
        for g in _isolated_free(n):
            assert z_grundy_direct(g) + zero_forcing_number(g) == n, g


@pytest.mark.criterion(9, "adjacency rank jumps by 0 or 2 across f-switches and equals 2*matching, n<=8")
def test_criterion_09_rank_jumps(forest_families):
    seen = set()
    for d, rg in forest_families:
        report = rank_jump_report(d, rg)
        assert report.holds, (d, report.first_bad_edge)
        seen |= set(report.jumps)
    assert seen == {0, 2}


@pytest.mark.criterion(10, "diameter on 3^1 2^6 1^3 forests takes values {6,7,8} with a jump of 2")
def test_criterion_10_diameter_counterexample():
    report = check_stability((3, 2, 2, 2, 2, 2, 2, 1, 1, 1), "diameter", "forest")
    assert report.value_set() == [6, 7, 8]
    w = report.stability_witness
    assert w is not None and abs(w.delta) == 2
    assert param_value(w.replay(), ParamId.DIAMETER) - param_value(w.graph, ParamId.DIAMETER) == w.delta


@pytest.mark.criterion(11, "stable parameters on connected families attain an integer interval")
def test_criterion_11_interval_property(stability_reports):
    checked = 0
    for r in stability_reports:
        if r.is_stable and r.rg_connected:
            assert check_interval_property(r) and r.has_interval_property, (r.param, r.degree)
            checked += 1
    assert checked > 0


def _cli(*argv):
    out = subprocess.run([sys.executable, "-m", "switchlab.cli", *argv],
                         capture_output=True, timeout=600)
    return out.returncode, out.stdout, out.stderr


@pytest.mark.criterion(12, "CLI output is byte-identical across runs")
def test_criterion_12_cli_determinism(tmp_path):
    f1, f2 = tmp_path / "f1.el", tmp_path / "f2.el"
    f1.write_text(format_edge_list(build_graph(7, [(1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7)])))
    f2.write_text(format_edge_list(build_graph(7, [(1, 3), (3, 2), (2, 4), (1, 6), (6, 5), (5, 7)])))
    p4 = tmp_path / "p4.el"
    p4.write_text(format_edge_list(build_graph(4, [(1, 2), (2, 3), (3, 4)])))
    dot = str(tmp_path / "out.dot")
    commands = [
        ["realize", "--d", "3^1,2^3,1^3", "--filter", "forest"],
        ["classify", str(p4), "1", "2", "3", "4"],
        ["transit", str(f1), str(f2), "--dot", dot],
        ["explore", "--d", "3^1,2^3,1^3", "--filter", "nonbipartite", "--dot", dot],
        ["param", str(p4), "--param", "matching,domination,rank"],
        ["stability", "--d", "1^4", "--param", "matching"],
        ["stability", "--d", "2^4,1^2", "--param", "matching,domination,diameter", "--filter", "forest"],
        ["interval", "--d", "2^4,1^2", "--param", "zero_forcing", "--filter", "forest"],
        ["distance", str(f1), str(f2)],
        ["counterexample", "B", "3", "--dot", dot],
        ["realize", "--d", "3^1,x"],
        ["param", str(tmp_path / "missing.el"), "--param", "mu"],
    ]
    for argv in commands:
        first = _cli(*argv)
        first_dot = (tmp_path / "out.dot").read_bytes() if "--dot" in argv else None
        second = _cli(*argv)
        second_dot = (tmp_path / "out.dot").read_bytes() if "--dot" in argv else None
        assert first == second, argv
        assert first_dot == second_dot, argv
        assert first[1] or first[2], argv
