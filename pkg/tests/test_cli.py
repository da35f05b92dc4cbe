import json

import pytest

from switchlab.cli import main, parse_degree_expression
from switchlab.errors import DegreeParseError, InfeasibleDegreeError
from switchlab.graph import build_graph, format_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "switchlab/1"
    return doc


def write_graph(path, n, edges):
    path.write_text(format_edge_list(build_graph(n, edges)))
    return str(path)


def test_parse_degree_expression_examples():
    assert parse_degree_expression("3^1,2^6,1^3") == (3, 2, 2, 2, 2, 2, 2, 1, 1, 1)
    assert parse_degree_expression("1^4") == (1, 1, 1, 1)
    assert parse_degree_expression("4^2,3^4,1^2") == (4, 4, 3, 3, 3, 3, 1, 1)
    assert parse_degree_expression("1^3,3^1,2^3") == (3, 2, 2, 2, 1, 1, 1)
    assert parse_degree_expression("1,2,1") == (1, 2, 1)


def test_parse_degree_expression_errors():
    with pytest.raises(DegreeParseError, match="position 5"):
        parse_degree_expression("3^1,x")
    with pytest.raises(DegreeParseError):
        parse_degree_expression("")
    with pytest.raises(InfeasibleDegreeError):
        parse_degree_expression("3^1,1^2")


def test_realize(capsys):
    doc = run_json(capsys, "realize", "--d", "1^4")
    assert doc["count"] == 3 and doc["command"] == "realize"
    assert [[1, 2], [3, 4]] in doc["realizations"]
    code, out, _ = run(capsys, "realize", "--d", "2,2,2", "--filter", "forest", "--format", "text")
    assert code == 0 and out == "no realizations\n"


def test_classify_p4(capsys, tmp_path):
    g = write_graph(tmp_path / "p4.el", 4, [(1, 2), (2, 3), (3, 4)])
    doc = run_json(capsys, "classify", g, "1", "2", "3", "4")
    assert doc["valid"] and doc["kind"] == "t" and doc["preserves"]
    doc = run_json(capsys, "classify", g, "2", "1", "3", "4")
    assert not doc["valid"] and "added edge" in doc["reason"]
    doc = run_json(capsys, "classify", g, "1", "2", "3", "4", "--kind", "f", "--verify")
    assert doc["kind"] == "f"


def test_classify_outside_pseudoforests(capsys, tmp_path):
    k4 = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    g = write_graph(tmp_path / "k4e.el", 6, k4 + [(5, 6)])
    doc = run_json(capsys, "classify", g, "1", "2", "5", "6")
    assert doc["valid"] and doc["kind"] == "none"


def test_transit_forest(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 4, [(1, 2), (3, 4)])
    b = write_graph(tmp_path / "b.el", 4, [(1, 3), (2, 4)])
    dot = tmp_path / "trace.dot"
    doc = run_json(capsys, "transit", a, b, "--dot", str(dot))
    assert doc["mode"] == "forest" and doc["length"] == 1 and doc["bound"] == 1
    assert doc["within_bound"] and doc["switches"] == [[1, 2, 3, 4]]
    assert dot.read_text().startswith("digraph trace {")


def test_transit_reports_bound_miss(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 8, [(8, 1), (1, 6), (6, 3), (3, 4), (4, 5), (5, 2), (2, 7)])
    b = write_graph(tmp_path / "b.el", 8, [(8, 4), (4, 5), (5, 2), (2, 1), (1, 6), (6, 3), (3, 7)])
    doc = run_json(capsys, "transit", a, b)
    assert doc["length"] == 3 and doc["bound"] == 2 and doc["within_bound"] is False


def test_transit_pseudoforest(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 7, [(2, 3), (2, 4), (3, 4), (1, 5), (1, 6), (1, 7)])
    b = write_graph(tmp_path / "b.el", 7, [(1, 2), (1, 3), (2, 3), (1, 5), (4, 6), (4, 7)])
    doc = run_json(capsys, "transit", a, b)
    assert doc["mode"] == "pseudoforest" and doc["bound"] is None and doc["length"] >= 1


def test_transit_degree_mismatch(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 4, [(1, 2), (3, 4)])
    b = write_graph(tmp_path / "b.el", 4, [(1, 2), (2, 3)])
    code, out, err = run(capsys, "transit", a, b)
    assert code == 3 and out == ""
    assert json.loads(err)["error"]["code"] == "precondition"


def test_explore(capsys, tmp_path):
    dot = tmp_path / "rg.dot"
    doc = run_json(capsys, "explore", "--d", "3^1,2^3,1^3", "--filter", "nonbipartite",
                   "--dot", str(dot))
    assert doc["component_sizes"] == [18, 1]
    assert dot.read_text().count(" -- ") == doc["edge_count"] == 45
    code, out, _ = run(capsys, "explore", "--d", "1^4", "--report", "text")
    assert out.startswith("3 realizations, 3 switch edges, 1 components")


def test_param(capsys, tmp_path):
    g = write_graph(tmp_path / "g.el", 4, [(1, 2), (3, 4)])
    doc = run_json(capsys, "param", g, "--param", "matching,diameter", "--param", "nu")
    assert doc["values"] == {"matching": 2, "diameter": None, "vertex_cover": 2}
    assert "diameter" in doc["undefined"]


def test_stability_example(capsys):
    doc = run_json(capsys, "stability", "--d", "1^4", "--param", "matching")
    (r,) = doc["reports"]
    assert r["is_stable"] and r["values"] == [2]


def test_stability_diameter_counterexample(capsys, tmp_path):
    dot = tmp_path / "w.dot"
    argv = ["stability", "--d", "3^1,2^6,1^3", "--param", "diameter", "--filter", "forest",
            "--witness-dot", str(dot)]
    doc = run_json(capsys, *argv)
    (r,) = doc["reports"]
    assert r["values"] == [6, 7, 8] and not r["is_stable"]
    assert abs(r["stability_witness"]["delta"]) == 2
    assert dot.read_text().count("graph ") == 2
    code, _, _ = run(capsys, *argv, "--require-stable")
    assert code == 1


def test_interval(capsys):
    doc = run_json(capsys, "interval", "--d", "2^4,1^2", "--param", "domination",
                   "--filter", "forest", "--require-interval")
    assert all(r["interval"] for r in doc["reports"])


def test_distance(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 4, [(1, 2), (3, 4)])
    b = write_graph(tmp_path / "b.el", 4, [(1, 3), (2, 4)])
    doc = run_json(capsys, "distance", a, b)
    assert doc["distance"] == 1 and doc["reachable"]


def test_distance_unreachable(capsys, tmp_path):
    a = write_graph(tmp_path / "a.el", 7, [(2, 3), (2, 4), (3, 4), (1, 5), (1, 6), (1, 7)])
    b = write_graph(tmp_path / "b.el", 7, [(1, 2), (1, 3), (2, 3), (1, 5), (4, 6), (4, 7)])
    doc = run_json(capsys, "distance", a, b, "--filter", "nonbipartite")
    assert doc["distance"] is None and not doc["reachable"]


def test_counterexample(capsys, tmp_path):
    dot = tmp_path / "b.dot"
    doc = run_json(capsys, "counterexample", "B", "3", "--dot", str(dot))
    assert doc["degree"] == [4, 4, 3, 3, 3, 3, 1, 1]
    assert dot.read_text().startswith("graph B {")
    code, out, err = run(capsys, "counterexample", "B", "2")
    assert code == 3 and json.loads(err)["error"]["code"] == "range"


def test_error_exit_codes(capsys, tmp_path):
    code, out, err = run(capsys, "realize", "--d", "3^1,x")
    assert code == 3 and out == ""
    assert len(err.splitlines()) == 1 and "position 5" in err
    code, _, err = run(capsys, "param", str(tmp_path / "missing.el"), "--param", "mu")
    assert code == 4 and json.loads(err)["error"]["code"] == "io"
    code, _, err = run(capsys, "realize", "--d", "2^6", "--limit", "5")
    assert code == 5 and json.loads(err)["error"]["code"] == "budget"


def test_usage_errors_exit_three(capsys):
    with pytest.raises(SystemExit) as info:
        main(["realize"])
    assert info.value.code == 3
    err = capsys.readouterr().err
    assert json.loads(err)["error"]["code"] == "usage"


def test_theorem_violation_exit_code(capsys, tmp_path, monkeypatch):
    from switchlab import cli
    from switchlab.errors import TheoremViolation

    def boom(args):
        raise TheoremViolation("made up", {"n": 1})

    monkeypatch.setattr(cli, "cmd_counterexample", boom)
    parser = cli.build_parser()
    monkeypatch.setattr(cli, "build_parser", lambda: parser)
    for action in parser._subparsers._group_actions:
        action.choices["counterexample"].set_defaults(func=boom)
    code, _, err = run(capsys, "counterexample", "N", "4")
    assert code == 2
    assert json.loads(err)["error"]["witness"] == {"n": 1}


def test_text_format(capsys):
    code, out, _ = run(capsys, "counterexample", "N", "4", "--format", "text")
    assert out.splitlines()[0] == "7 6"
