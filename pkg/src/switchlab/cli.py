"""Command-line entry point: ``switchlab <subcommand> ...``.

Every subcommand writes one JSON document (keys sorted, so output is
byte-stable) or a plain-text summary. Errors go to stderr as a single JSON
line ``{"error": {...}, "schema": ...}``.

Exit codes: 0 ok, 1 verification failure, 2 theorem violation, 3 bad input,
4 I/O error, 5 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .errors import (
    BudgetExceededError,
    DegreeParseError,
    InfeasibleDegreeError,
    SwitchLabError,
    TheoremViolation,
)
from .graph import (
    LabeledGraph,
    check_degree_vector,
    degree_vector,
    format_edge_list,
    load_graph,
    structural_class,
    to_dot,
    to_json_obj,
)
from .params import ParamId, param_value, parse_param
from .realization import (
    DEFAULT_VERTEX_BUDGET,
    FILTERS,
    RealizationGraph,
    build_realization_graph,
    connectivity,
    construct_counterexample,
    distance,
    enumerate_realizations,
)
from .stability import check_interval_property, check_stability
from .switches import TwoSwitch, _violation, classify_f, classify_p, classify_t, classify_u
from .transition import (
    DEFAULT_BRIDGE_BUDGET,
    SwitchSequence,
    forest_transition,
    pseudoforest_transition,
    transition_bound,
)

SCHEMA = "switchlab/1"

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_THEOREM = 2
EXIT_INPUT = 3
EXIT_IO = 4
EXIT_BUDGET = 5

_TOKEN = re.compile(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_degree_expression(expr: str) -> tuple[int, ...]:
    """Expand ``"3^1,2^6,1^3"`` into a degree vector.

    Any ``^`` term means multiplicity syntax: degrees are then assigned to
    vertices 1..n in nonincreasing order. A plain comma list without ``^`` is
    taken as a labeled vector in the given order.
    """
    if not expr.strip():
        raise DegreeParseError("empty degree expression")
    out: list[int] = []
    pos = 1
    multiplicity = "^" in expr
    for token in expr.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise DegreeParseError(f"malformed token {token.strip()!r} at position {pos}")
        value, count = int(m.group(1)), int(m.group(2) or 1)
        out.extend([value] * count)
        pos += len(token) + 1
    if multiplicity:
        out.sort(reverse=True)
    if sum(out) % 2:
        raise InfeasibleDegreeError(f"degree sum {sum(out)} of {expr!r} is odd")
    return check_degree_vector(out)


# ------------------------------------------------------------ output


def _emit(args, payload: dict, text: str | None = None) -> None:
    if getattr(args, "format", "json") == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    payload = dict(payload)
    payload["schema"] = SCHEMA
    payload["command"] = args.command
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _graph_obj(g: LabeledGraph) -> dict:
    return to_json_obj(g)


def _switch_list(seq: SwitchSequence) -> list[list[int]]:
    return [list(t.as_tuple()) for t in seq.switches]


def _trace_dot(seq: SwitchSequence) -> str:
    lines = ["digraph trace {", "  node [shape=box];"]
    for i, g in enumerate(seq.trace):
        label = " ".join(f"{u}-{v}" for u, v in g.edges())
        lines.append(f'  g{i} [label="{label}"];')
    for i, t in enumerate(seq.switches):
        lines.append(f'  g{i} -> g{i + 1} [label="{t.as_tuple()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _rg_dot(rg: RealizationGraph) -> str:
    lines = ["graph realizations {"]
    for i, g in enumerate(rg.vertices()):
        label = " ".join(f"{u}-{v}" for u, v in g.edges())
        lines.append(f'  r{i} [label="{label}"];')
    for s, t, sw in zip(rg.src.tolist(), rg.dst.tolist(), rg.switches.tolist()):
        lines.append(f'  r{s} -- r{t} [label="{tuple(sw)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _params_arg(values: list[str]) -> list[ParamId]:
    out = []
    for v in values:
        out.extend(parse_param(x) for x in v.split(",") if x.strip())
    return out


# ------------------------------------------------------------ subcommands


def cmd_realize(args) -> int:
    d = parse_degree_expression(args.d)
    graphs = enumerate_realizations(d, args.filter, args.limit)
    payload = {
        "degree": list(d),
        "filter": args.filter,
        "count": len(graphs),
        "realizations": [[list(e) for e in g.edges()] for g in graphs],
    }
    text = "\n".join(format_edge_list(g) for g in graphs) or "no realizations\n"
    _emit(args, payload, text)
    return EXIT_OK


_CLASSIFIERS = {"t": classify_t, "f": classify_f, "u": classify_u, "p": classify_p}


def cmd_classify(args) -> int:
    g = load_graph(args.graph)
    tau = TwoSwitch(args.a, args.b, args.c, args.d)
    why = _violation(g, tau)
    payload: dict = {"switch": list(tau.as_tuple()), "valid": why is None}
    if why is not None:
        payload["reason"] = why
        _emit(args, payload, f"invalid: {why}")
        return EXIT_OK
    kind = args.kind
    if kind == "auto":
        s = structural_class(g)
        kind = ("t" if s.is_tree else "f" if s.is_forest else
                "u" if s.is_unicyclic else "p" if s.is_pseudoforest else None)
    if kind is None:
        payload["kind"] = "none"
        payload["reason"] = "graph is not a pseudoforest; only validity is defined"
        _emit(args, payload, "valid (graph is not a pseudoforest)")
        return EXIT_OK
    verdict = _CLASSIFIERS[kind](g, tau, verify=args.verify)
    payload.update({"kind": verdict.kind, "preserves": verdict.preserves,
                    "reason": verdict.reason, "class": kind})
    _emit(args, payload, f"valid {verdict.kind} ({verdict.reason})")
    return EXIT_OK


def cmd_transit(args) -> int:
    g = load_graph(args.source)
    h = load_graph(args.target)
    mode = args.mode
    if mode == "auto":
        mode = "forest" if structural_class(g).is_forest and structural_class(h).is_forest \
            else "pseudoforest"
    if mode == "forest":
        seq = forest_transition(g, h)
        bound = transition_bound(g, h)
    else:
        seq = pseudoforest_transition(g, h, budget=args.budget)
        bound = None
    payload = {
        "mode": mode,
        "source": _graph_obj(g),
        "target": _graph_obj(h),
        "length": len(seq),
        "bound": bound,
        "within_bound": None if bound is None else len(seq) <= bound,
        # forest_transition / pseudoforest_transition raise instead of returning a bad trace
        "trace_valid": True,
        "switches": _switch_list(seq),
    }
    if args.dot:
        _write(args.dot, _trace_dot(seq))
    text = f"{len(seq)} switches\n" + "".join(f"{t.as_tuple()}\n" for t in seq.switches)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_explore(args) -> int:
    d = parse_degree_expression(args.d)
    rg = build_realization_graph(d, args.filter, args.limit)
    report = connectivity(rg, with_diameter=args.diameter)
    if args.dot:
        _write(args.dot, _rg_dot(rg))
    payload = {"degree": list(d), "filter": args.filter, **report.as_dict()}
    text = (f"{report.vertex_count} realizations, {report.edge_count} switch edges, "
            f"{report.component_count} components {list(report.component_sizes)}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_param(args) -> int:
    g = load_graph(args.graph)
    values: dict[str, int | None] = {}
    undefined: dict[str, str] = {}
    for p in _params_arg(args.param):
        try:
            values[p.value] = param_value(g, p)
        except SwitchLabError as exc:
            if exc.code != "undefined-parameter":
                raise
            values[p.value] = None
            undefined[p.value] = str(exc)
    payload = {"graph": _graph_obj(g), "values": values, "undefined": undefined}
    text = "\n".join(f"{k} {'undefined' if v is None else v}" for k, v in values.items())
    _emit(args, payload, text)
    return EXIT_OK


def _stability_reports(args):
    d = parse_degree_expression(args.d)
    rg = build_realization_graph(d, args.filter, args.limit)
    return [check_stability(d, p, args.filter, rg=rg) for p in _params_arg(args.param)]


def cmd_stability(args) -> int:
    reports = _stability_reports(args)
    if args.witness_dot:
        parts = []
        for r in reports:
            w = r.stability_witness
            if w is not None:
                parts.append(to_dot(w.graph, f"{r.param.value}_before"))
                parts.append(to_dot(w.replay(), f"{r.param.value}_after"))
        _write(args.witness_dot, "".join(parts))
    payload = {"reports": [r.as_dict() for r in reports]}
    text = "\n".join(
        f"{r.param.value}: {'stable' if r.is_stable else 'NOT stable'} values {r.value_set()}"
        for r in reports
    )
    _emit(args, payload, text)
    if args.require_stable and not all(r.is_stable for r in reports):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_interval(args) -> int:
    reports = _stability_reports(args)
    rows = []
    for r in reports:
        rows.append({**r.as_dict(), "interval": check_interval_property(r)})
    payload = {"reports": rows}
    text = "\n".join(
        f"{r['param']}: {'interval' if r['interval'] else 'gaps ' + str(r['missing_values'])}"
        for r in rows
    )
    _emit(args, payload, text)
    if args.require_interval and not all(r["interval"] for r in rows):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_distance(args) -> int:
    g = load_graph(args.source)
    h = load_graph(args.target)
    d = degree_vector(g)
    rg = build_realization_graph(d, args.filter, args.limit)
    dist = distance(rg, g, h)
    payload = {"degree": list(d), "filter": args.filter, "distance": dist,
               "reachable": dist is not None}
    _emit(args, payload, "unreachable" if dist is None else str(dist))
    return EXIT_OK


def cmd_counterexample(args) -> int:
    g = construct_counterexample(args.name, args.parameter)
    if args.dot:
        _write(args.dot, to_dot(g, args.name))
    payload = {"name": args.name, "parameter": args.parameter, "graph": _graph_obj(g),
               "degree": list(degree_vector(g))}
    _emit(args, payload, format_edge_list(g))
    return EXIT_OK


# ------------------------------------------------------------ parser


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"budget must be positive, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 3 with a JSON line; argparse's own code 2 means a theorem violation here."""

    def error(self, message: str):
        command = self.prog.split()[1] if " " in self.prog else None
        self.exit(_fail(command, EXIT_INPUT, "usage", message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="switchlab",
        description="Exact 2-switch combinatorics on small labeled graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.set_defaults(func=func)
        return p

    def degree_args(p, filters=True):
        p.add_argument("--d", required=True,
                       help='degree vector: "3^1,2^6,1^3" (sorted) or "2,1,1" (as labeled)')
        if filters:
            p.add_argument("--filter", choices=FILTERS, default="all")
        p.add_argument("--limit", type=_positive, default=DEFAULT_VERTEX_BUDGET,
                       help="maximum number of realizations to enumerate")

    p = add("realize", cmd_realize, "list the labeled realizations of a degree vector")
    degree_args(p)

    p = add("classify", cmd_classify, "check a 2-switch and classify what it preserves")
    p.add_argument("graph", help="edge-list or JSON graph file")
    for name in ("a", "b", "c", "d"):
        p.add_argument(name, type=int)
    p.add_argument("--kind", choices=("auto", "t", "f", "u", "p"), default="auto")
    p.add_argument("--verify", action="store_true",
                   help="also apply the switch and check the image directly")

    p = add("transit", cmd_transit, "switch sequence between two graphs with equal degrees")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--mode", choices=("auto", "forest", "pseudoforest"), default="auto")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BRIDGE_BUDGET,
                   help="node expansions allowed in the unicyclic bridge search")
    p.add_argument("--dot", help="write the trace as DOT")

    p = add("explore", cmd_explore, "connectivity of the (filtered) realization graph")
    degree_args(p)
    p.add_argument("--report", dest="format", choices=("json", "text"), default="json")
    p.add_argument("--diameter", action="store_true", help="also report the largest component's diameter")
    p.add_argument("--dot", help="write the realization graph as DOT")

    p = add("param", cmd_param, "evaluate graph parameters")
    p.add_argument("graph")
    p.add_argument("--param", action="append", required=True,
                   help="parameter id(s), comma separated or repeated")

    for name, func, text in (
        ("stability", cmd_stability, "stability sweep of parameters over a realization graph"),
        ("interval", cmd_interval, "interval property of parameters over a realization graph"),
    ):
        p = add(name, func, text)
        degree_args(p)
        p.add_argument("--param", action="append", required=True)
        if name == "stability":
            p.add_argument("--witness-dot", help="write non-stability witnesses as DOT")
            p.add_argument("--require-stable", action="store_true",
                           help="exit 1 when some parameter is not stable")
        else:
            p.add_argument("--require-interval", action="store_true",
                           help="exit 1 when some value set has gaps")

    p = add("distance", cmd_distance, "switch distance inside the filtered realization graph")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--limit", type=_positive, default=DEFAULT_VERTEX_BUDGET)

    p = add("counterexample", cmd_counterexample, "build B, Bprime, N or Nprime")
    p.add_argument("name", choices=("B", "Bprime", "N", "Nprime"))
    p.add_argument("parameter", type=int)
    p.add_argument("--dot", help="write the graph as DOT")
    return parser


def _fail(command: str | None, code: int, kind: str, message: str, witness=None) -> int:
    err = {"code": kind, "message": " ".join(message.split())}
    if witness is not None:
        err["witness"] = witness
    sys.stderr.write(json.dumps({"schema": SCHEMA, "command": command, "error": err},
                                sort_keys=True) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        return _fail(args.command, EXIT_THEOREM, exc.code, str(exc), exc.witness)
    except BudgetExceededError as exc:
        return _fail(args.command, EXIT_BUDGET, exc.code, str(exc))
    except SwitchLabError as exc:
        return _fail(args.command, EXIT_INPUT, exc.code, str(exc))
    except OSError as exc:
        return _fail(args.command, EXIT_IO, "io", f"{exc.filename or ''}: {exc.strerror or exc}")


if __name__ == "__main__":
    sys.exit(main())
