"""The 2-switch, its inverse, enumeration, and structure-preservation classifiers.

A switch ``TwoSwitch(a, b, c, d)`` deletes ab and cd and adds ac and bd.
Each classifier decides from the structure of the input graph alone whether
the image keeps the class (tree, forest, unicyclic, pseudoforest); with
``verify=True`` the image is also built and checked directly, and any
disagreement raises :class:`TheoremViolation`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _pycore as K
from ._backend import core
from .errors import PreconditionError, TheoremViolation, VertexRangeError
from .graph import LabeledGraph, structural_class

VERIFY = os.environ.get("SWITCHLAB_VERIFY", "") not in ("", "0")

REASONS = {
    K.R_T_PATH_AB_CD: "t:path-ab..cd",
    K.R_T_PATH_BA_DC: "t:path-ba..dc",
    K.R_T_NO_PATH: "t:no-path",
    K.R_F_DIFFERENT_COMPONENTS: "f:different-components",
    K.R_F_SAME_COMPONENT_TREE: "f:same-component-t-switch",
    K.R_F_SAME_COMPONENT_BROKEN: "f:same-component-not-t-switch",
    K.R_U_FOREST_EDGES_KEEP: "u:forest-edges-t-on-every-cut",
    K.R_U_FOREST_EDGES_BREAK: "u:forest-edges-cut-fails",
    K.R_U_MIXED: "u:cycle-edge-and-forest-edge",
    K.R_U_SHORT_CYCLE: "u:cycle-edges-short-cycle",
    K.R_U_CYCLE_SPLIT: "u:cycle-edges-cycle-splits",
    K.R_U_CYCLE_KEPT: "u:cycle-edges-cycle-kept",
    K.R_P_SPLIT_TREES_KEEP: "p:separate-hanging-trees-t-on-every-cut",
    K.R_P_SPLIT_TREES_BREAK: "p:separate-hanging-trees-cut-fails",
    K.R_P_SHARED_TREE_KEEP: "p:same-hanging-tree-cycle-side-untouched",
    K.R_P_SHARED_TREE_BREAK: "p:same-hanging-tree-second-cycle",
    K.R_P_CROSS_KEEP: "p:two-unicyclic-acyclic-sides",
    K.R_P_CROSS_BREAK: "p:two-unicyclic-cycles-merge",
    K.R_P_OTHER: "p:always",
}

_KIND_CODE = {"t": K.KIND_T, "f": K.KIND_F, "u": K.KIND_U, "p": K.KIND_P}


@dataclass(frozen=True, order=True)
class TwoSwitch:
    a: int
    b: int
    c: int
    d: int

    @property
    def removed(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    @property
    def added(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.c), (self.b, self.d)

    def canonical(self) -> TwoSwitch:
        """Least of the four encodings that perform the same edge replacement."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return min(TwoSwitch(a, b, c, d), TwoSwitch(c, d, a, b),
                   TwoSwitch(b, a, d, c), TwoSwitch(d, c, b, a))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def _zero(self) -> tuple[int, int, int, int]:
        return self.a - 1, self.b - 1, self.c - 1, self.d - 1


@dataclass(frozen=True)
class SwitchVerdict:
    preserves: bool
    kind: str
    reason: str


def _violation(g: LabeledGraph, tau: TwoSwitch) -> str | None:
    for v in tau.as_tuple():
        if not isinstance(v, int) or not 1 <= v <= g.n:
            raise VertexRangeError(f"switch vertex {v} outside 1..{g.n}")
    if len(set(tau.as_tuple())) != 4:
        return "vertices a, b, c, d are not distinct"
    a, b, c, d = tau.as_tuple()
    if not g.has_edge(a, b):
        return f"removed edge {{{a},{b}}} is not in the graph"
    if not g.has_edge(c, d):
        return f"removed edge {{{c},{d}}} is not in the graph"
    if g.has_edge(a, c):
        return f"added edge {{{a},{c}}} is already in the graph"
    if g.has_edge(b, d):
        return f"added edge {{{b},{d}}} is already in the graph"
    return None


def is_valid(g: LabeledGraph, tau: TwoSwitch) -> bool:
    return _violation(g, tau) is None


def _require_valid(g: LabeledGraph, tau: TwoSwitch) -> None:
    why = _violation(g, tau)
    if why is not None:
        raise PreconditionError(f"invalid 2-switch {tau.as_tuple()}: {why}")


def apply(g: LabeledGraph, tau: TwoSwitch) -> LabeledGraph:
    _require_valid(g, tau)
    return LabeledGraph(g.n, tuple(K.apply_switch(g.rows, *tau._zero())))


def inverse(tau: TwoSwitch) -> TwoSwitch:
    """The switch (a, c, b, d), which undoes tau on its image."""
    return TwoSwitch(tau.a, tau.c, tau.b, tau.d)


def enumerate_switches(g: LabeledGraph) -> list[TwoSwitch]:
    """One representative per valid edge replacement, in lexicographic order."""
    return [TwoSwitch(a + 1, b + 1, c + 1, d + 1) for a, b, c, d in core.switches(g.n, g.rows)]


def symmetric_difference_size(g: LabeledGraph, h: LabeledGraph) -> int:
    return sum((x ^ y).bit_count() for x, y in zip(g.rows, h.rows)) // 2


def _predicate(kind: str, g: LabeledGraph) -> bool:
    s = structural_class(g)
    return {
        "t": s.is_tree,
        "f": s.is_forest,
        "u": s.is_unicyclic,
        "p": s.is_pseudoforest,
    }[kind]


def _classify(kind: str, g: LabeledGraph, tau: TwoSwitch, verify: bool | None) -> SwitchVerdict:
    _require_valid(g, tau)
    preserves, code = core.classify(_KIND_CODE[kind], g.n, g.rows, *tau._zero())
    preserves = bool(preserves)
    if VERIFY if verify is None else verify:
        direct = _predicate(kind, apply(g, tau))
        if direct != preserves:
            raise TheoremViolation(
                f"{kind}-switch criterion says {preserves} but the image says {direct}",
                {"graph": [list(e) for e in g.edges()], "n": g.n,
                 "switch": list(tau.as_tuple()), "kind": kind, "reason": REASONS[code]},
            )
    return SwitchVerdict(preserves, kind if preserves else "none", REASONS[code])


def classify_t(tree: LabeledGraph, tau: TwoSwitch, verify: bool | None = None) -> SwitchVerdict:
    """t-switch test: T must contain the path a b ... c d or b a ... d c."""
    if not structural_class(tree).is_tree:
        raise PreconditionError("classify_t requires a tree")
    return _classify("t", tree, tau, verify)


def classify_f(forest: LabeledGraph, tau: TwoSwitch, verify: bool | None = None) -> SwitchVerdict:
    if not structural_class(forest).is_forest:
        raise PreconditionError("classify_f requires a forest")
    return _classify("f", forest, tau, verify)


def classify_u(graph: LabeledGraph, tau: TwoSwitch, verify: bool | None = None) -> SwitchVerdict:
    if not structural_class(graph).is_unicyclic:
        raise PreconditionError("classify_u requires a connected unicyclic graph")
    return _classify("u", graph, tau, verify)


def classify_p(graph: LabeledGraph, tau: TwoSwitch, verify: bool | None = None) -> SwitchVerdict:
    if not structural_class(graph).is_pseudoforest:
        raise PreconditionError("classify_p requires a pseudoforest")
    return _classify("p", graph, tau, verify)


def classify(graph: LabeledGraph, tau: TwoSwitch, verify: bool | None = None) -> SwitchVerdict | None:
    """Classify with the narrowest class the graph belongs to.

    Returns None for graphs outside the pseudoforests, where only validity is
    defined.
    """
    s = structural_class(graph)
    if s.is_tree:
        return classify_t(graph, tau, verify)
    if s.is_forest:
        return classify_f(graph, tau, verify)
    if s.is_unicyclic:
        return classify_u(graph, tau, verify)
    if s.is_pseudoforest:
        return classify_p(graph, tau, verify)
    return None


@dataclass(frozen=True)
class ClassifierSweep:
    """Counts from checking every classifier on every labeled pseudoforest of order n."""

    n: int
    graphs: dict[str, int]
    checks: dict[str, int]
    disagreements: dict[str, int]
    first: tuple[str, LabeledGraph, TwoSwitch] | None

    @property
    def ok(self) -> bool:
        return not any(self.disagreements.values())


def classifier_sweep(n: int, backend=None) -> ClassifierSweep:
    """Compare each classifier with apply-then-check over all pseudoforests on n vertices."""
    kernel = backend or core
    graphs, checks, bad, first = kernel.classifier_sweep(n)
    names = "tfup"
    witness = None
    if first is not None:
        kd, rows, tau = first
        witness = (names[kd], LabeledGraph(n, tuple(rows)),
                   TwoSwitch(*(v + 1 for v in tau)))
    return ClassifierSweep(
        n,
        dict(zip(names, graphs)),
        dict(zip(names, checks)),
        dict(zip(names, bad)),
        witness,
    )
