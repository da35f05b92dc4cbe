"""Constructive switch sequences that stay inside the forests or pseudoforests.

Forests are connected by repeated leaf trimming (``forest_transition``).
Pseudoforests are first reduced to a single unicyclic graph or to a forest,
then bridged: forests with ``forest_transition``, unicyclic graphs with a
bidirectional breadth-first search over u-switch moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import _pycore as K
from ._backend import core
from .errors import BudgetExceededError, PreconditionError, TheoremViolation
from .graph import LabeledGraph, degree_vector, structural_class
from .switches import TwoSwitch, apply, enumerate_switches, inverse

DEFAULT_BRIDGE_BUDGET = 10**6


@dataclass(frozen=True)
class SwitchSequence:
    switches: tuple[TwoSwitch, ...]
    trace: tuple[LabeledGraph, ...]

    @classmethod
    def replay(cls, start: LabeledGraph, switches: Iterable[TwoSwitch]) -> SwitchSequence:
        trace = [start]
        taus = tuple(switches)
        for tau in taus:
            trace.append(apply(trace[-1], tau))
        return cls(taus, tuple(trace))

    @property
    def source(self) -> LabeledGraph:
        return self.trace[0]

    @property
    def target(self) -> LabeledGraph:
        return self.trace[-1]

    def __len__(self) -> int:
        return len(self.switches)

    def all_satisfy(self, predicate: Callable[[LabeledGraph], bool]) -> bool:
        return all(predicate(g) for g in self.trace)


def _same_degrees(g: LabeledGraph, h: LabeledGraph) -> None:
    if g.n != h.n or degree_vector(g) != degree_vector(h):
        raise PreconditionError("graphs must have the same degree vector")


def _is_forest(g: LabeledGraph) -> bool:
    return structural_class(g).is_forest


def _is_pseudoforest(g: LabeledGraph) -> bool:
    return structural_class(g).is_pseudoforest


def trimmable_leaves(g: LabeledGraph, h: LabeledGraph) -> frozenset[int]:
    """Leaves whose single edge is present in both graphs."""
    _same_degrees(g, h)
    return frozenset(
        v + 1
        for v, (x, y) in enumerate(zip(g.rows, h.rows))
        if x == y and x and x & (x - 1) == 0
    )


def make_trimmable(f: LabeledGraph, f2: LabeledGraph) -> TwoSwitch:
    """An f-switch on ``f`` after which some leaf becomes trimmable against ``f2``.

    Leaf and neighbour choices take the lowest index available.
    """
    _same_degrees(f, f2)
    if not (_is_forest(f) and _is_forest(f2)):
        raise PreconditionError("make_trimmable requires two forests")
    if any(r == 0 for r in f.rows):
        raise PreconditionError("make_trimmable requires forests without isolated vertices")
    if trimmable_leaves(f, f2):
        raise PreconditionError("nothing to fix: a trimmable leaf already exists")
    if f == f2:
        raise PreconditionError("nothing to fix: the forests are equal")
    alive = (1 << f.n) - 1
    a, b, c, d = K._make_trimmable(f.n, list(f.rows), list(f2.rows), alive)
    return TwoSwitch(a + 1, b + 1, c + 1, d + 1)


def transition_bound(f: LabeledGraph, f2: LabeledGraph) -> int:
    """|E(F') - E(F)| - 1, clamped at 0 for identical forests."""
    return max(0, check_edge_difference(f, f2) - 1)


def forest_transition(f: LabeledGraph, f2: LabeledGraph) -> SwitchSequence:
    """f-switch sequence from f to f2, trimming shared leaves as they appear.

    Each switch is chosen to gain as many edges of f2 as possible, trying
    the trimming switches of ``make_trimmable`` before other f-switches, so
    the length is usually at most |E(f2) - E(f)| - 1. That bound cannot
    always be met: two paths on 8 vertices can differ in 3 edges yet be 3
    f-switches apart.
    """
    _same_degrees(f, f2)
    if not (_is_forest(f) and _is_forest(f2)):
        raise PreconditionError("forest_transition requires two forests")
    taus = [TwoSwitch(a + 1, b + 1, c + 1, d + 1)
            for a, b, c, d in core.forest_transition(f.n, f.rows, f2.rows)]
    seq = SwitchSequence.replay(f, taus)
    if seq.target != f2 or not seq.all_satisfy(_is_forest):
        raise TheoremViolation(
            "forest transition left the forests or missed the target",
            {"n": f.n, "source": [list(e) for e in f.edges()],
             "target": [list(e) for e in f2.edges()],
             "switches": [list(t.as_tuple()) for t in taus]},
        )
    return seq


def check_edge_difference(g: LabeledGraph, h: LabeledGraph) -> int:
    """|E(G) - E(H)| for equal degree vectors; the value 1 is impossible."""
    _same_degrees(g, h)
    diff = sum((x & ~y).bit_count() for x, y in zip(g.rows, h.rows)) // 2
    if diff == 1:
        raise TheoremViolation(
            "two graphs with the same degrees differ in exactly one edge",
            {"n": g.n, "g": [list(e) for e in g.edges()], "h": [list(e) for e in h.edges()]},
        )
    return diff


# ------------------------------------------------------------ pseudoforests


def _cyclic_parts(g: LabeledGraph) -> tuple[list[int], list[int], int]:
    """Masks of unicyclic components, of tree components with an edge, and the 2-core."""
    ring = K.two_core(g.n, g.rows)
    cyclic, trees = [], []
    for comp in K.component_masks(g.n, g.rows):
        if comp & ring:
            cyclic.append(comp)
        elif comp & (comp - 1):
            trees.append(comp)
    return cyclic, trees, ring


def _lowest_edge(g: LabeledGraph, mask: int) -> tuple[int, int]:
    for u in range(g.n):
        if mask >> u & 1:
            nb = g.rows[u] & mask & ~((1 << (u + 1)) - 1)
            if nb:
                return u + 1, (nb & -nb).bit_length()
    raise PreconditionError("component has no edge")


def _glue_cycles(g: LabeledGraph) -> list[TwoSwitch]:
    out = []
    while True:
        cyclic, _, ring = _cyclic_parts(g)
        if len(cyclic) < 2:
            return out
        a, b = _lowest_edge(g, cyclic[0] & ring)
        c, d = _lowest_edge(g, cyclic[1] & ring)
        tau = TwoSwitch(a, b, c, d)
        g = apply(g, tau)
        out.append(tau)


def _nonisolated_zeta(g: LabeledGraph) -> int:
    cyclic, trees, _ = _cyclic_parts(g)
    return len(trees)


def _require_pseudoforest(g: LabeledGraph, what: str) -> None:
    if not _is_pseudoforest(g):
        raise PreconditionError(f"{what} requires a pseudoforest")


def pseudoforest_to_unicyclic(g: LabeledGraph) -> SwitchSequence:
    """Glue the cycles of an all-unicyclic pseudoforest into one unicyclic graph."""
    _require_pseudoforest(g, "pseudoforest_to_unicyclic")
    cyclic, _, _ = _cyclic_parts(g)
    if structural_class(g).kappa != len(cyclic):
        raise PreconditionError("pseudoforest_to_unicyclic requires cyc(G) = kappa(G)")
    return SwitchSequence.replay(g, _glue_cycles(g))


def _to_forest_switches(g: LabeledGraph) -> list[TwoSwitch]:
    taus = _glue_cycles(g)
    for tau in taus:
        g = apply(g, tau)
    cyclic, trees, ring = _cyclic_parts(g)
    if cyclic:
        a, b = _lowest_edge(g, trees[0])
        c, d = _lowest_edge(g, cyclic[0] & ring)
        taus.append(TwoSwitch(a, b, c, d))
    return taus


def pseudoforest_to_forest(g: LabeledGraph) -> SwitchSequence:
    """Glue all cycles into one, then break it against an edge of a tree component."""
    _require_pseudoforest(g, "pseudoforest_to_forest")
    cyclic, trees, _ = _cyclic_parts(g)
    if structural_class(g).kappa == len(cyclic):
        raise PreconditionError("pseudoforest_to_forest requires cyc(G) < kappa(G)")
    if cyclic and not trees:
        raise PreconditionError(
            "pseudoforest_to_forest needs a tree component with an edge; "
            "only isolated vertices are acyclic here"
        )
    return SwitchSequence.replay(g, _to_forest_switches(g))


Neighbors = Callable[[LabeledGraph], Iterator[tuple[TwoSwitch, LabeledGraph]]]


def u_switch_moves(g: LabeledGraph) -> Iterator[tuple[TwoSwitch, LabeledGraph]]:
    """Switches that keep the non-trivial part of ``g`` connected and unicyclic."""
    for tau in enumerate_switches(g):
        if core.classify(K.KIND_U, g.n, g.rows, *tau._zero())[0]:
            yield tau, LabeledGraph(g.n, tuple(K.apply_switch(g.rows, *tau._zero())))


def bidirectional_search(src: LabeledGraph, dst: LabeledGraph, neighbors: Neighbors,
                         budget: int = DEFAULT_BRIDGE_BUDGET) -> list[TwoSwitch]:
    """Shortest switch path from src to dst under the move generator.

    Raises BudgetExceededError after ``budget`` node expansions and
    TheoremViolation when the two searches exhaust without meeting.
    """
    if src == dst:
        return []
    fwd: dict[LabeledGraph, tuple[LabeledGraph, TwoSwitch] | None] = {src: None}
    bwd: dict[LabeledGraph, tuple[LabeledGraph, TwoSwitch] | None] = {dst: None}
    front_f, front_b = [src], [dst]
    expansions = 0
    meet = None
    while front_f and front_b and meet is None:
        forward = len(front_f) <= len(front_b)
        seen, other = (fwd, bwd) if forward else (bwd, fwd)
        nxt = []
        for x in front_f if forward else front_b:
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(f"bridge search exceeded {budget} expansions")
            for tau, y in neighbors(x):
                if y in seen:
                    continue
                seen[y] = (x, tau)
                if y in other:
                    meet = y
                    break
                nxt.append(y)
            if meet is not None:
                break
        if forward:
            front_f = nxt
        else:
            front_b = nxt
    if meet is None:
        raise TheoremViolation(
            "no switch path between the two graphs under the given moves",
            {"n": src.n, "source": [list(e) for e in src.edges()],
             "target": [list(e) for e in dst.edges()]},
        )
    head = []
    x = meet
    while fwd[x] is not None:
        prev, tau = fwd[x]
        head.append(tau)
        x = prev
    head.reverse()
    tail = []
    x = meet
    while bwd[x] is not None:
        prev, tau = bwd[x]
        tail.append(inverse(tau))
        x = prev
    return head + tail


def pseudoforest_transition(g: LabeledGraph, h: LabeledGraph, *,
                            budget: int = DEFAULT_BRIDGE_BUDGET,
                            unicyclic_moves: Neighbors | None = None) -> SwitchSequence:
    """Switch sequence from g to h with every intermediate graph a pseudoforest.

    ``unicyclic_moves`` overrides the move generator used to bridge two
    unicyclic graphs (e.g. adjacency read off a prebuilt realization graph).
    """
    _same_degrees(g, h)
    _require_pseudoforest(g, "pseudoforest_transition")
    _require_pseudoforest(h, "pseudoforest_transition")
    if g == h:
        return SwitchSequence((), (g,))
    zg, zh = _nonisolated_zeta(g), _nonisolated_zeta(h)
    if (zg == 0) != (zh == 0):
        raise TheoremViolation(
            "cycle/component balance differs between two pseudoforests with equal degrees",
            {"n": g.n, "g": [list(e) for e in g.edges()], "h": [list(e) for e in h.edges()]},
        )
    if zg == 0:
        down_g, down_h = _glue_cycles(g), _glue_cycles(h)
    else:
        down_g, down_h = _to_forest_switches(g), _to_forest_switches(h)
    mid_g = SwitchSequence.replay(g, down_g).target
    mid_h = SwitchSequence.replay(h, down_h).target
    if zg == 0:
        bridge = bidirectional_search(mid_g, mid_h, unicyclic_moves or u_switch_moves, budget)
    else:
        bridge = list(forest_transition(mid_g, mid_h).switches)
    taus = down_g + bridge + [inverse(t) for t in reversed(down_h)]
    seq = SwitchSequence.replay(g, taus)
    if seq.target != h or not seq.all_satisfy(_is_pseudoforest):
        raise TheoremViolation(
            "pseudoforest transition left the pseudoforests or missed the target",
            {"n": g.n, "source": [list(e) for e in g.edges()],
             "target": [list(e) for e in h.edges()],
             "switches": [list(t.as_tuple()) for t in taus]},
        )
    return seq


@dataclass(frozen=True)
class ForestSweep:
    lengths: "np.ndarray"  # lengths[i, j]: switches from vertex i to vertex j
    bounds: "np.ndarray"  # |E(F_j) - E(F_i)| - 1, clamped at 0
    invalid: int
    first_invalid: tuple[int, int] | None

    @property
    def within_bound(self) -> bool:
        return bool((self.lengths <= self.bounds).all())


def sweep_forest_transitions(rg) -> ForestSweep:
    """Run the forest transition on every ordered pair of a forest realization graph.

    Every trace is replayed inside the kernel; ``invalid`` counts traces that
    leave the forests or miss the target.
    """
    import numpy as np

    from ._backend import code_kernel

    if rg.filter != "forest":
        raise PreconditionError("sweep_forest_transitions needs a forest-filtered realization graph")
    m = rg.vertex_count
    flat, invalid, first = code_kernel(rg.n).forest_transition_sweep(rg.n, rg.codes)
    lengths = np.asarray(flat, dtype=np.int64).reshape(m, m)
    graphs = [rg.vertex(i) for i in range(m)]
    size = graphs[0].size if graphs else 0
    common = np.array(
        [[sum((x & y).bit_count() for x, y in zip(f.rows, g.rows)) // 2 for g in graphs]
         for f in graphs],
        dtype=np.int64,
    ).reshape(m, m)
    bounds = np.maximum(size - common - 1, 0)
    return ForestSweep(lengths, bounds, int(invalid), first)
