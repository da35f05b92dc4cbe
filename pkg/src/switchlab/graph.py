"""Labeled simple graphs on {1..n}, structural predicates and the Cyc/For split."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import _pycore
from ._backend import core
from .errors import GraphConstructionError, PreconditionError, VertexRangeError

MAX_N = _pycore.MAX_N


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable simple graph. ``rows[v-1]`` is the neighbour bitmask of vertex v
    (bit u-1 set when uv is an edge). Build through :func:`build_graph`."""

    n: int
    rows: tuple[int, ...]

    @classmethod
    def from_code(cls, n: int, code: int) -> LabeledGraph:
        return cls(n, tuple(_pycore.code_to_rows(n, code)))

    @property
    def code(self) -> int:
        """Canonical encoding: bit k is set for the k-th pair in lexicographic order."""
        return _pycore.rows_to_code(self.n, self.rows)

    @property
    def size(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, r in enumerate(self.rows):
            for j in range(i + 1, self.n):
                if r >> j & 1:
                    out.append((i + 1, j + 1))
        return tuple(out)

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges())

    def neighbors(self, v: int) -> frozenset[int]:
        _check_vertex(self.n, v)
        r = self.rows[v - 1]
        return frozenset(u + 1 for u in range(self.n) if r >> u & 1)

    def degree(self, v: int) -> int:
        _check_vertex(self.n, v)
        return self.rows[v - 1].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self.n, u)
        _check_vertex(self.n, v)
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def complement(self) -> LabeledGraph:
        full = (1 << self.n) - 1
        return LabeledGraph(
            self.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(self.rows))
        )

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> LabeledGraph:
        rows = list(self.rows)
        for u, v in edges:
            rows[u - 1] &= ~(1 << (v - 1))
            rows[v - 1] &= ~(1 << (u - 1))
        return LabeledGraph(self.n, tuple(rows))

    def induced(self, vertices: Iterable[int]) -> LabeledGraph:
        """Same vertex set, keeping only edges with both ends in ``vertices``."""
        mask = 0
        for v in vertices:
            mask |= 1 << (v - 1)
        return LabeledGraph(
            self.n, tuple(r & mask if mask >> i & 1 else 0 for i, r in enumerate(self.rows))
        )

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, edges={list(self.edges())})"


def _check_vertex(n: int, v: int) -> None:
    if not isinstance(v, int) or not 1 <= v <= n:
        raise VertexRangeError(f"vertex {v} outside 1..{n}")


def build_graph(n: int, edge_list: Iterable[Iterable[int]]) -> LabeledGraph:
    """Validate an edge list and return the graph.

    Raises GraphConstructionError on loops or duplicate edges and
    VertexRangeError on labels outside 1..n.
    """
    if not isinstance(n, int) or n < 0:
        raise GraphConstructionError(f"vertex count must be a non-negative integer, got {n!r}")
    if n > MAX_N:
        raise GraphConstructionError(f"vertex count {n} exceeds the cap of {MAX_N}")
    rows = [0] * n
    for pair in edge_list:
        u, v = tuple(pair)
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise GraphConstructionError(f"self-loop at vertex {u}: {{{u},{v}}}")
        if rows[u - 1] >> (v - 1) & 1:
            raise GraphConstructionError(f"duplicate edge {{{min(u, v)},{max(u, v)}}}")
        rows[u - 1] |= 1 << (v - 1)
        rows[v - 1] |= 1 << (u - 1)
    return LabeledGraph(n, tuple(rows))


def empty_graph(n: int) -> LabeledGraph:
    return build_graph(n, [])


def degree_vector(g: LabeledGraph) -> tuple[int, ...]:
    return tuple(r.bit_count() for r in g.rows)


def check_degree_vector(d: Iterable[int]) -> tuple[int, ...]:
    """Validate the basic DegreeVector invariants (range and parity)."""
    from .errors import InfeasibleDegreeError

    d = tuple(int(x) for x in d)
    n = len(d)
    if n > MAX_N:
        raise InfeasibleDegreeError(f"{n} vertices exceeds the cap of {MAX_N}")
    for pos, x in enumerate(d, start=1):
        if not 0 <= x <= max(n - 1, 0):
            raise InfeasibleDegreeError(f"degree {x} at vertex {pos} outside 0..{n - 1}")
    if sum(d) % 2:
        raise InfeasibleDegreeError(f"degree sum {sum(d)} is odd")
    return d


@dataclass(frozen=True)
class StructuralClass:
    is_forest: bool
    is_tree: bool
    is_unicyclic: bool
    is_pseudoforest: bool
    is_bipartite: bool
    kappa: int
    # 0 or 1 exactly; 2 stands for "two or more" (not counted further)
    cyclicity: int

    @property
    def cyclicity_label(self) -> str:
        return ">=2" if self.cyclicity >= 2 else str(self.cyclicity)

    def as_dict(self) -> dict:
        return {
            "is_forest": self.is_forest,
            "is_tree": self.is_tree,
            "is_unicyclic": self.is_unicyclic,
            "is_pseudoforest": self.is_pseudoforest,
            "is_bipartite": self.is_bipartite,
            "kappa": self.kappa,
            "cyclicity": self.cyclicity_label,
        }


def structural_class(g: LabeledGraph) -> StructuralClass:
    kappa, _trees, uni, heavy, bip = core.struct_stats(g.n, g.rows)
    forest = uni == 0 and heavy == 0
    return StructuralClass(
        is_forest=forest,
        is_tree=forest and kappa == 1,
        is_unicyclic=kappa == 1 and uni == 1,
        is_pseudoforest=heavy == 0,
        is_bipartite=bool(bip),
        kappa=kappa,
        cyclicity=2 if heavy else (1 if uni else 0),
    )


def components(g: LabeledGraph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by least vertex."""
    return [
        frozenset(v + 1 for v in range(g.n) if m >> v & 1)
        for m in _pycore.component_masks(g.n, g.rows)
    ]


def is_pseudoforest(g: LabeledGraph) -> bool:
    return core.struct_stats(g.n, g.rows)[3] == 0


def is_forest(g: LabeledGraph) -> bool:
    s = core.struct_stats(g.n, g.rows)
    return s[2] == 0 and s[3] == 0


@dataclass(frozen=True)
class CycForDecomposition:
    cyc_vertices: frozenset[int]
    cyc_edges: tuple[tuple[int, int], ...]
    for_edges: tuple[tuple[int, int], ...]
    cycle_count: int


def _require_pseudoforest(g: LabeledGraph, what: str) -> None:
    if not is_pseudoforest(g):
        raise PreconditionError(f"{what} requires a pseudoforest (some component has two or more cycles)")


def cyc_for(g: LabeledGraph) -> CycForDecomposition:
    """Split E(G) into cycle edges and the hanging forest by leaf peeling."""
    _require_pseudoforest(g, "cyc_for")
    core_mask = core.two_core(g.n, g.rows)
    cyc_v = frozenset(v + 1 for v in range(g.n) if core_mask >> v & 1)
    cyc_e, for_e = [], []
    for u, v in g.edges():
        (cyc_e if u in cyc_v and v in cyc_v else for_e).append((u, v))
    ring = g.induced(cyc_v)
    count = sum(1 for comp in components(ring) if len(comp) > 1)
    return CycForDecomposition(cyc_v, tuple(cyc_e), tuple(for_e), count)


def cycle_count(g: LabeledGraph) -> int:
    return cyc_for(g).cycle_count


def zeta(g: LabeledGraph) -> int:
    """kappa(G) - cyc(G) for a pseudoforest."""
    _require_pseudoforest(g, "zeta")
    return structural_class(g).kappa - cyc_for(g).cycle_count


def diameter(g: LabeledGraph) -> int:
    value = core.diameter(g.n, g.rows)
    if value < 0:
        raise PreconditionError("diameter requires a connected graph")
    return value


# ------------------------------------------------------------------ formats


def format_edge_list(g: LabeledGraph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> LabeledGraph:
    tokens = [line.split() for line in text.splitlines()]
    tokens = [t for t in tokens if t and not t[0].startswith("#")]
    if not tokens or len(tokens[0]) != 2:
        raise GraphConstructionError("edge list must start with a line 'n m'")
    try:
        n, m = int(tokens[0][0]), int(tokens[0][1])
        pairs = [(int(t[0]), int(t[1])) for t in tokens[1:]]
    except ValueError as exc:
        raise GraphConstructionError(f"non-integer token in edge list: {exc}") from None
    if any(len(t) != 2 for t in tokens[1:]):
        raise GraphConstructionError("every edge line must hold exactly two vertices")
    if len(pairs) != m:
        raise GraphConstructionError(f"header announces {m} edges but {len(pairs)} were given")
    return build_graph(n, pairs)


def to_json_obj(g: LabeledGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json_obj(obj: dict) -> LabeledGraph:
    try:
        return build_graph(int(obj["n"]), [tuple(e) for e in obj["edges"]])
    except (KeyError, TypeError) as exc:
        raise GraphConstructionError(f"malformed graph JSON: {exc}") from None


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(1, g.n + 1))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> LabeledGraph:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            return from_json_obj(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphConstructionError(f"{path}: invalid JSON ({exc})") from None
    return parse_edge_list(text)
