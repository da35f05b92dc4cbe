"""Labeled realizations of a degree vector and the realization graph over them.

Vertices of a :class:`RealizationGraph` are labeled graphs (stored by their
canonical edge code, sorted ascending); two are adjacent when a single
2-switch turns one into the other and both pass the filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from . import _pycore
from ._backend import code_kernel
from .errors import BudgetExceededError, MembershipError, PreconditionError, RangeError
from .graph import LabeledGraph, build_graph, check_degree_vector, degree_vector
from .switches import TwoSwitch

FILTERS = _pycore.FILTERS
DEFAULT_VERTEX_BUDGET = 2 * 10**6


def _filter_code(name: str) -> int:
    try:
        return FILTERS.index(name)
    except ValueError:
        raise PreconditionError(f"unknown filter {name!r}; choose from {', '.join(FILTERS)}") from None


def realization_codes(d, filter: str = "all", limit: int = DEFAULT_VERTEX_BUDGET) -> list[int]:
    d = check_degree_vector(d)
    codes = code_kernel(len(d)).realizations(list(d), _filter_code(filter), limit)
    if len(codes) > limit:
        raise BudgetExceededError(f"more than {limit} realizations of {d} under filter {filter!r}")
    return list(codes)


def enumerate_realizations(d, filter: str = "all",
                           limit: int = DEFAULT_VERTEX_BUDGET) -> list[LabeledGraph]:
    """Every labeled graph with degree vector d passing the filter, by edge code."""
    d = check_degree_vector(d)
    return [LabeledGraph.from_code(len(d), c) for c in realization_codes(d, filter, limit)]


@dataclass(eq=False)
class RealizationGraph:
    degree: tuple[int, ...]
    filter: str
    codes: list[int]
    src: np.ndarray
    dst: np.ndarray
    switches: np.ndarray  # (edges, 4), 1-based, takes codes[src] to codes[dst]
    index: dict[int, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.degree)

    @property
    def vertex_count(self) -> int:
        return len(self.codes)

    @property
    def edge_count(self) -> int:
        return len(self.src)

    def vertex(self, i: int) -> LabeledGraph:
        return LabeledGraph.from_code(self.n, self.codes[i])

    def vertices(self) -> Iterator[LabeledGraph]:
        for i in range(len(self.codes)):
            yield self.vertex(i)

    def index_of(self, g: LabeledGraph) -> int:
        i = self.index.get(g.code) if g.n == self.n else None
        if i is None:
            raise MembershipError(f"{g!r} is not a vertex of this realization graph")
        return i

    def __contains__(self, g: LabeledGraph) -> bool:
        return g.n == self.n and g.code in self.index

    def matrix(self) -> csr_matrix:
        m = len(self.codes)
        ones = np.ones(len(self.src), dtype=np.int8)
        a = csr_matrix((ones, (self.src, self.dst)), shape=(m, m))
        return (a + a.T).tocsr()

    def adjacency(self) -> list[list[tuple[int, TwoSwitch]]]:
        """Per vertex: (neighbour index, switch taking this vertex to it)."""
        out: list[list[tuple[int, TwoSwitch]]] = [[] for _ in self.codes]
        for k, (i, j) in enumerate(zip(self.src.tolist(), self.dst.tolist())):
            a, b, c, d = self.switches[k].tolist()
            tau = TwoSwitch(a, b, c, d)
            out[i].append((j, tau))
            out[j].append((i, TwoSwitch(a, c, b, d)))
        for row in out:
            row.sort(key=lambda item: item[1])
        return out

    def moves(self):
        """Move generator over this graph, for searches that want one."""
        adj = self.adjacency()
        graphs = list(self.vertices())
        pos = {g: i for i, g in enumerate(graphs)}

        def neighbors(g: LabeledGraph):
            i = pos.get(g)
            if i is None:
                i = self.index_of(g)
            for j, tau in adj[i]:
                yield tau, graphs[j]

        return neighbors


def build_realization_graph(d, filter: str = "all",
                            limit: int = DEFAULT_VERTEX_BUDGET) -> RealizationGraph:
    d = check_degree_vector(d)
    n = len(d)
    codes = realization_codes(d, filter, limit)
    kernel = code_kernel(n)
    src, dst, flat = kernel.rg_edges(n, codes)
    sw = np.asarray(flat, dtype=np.int64).reshape(-1, 4) + 1
    return RealizationGraph(
        degree=d,
        filter=filter,
        codes=codes,
        src=np.asarray(src, dtype=np.int64),
        dst=np.asarray(dst, dtype=np.int64),
        switches=sw,
        index={c: i for i, c in enumerate(codes)},
    )


@dataclass(frozen=True)
class ExplorationReport:
    vertex_count: int
    edge_count: int
    component_count: int
    component_sizes: tuple[int, ...]
    diameter_of_largest: int | None = None

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "component_count": self.component_count,
            "component_sizes": list(self.component_sizes),
            "diameter_of_largest": self.diameter_of_largest,
        }


def component_labels(rg: RealizationGraph) -> np.ndarray:
    if rg.vertex_count == 0:
        return np.zeros(0, dtype=np.int64)
    _, labels = connected_components(rg.matrix(), directed=False)
    return labels


def connectivity(rg: RealizationGraph, with_diameter: bool = False) -> ExplorationReport:
    labels = component_labels(rg)
    sizes = tuple(sorted(np.bincount(labels).tolist(), reverse=True)) if len(labels) else ()
    diam = None
    if with_diameter and len(labels):
        big = int(np.argmax(np.bincount(labels)))
        members = np.flatnonzero(labels == big)
        sub = rg.matrix()[members][:, members]
        dist = shortest_path(sub, unweighted=True, directed=False)
        diam = int(dist.max())
    return ExplorationReport(rg.vertex_count, rg.edge_count, len(sizes), sizes, diam)


def distance_matrix(rg: RealizationGraph) -> np.ndarray:
    """All-pairs switch distances; -1 marks unreachable pairs."""
    if rg.vertex_count == 0:
        return np.zeros((0, 0), dtype=np.int64)
    dist = shortest_path(rg.matrix(), unweighted=True, directed=False)
    out = np.where(np.isinf(dist), -1, dist)
    return out.astype(np.int64)


def distance(rg: RealizationGraph, g: LabeledGraph, h: LabeledGraph) -> int | None:
    """Switch distance inside the realization graph, or None when unreachable."""
    i, j = rg.index_of(g), rg.index_of(h)
    if i == j:
        return 0
    dist = shortest_path(rg.matrix(), unweighted=True, directed=False, indices=[i])[0, j]
    return None if np.isinf(dist) else int(dist)


# ------------------------------------------------------------ degree vectors


def is_graphical(d) -> bool:
    return sum(d) % 2 == 0 and _pycore._graphical(list(d))


def nonincreasing_degree_vectors(n: int) -> Iterator[tuple[int, ...]]:
    """Every graphical nonincreasing degree vector of length n, in lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(n), n):
        d = tuple(sorted(combo, reverse=True))
        if is_graphical(d):
            out.append(d)
    yield from sorted(out)


def realizable_degree_vectors(n: int, filter: str = "all") -> Iterator[tuple[int, ...]]:
    """Nonincreasing vectors with at least one realization under the filter."""
    for d in nonincreasing_degree_vectors(n):
        if filter == "all" or code_kernel(n).realizations(list(d), _filter_code(filter), 0):
            yield d


# ------------------------------------------------------------ constructions


def construct_counterexample(name: str, parameter: int) -> LabeledGraph:
    """The bipartite pair B_n / B'_n and the non-bipartite pair N_k / N'_k.

    Labels are chosen so the degree vector is nonincreasing; both members of
    each pair share the same labeled degree vector.
    """
    if name in ("B", "Bprime"):
        n = parameter
        if n < 3:
            raise RangeError(f"{name} needs n >= 3, got {n}")
        if name == "B":
            left = [1] + list(range(3, n + 2))
            right = [2] + list(range(n + 2, 2 * n + 1))
        else:
            left = [1, 2] + list(range(3, n + 1))
            right = list(range(n + 1, 2 * n + 1))
        edges = [(x, y) for x in left for y in right]
        edges += [(1, 2 * n + 1), (2, 2 * n + 2)]
        return build_graph(2 * n + 2, edges)
    if name in ("N", "Nprime"):
        k = parameter
        if k < 4:
            raise RangeError(f"{name} needs k >= 4, got {k}")
        leaves = list(range(5, k + 4))
        if name == "N":
            edges = [(2, 3), (2, 4), (3, 4)] + [(1, x) for x in leaves]
        else:
            edges = [(1, 2), (1, 3), (2, 3)] + [(1, x) for x in leaves[: k - 3]]
            edges += [(4, x) for x in leaves[k - 3:]]
        return build_graph(k + 3, edges)
    raise PreconditionError(f"unknown construction {name!r}; choose B, Bprime, N or Nprime")


# ------------------------------------------------------------ isomorphism


def _refine(g: LabeledGraph) -> list[int]:
    colors = list(degree_vector(g))
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in range(g.n) if g.rows[v] >> u & 1)))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def are_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Exact test: colour refinement, then backtracking over colour classes."""
    if g.n != h.n or g.size != h.size:
        return False
    if sorted(degree_vector(g)) != sorted(degree_vector(h)):
        return False
    # refine both jointly so colour ids are comparable
    joint = build_graph(
        2 * g.n,
        list(g.edges()) + [(u + g.n, v + g.n) for u, v in h.edges()],
    )
    colors = _refine(joint)
    cg, ch = colors[: g.n], colors[g.n:]
    if sorted(cg) != sorted(ch):
        return False
    order = sorted(range(g.n), key=lambda v: (cg.count(cg[v]), -g.rows[v].bit_count(), v))
    image = [-1] * g.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == g.n:
            return True
        v = order[k]
        for w in range(h.n):
            if used >> w & 1 or ch[w] != cg[v]:
                continue
            ok = True
            for u in order[:k]:
                if (g.rows[v] >> u & 1) != (h.rows[w] >> image[u] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(k + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return extend(0)
