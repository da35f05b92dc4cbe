"""Exact graph parameters by exhaustive search.

Each parameter has one compute routine and one applicability rule. Edge
cover and Z-Grundy domination are undefined on graphs with an isolated
vertex; diameter is undefined on disconnected graphs. Asking for an
undefined value raises :class:`UndefinedParameterError`.
"""

from __future__ import annotations

import os
from enum import Enum
from itertools import combinations
from typing import Iterable

from . import _pycore as K
from ._backend import code_kernel, core
from .errors import PreconditionError, TheoremViolation, UndefinedParameterError
from .graph import LabeledGraph

VERIFY = os.environ.get("SWITCHLAB_VERIFY", "") not in ("", "0")


class ParamId(str, Enum):
    MATCHING = "matching"
    EDGE_COVER = "edge_cover"
    INDEPENDENCE = "independence"
    VERTEX_COVER = "vertex_cover"
    CLIQUE = "clique"
    DOMINATION = "domination"
    COMPONENTS = "components"
    PATH_COVER = "path_cover"
    ZERO_FORCING = "zero_forcing"
    Z_GRUNDY = "z_grundy"
    CHROMATIC = "chromatic"
    RANK = "rank"
    NULLITY = "nullity"
    DIAMETER = "diameter"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def __str__(self) -> str:
        return self.value


_SYMBOLS = {
    ParamId.MATCHING: "mu",
    ParamId.EDGE_COVER: "epsilon",
    ParamId.INDEPENDENCE: "alpha",
    ParamId.VERTEX_COVER: "nu",
    ParamId.CLIQUE: "omega",
    ParamId.DOMINATION: "gamma",
    ParamId.COMPONENTS: "kappa",
    ParamId.PATH_COVER: "pi",
    ParamId.ZERO_FORCING: "Z",
    ParamId.Z_GRUNDY: "gamma_gr_Z",
    ParamId.CHROMATIC: "chi",
    ParamId.RANK: "rank",
    ParamId.NULLITY: "nullity",
    ParamId.DIAMETER: "delta",
}

# (kernel parameter code, complemented to n?) for every identifier
_BASE = {
    ParamId.MATCHING: (K.P_MATCHING, False),
    ParamId.EDGE_COVER: (K.P_MATCHING, True),
    ParamId.INDEPENDENCE: (K.P_INDEPENDENCE, False),
    ParamId.VERTEX_COVER: (K.P_INDEPENDENCE, True),
    ParamId.CLIQUE: (K.P_CLIQUE, False),
    ParamId.DOMINATION: (K.P_DOMINATION, False),
    ParamId.COMPONENTS: (K.P_COMPONENTS, False),
    ParamId.PATH_COVER: (K.P_PATH_COVER, False),
    ParamId.ZERO_FORCING: (K.P_ZERO_FORCING, False),
    ParamId.Z_GRUNDY: (K.P_ZERO_FORCING, True),
    ParamId.CHROMATIC: (K.P_CHROMATIC, False),
    ParamId.RANK: (K.P_RANK, False),
    ParamId.NULLITY: (K.P_RANK, True),
    ParamId.DIAMETER: (K.P_DIAMETER, False),
}

NEEDS_NO_ISOLATED = frozenset({ParamId.EDGE_COVER, ParamId.Z_GRUNDY})

APPLICABILITY = {
    p: "graph has no isolated vertex" if p in NEEDS_NO_ISOLATED
    else "graph is connected" if p is ParamId.DIAMETER
    else "every graph"
    for p in ParamId
}


def parse_param(name: str | ParamId) -> ParamId:
    if isinstance(name, ParamId):
        return name
    key = name.strip()
    for p in ParamId:
        if key in (p.value, p.symbol) or key.replace("-", "_") == p.value:
            return p
    raise PreconditionError(
        f"unknown parameter {name!r}; choose from {', '.join(p.value for p in ParamId)}"
    )


def has_isolated_vertex(g: LabeledGraph) -> bool:
    return any(r == 0 for r in g.rows)


def param_value(g: LabeledGraph, param: str | ParamId) -> int:
    p = parse_param(param)
    if p in NEEDS_NO_ISOLATED and has_isolated_vertex(g):
        raise UndefinedParameterError(f"{p.value} is undefined on a graph with an isolated vertex")
    pcode, complemented = _BASE[p]
    value = core.param_value(g.n, g.rows, pcode)
    if p is ParamId.DIAMETER and value < 0:
        raise UndefinedParameterError("diameter is undefined on a disconnected graph")
    return g.n - value if complemented else value


def param_values(n: int, codes: list[int], param: str | ParamId) -> list[int | None]:
    """Values on many graphs given by edge code; None where undefined."""
    p = parse_param(param)
    pcode, complemented = _BASE[p]
    raw = code_kernel(n).param_values(n, codes, pcode)
    out: list[int | None] = []
    for code, value in zip(codes, raw):
        if p in NEEDS_NO_ISOLATED and _code_has_isolated(n, code):
            out.append(None)
        elif p is ParamId.DIAMETER and value < 0:
            out.append(None)
        else:
            out.append(n - value if complemented else int(value))
    return out


def _code_has_isolated(n: int, code: int) -> bool:
    return any(r == 0 for r in K.code_to_rows(n, code))


# ------------------------------------------------------------ named routines


def matching_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.MATCHING)


def edge_cover_number(g: LabeledGraph, verify: bool | None = None) -> int:
    value = param_value(g, ParamId.EDGE_COVER)
    if VERIFY if verify is None else verify:
        direct = edge_cover_direct(g)
        if direct != value:
            raise TheoremViolation(f"edge cover {value} from matching, {direct} by direct search",
                                   {"n": g.n, "edges": [list(e) for e in g.edges()]})
    return value


def independence_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.INDEPENDENCE)


def vertex_cover_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.VERTEX_COVER)


def clique_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.CLIQUE)


def domination_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.DOMINATION)


def components_count(g: LabeledGraph) -> int:
    return param_value(g, ParamId.COMPONENTS)


def path_cover_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.PATH_COVER)


def zero_forcing_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.ZERO_FORCING)


def z_grundy_number(g: LabeledGraph, verify: bool | None = None) -> int:
    value = param_value(g, ParamId.Z_GRUNDY)
    if VERIFY if verify is None else verify:
        direct = z_grundy_direct(g)
        if direct != value:
            raise TheoremViolation(f"Z-Grundy {value} from forcing, {direct} by sequence search",
                                   {"n": g.n, "edges": [list(e) for e in g.edges()]})
    return value


def chromatic_number(g: LabeledGraph) -> int:
    return param_value(g, ParamId.CHROMATIC)


def adjacency_rank(g: LabeledGraph) -> tuple[int, int]:
    """(rank, nullity) of the adjacency matrix over the rationals."""
    r = param_value(g, ParamId.RANK)
    return r, g.n - r


def diameter(g: LabeledGraph) -> int:
    return param_value(g, ParamId.DIAMETER)


def forcing_closure(g: LabeledGraph, seed: Iterable[int]) -> frozenset[int]:
    mask = 0
    for v in seed:
        mask |= 1 << (v - 1)
    out = K.forcing_closure(list(g.rows), mask)
    return frozenset(v + 1 for v in range(g.n) if out >> v & 1)


# ------------------------------------------------------------ direct searches


def edge_cover_direct(g: LabeledGraph) -> int:
    """Smallest edge set touching every vertex, by ascending subset search."""
    if has_isolated_vertex(g):
        raise UndefinedParameterError("edge_cover is undefined on a graph with an isolated vertex")
    full = (1 << g.n) - 1
    masks = [1 << (u - 1) | 1 << (v - 1) for u, v in g.edges()]
    for k in range(len(masks) + 1):
        for combo in combinations(masks, k):
            cover = 0
            for m in combo:
                cover |= m
            if cover == full:
                return k
    raise AssertionError("unreachable: the full edge set covers every non-isolated vertex")


def z_grundy_direct(g: LabeledGraph) -> int:
    """Longest Z-sequence: each vertex has an open neighbour outside the closed
    neighbourhoods of the vertices chosen before it."""
    if has_isolated_vertex(g):
        raise UndefinedParameterError("z_grundy is undefined on a graph with an isolated vertex")
    n = g.n
    rows = g.rows
    closed = [rows[v] | 1 << v for v in range(n)]
    # layer k holds the chosen-vertex sets of all Z-sequences of length k
    layer = {0}
    best = 0
    while layer:
        nxt = set()
        for chosen in layer:
            covered = 0
            for v in K._bits(chosen):
                covered |= closed[v]
            for v in range(n):
                if not chosen >> v & 1 and rows[v] & ~covered:
                    nxt.add(chosen | 1 << v)
        if nxt:
            best += 1
        layer = nxt
    return best
