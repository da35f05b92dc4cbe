"""Stability and interval-property sweeps over filtered realization graphs.

A parameter is stable on a family when no single switch inside the family
moves it by more than one. Both directions of every edge are measured.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import TheoremViolation
from .graph import LabeledGraph
from .params import ParamId, param_values, parse_param
from .realization import RealizationGraph, build_realization_graph
from .switches import TwoSwitch, apply


@dataclass(frozen=True)
class StabilityWitness:
    graph: LabeledGraph
    switch: TwoSwitch
    delta: int

    def replay(self) -> LabeledGraph:
        return apply(self.graph, self.switch)

    def as_dict(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges()]},
            "switch": list(self.switch.as_tuple()),
            "delta": self.delta,
        }


@dataclass
class ParamReport:
    param: ParamId
    degree: tuple[int, ...]
    filter: str
    values: dict[int, int] = field(repr=False)
    min: int | None
    max: int | None
    is_stable: bool
    stability_witness: StabilityWitness | None
    has_interval_property: bool
    missing_values: list[int]
    vertex_count: int
    edge_count: int
    edges_checked: int
    excluded: int
    max_increase: int
    max_decrease: int
    rg_connected: bool

    @property
    def empty_domain(self) -> bool:
        return not self.values

    def value_set(self) -> list[int]:
        return sorted(set(self.values.values()))

    def as_dict(self) -> dict:
        return {
            "param": self.param.value,
            "degree": list(self.degree),
            "filter": self.filter,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "edges_checked": self.edges_checked,
            "excluded_realizations": self.excluded,
            "empty_domain": self.empty_domain,
            "min": self.min,
            "max": self.max,
            "values": self.value_set(),
            "max_increase": self.max_increase,
            "max_decrease": self.max_decrease,
            "is_stable": self.is_stable,
            "stability_witness": None if self.stability_witness is None
            else self.stability_witness.as_dict(),
            "has_interval_property": self.has_interval_property,
            "missing_values": self.missing_values,
            "rg_connected": self.rg_connected,
        }


def _contiguous(values) -> tuple[bool, list[int]]:
    vals = sorted(set(values))
    if not vals:
        return True, []
    missing = sorted(set(range(vals[0], vals[-1] + 1)) - set(vals))
    return not missing, missing


def check_stability(d, param: str | ParamId, filter: str = "all",
                    rg: RealizationGraph | None = None) -> ParamReport:
    """Evaluate the parameter on every realization and sweep every edge.

    Realizations where the parameter is undefined are left out of the value
    map and counted in ``excluded``; edges touching them are skipped.
    ``rg_connected`` refers to the realization graph restricted to the
    realizations that have a value.
    """
    p = parse_param(param)
    if rg is None:
        rg = build_realization_graph(d, filter)
    vals = param_values(rg.n, rg.codes, p)
    defined = np.array([v is not None for v in vals], dtype=bool)
    arr = np.array([v if v is not None else 0 for v in vals], dtype=np.int64)

    keep = defined[rg.src] & defined[rg.dst]
    delta = arr[rg.dst] - arr[rg.src]
    delta = np.where(keep, delta, 0)
    max_up = int(max(delta.max(initial=0), (-delta).max(initial=0)))
    max_inc = int(delta.max(initial=0))
    max_dec = int((-delta).max(initial=0))
    # an edge read in reverse swaps increase and decrease; both are bounded
    # by max_up, which is what stability is about
    bad = np.flatnonzero(np.abs(delta) >= 2)
    witness = None
    if len(bad):
        k = int(bad[0])
        witness = StabilityWitness(
            rg.vertex(int(rg.src[k])),
            TwoSwitch(*(int(x) for x in rg.switches[k])),
            int(delta[k]),
        )

    values = {rg.codes[i]: int(arr[i]) for i in np.flatnonzero(defined)}
    interval, missing = _contiguous(values.values())
    idx = np.flatnonzero(defined)
    if len(idx) <= 1:
        connected = True
    else:
        sub = rg.matrix()[idx][:, idx]
        connected = connected_components(sub, directed=False)[0] == 1
    return ParamReport(
        param=p,
        degree=rg.degree,
        filter=rg.filter,
        values=values,
        min=min(values.values()) if values else None,
        max=max(values.values()) if values else None,
        is_stable=max_up <= 1,
        stability_witness=witness,
        has_interval_property=interval,
        missing_values=missing,
        vertex_count=rg.vertex_count,
        edge_count=rg.edge_count,
        edges_checked=int(keep.sum()),
        excluded=int((~defined).sum()),
        max_increase=max_inc,
        max_decrease=max_dec,
        rg_connected=bool(connected),
    )


def check_interval_property(report: ParamReport) -> bool:
    """Whether the attained values are a contiguous range.

    A stable parameter on a connected family must have contiguous values;
    a report contradicting that raises TheoremViolation.
    """
    interval, _ = _contiguous(report.values.values())
    if report.is_stable and report.rg_connected and not interval:
        raise TheoremViolation(
            f"{report.param.value} is stable on a connected family but misses values",
            {"degree": list(report.degree), "filter": report.filter,
             "values": report.value_set()},
        )
    return interval


@dataclass(frozen=True)
class RankJumpReport:
    degree: tuple[int, ...]
    edges_checked: int
    jumps: dict[int, int]
    rank_is_twice_matching: bool
    first_bad_edge: tuple[LabeledGraph, TwoSwitch, int] | None

    @property
    def holds(self) -> bool:
        return self.first_bad_edge is None and self.rank_is_twice_matching


def rank_jump_report(d, rg: RealizationGraph | None = None) -> RankJumpReport:
    if rg is None:
        rg = build_realization_graph(d, "forest")
    rank = np.array(param_values(rg.n, rg.codes, ParamId.RANK), dtype=np.int64)
    mu = np.array(param_values(rg.n, rg.codes, ParamId.MATCHING), dtype=np.int64)
    jump = np.abs(rank[rg.dst] - rank[rg.src])
    counts = {int(k): int(v) for k, v in zip(*np.unique(jump, return_counts=True))}
    bad = np.flatnonzero((jump != 0) & (jump != 2))
    first = None
    if len(bad):
        k = int(bad[0])
        first = (rg.vertex(int(rg.src[k])), TwoSwitch(*(int(x) for x in rg.switches[k])),
                 int(rank[rg.dst[k]] - rank[rg.src[k]]))
    return RankJumpReport(rg.degree, len(jump), counts, bool(np.all(rank == 2 * mu)), first)


def rank_jump_check(d, rg: RealizationGraph | None = None) -> bool:
    """Across every f-switch of the forest realizations, rank moves by 0 or 2."""
    return rank_jump_report(d, rg).holds


def distance_lower_bound_check(d, param: str | ParamId, filter: str = "all",
                               rg: RealizationGraph | None = None, block: int = 512) -> bool:
    """dist(G, H) >= |xi(G) - xi(H)| for every reachable pair with values.

    Distances are computed ``block`` source rows at a time, so memory stays
    linear in the number of realizations.
    """
    p = parse_param(param)
    if rg is None:
        rg = build_realization_graph(d, filter)
    vals = param_values(rg.n, rg.codes, p)
    defined = np.array([v is not None for v in vals], dtype=bool)
    arr = np.array([v if v is not None else 0 for v in vals], dtype=np.int64)
    idx = np.flatnonzero(defined)
    if len(idx) == 0:
        return True
    adj = rg.matrix()
    for start in range(0, len(idx), block):
        rows = idx[start:start + block]
        dist = shortest_path(adj, unweighted=True, directed=False, indices=rows)[:, idx]
        gap = np.abs(arr[rows][:, None] - arr[idx][None, :])
        reach = np.isfinite(dist)
        if np.any(dist[reach] < gap[reach]):
            return False
    return True
