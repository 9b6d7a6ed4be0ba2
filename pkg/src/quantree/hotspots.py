"""Extrema and nodal domains of eigenfunctions on metric graphs.

Everything is closed-form: on an edge ``a*cos(k t) + b*sin(k t)`` has its
critical points where ``tan(k t) = b / a`` and its zeros where
``tan(k t) = -a / b``, so global extrema are found by comparing a finite
candidate set rather than by sampling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .graph import GraphPoint, MetricGraph, boundary_vertices, diameter, distance
from .spectral import EdgeWave, GraphFunction, sup_norm

__all__ = [
    "ExtremumReport",
    "NodalReport",
    "TIE_RTOL",
    "SNAP_RTOL",
    "ZERO_EDGE_RTOL",
    "edge_extrema",
    "global_extrema",
    "hot_spots_holds",
    "default_boundary_tol",
    "nodal_domains",
    "report_to_dict",
]

TIE_RTOL = 1e-9
SNAP_RTOL = 1e-10
ZERO_EDGE_RTOL = 1e-10
ZERO_VERTEX_RTOL = 1e-8


@dataclass(frozen=True)
class ExtremumReport:
    """Where a graph function attains its global maximum and minimum.

    ``extrema_distance`` is the smallest distance between a maximum point and
    a minimum point; all pairwise distances are in ``pair_distances`` as
    ``(max index, min index, distance)``.  ``boundary_margin`` is the largest
    distance from an extremum point to the nearest degree-one vertex.
    """

    max_points: tuple[GraphPoint, ...]
    max_value: float
    min_points: tuple[GraphPoint, ...]
    min_value: float
    extrema_distance: float
    diameter: float
    boundary_margin: float
    shortest_edge: float
    degenerate: bool = False
    pair_distances: tuple[tuple[int, int, float], ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class NodalReport:
    zero_points: tuple[GraphPoint, ...]
    zero_edges: tuple[int, ...]
    domain_count: int


def edge_extrema(w: EdgeWave) -> list[tuple[float, float]]:
    """Candidate extrema ``(t, value)`` on one edge: both endpoints and all interior critical points.

    Sorted by ``t``.
    """
    if not w.length > 0:
        raise DomainError("edge length must be positive")
    ts = [0.0, *w.critical_points(), w.length]
    return [(t, w(t)) for t in ts]


def _snap(g: MetricGraph, edge: int, t: float) -> GraphPoint:
    L = g.edges[edge][2]
    if t <= SNAP_RTOL * L:
        t = 0.0
    elif t >= L * (1 - SNAP_RTOL):
        t = L
    return g.canonical(GraphPoint(edge, t))


def _dedupe(points: list[GraphPoint]) -> tuple[GraphPoint, ...]:
    out = sorted(set(points), key=lambda p: (p.edge, p.t))
    return tuple(out)


def global_extrema(g: MetricGraph, f: GraphFunction) -> ExtremumReport:
    """Global maximum and minimum of ``f`` with their locations.

    Values within ``TIE_RTOL * sup|f|`` of the extreme value are reported as
    tied extremum points.  ``g`` must be a tree (the diameter is part of the
    report).
    """
    if len(f) != g.n_edges:
        raise DomainError("function must have one wave per edge")
    cands = []
    for w in f:
        for t, val in edge_extrema(w):
            cands.append((val, _snap(g, w.edge, t)))
    norm = max(abs(v) for v, _ in cands)
    tol = TIE_RTOL * norm
    top = max(v for v, _ in cands)
    bottom = min(v for v, _ in cands)
    max_pts = _dedupe([p for v, p in cands if v >= top - tol])
    min_pts = _dedupe([p for v, p in cands if v <= bottom + tol])

    pairs = tuple(
        (i, j, distance(g, p, q)) for i, p in enumerate(max_pts) for j, q in enumerate(min_pts)
    )
    leaves = [g.vertex_point(v) for v in sorted(boundary_vertices(g))]
    if leaves:
        margin = max(min(distance(g, p, q) for q in leaves) for p in max_pts + min_pts)
    else:
        margin = math.inf
    diam, _ = diameter(g)
    return ExtremumReport(
        max_points=max_pts,
        max_value=float(top),
        min_points=min_pts,
        min_value=float(bottom),
        extrema_distance=min(d for _, _, d in pairs),
        diameter=diam,
        boundary_margin=float(margin),
        shortest_edge=g.shortest_edge,
        degenerate=top - bottom <= tol,
        pair_distances=pairs,
    )


def default_boundary_tol(report: ExtremumReport) -> float:
    return 1e-6 * report.shortest_edge


def hot_spots_holds(report: ExtremumReport, tol: float | None = None) -> bool:
    """True when every global extremum lies within ``tol`` of a degree-one vertex.

    ``tol`` defaults to ``1e-6`` times the shortest edge length.
    """
    if tol is None:
        tol = default_boundary_tol(report)
    return report.boundary_margin <= tol


def nodal_domains(g: MetricGraph, f: GraphFunction) -> NodalReport:
    """Zero set and number of nodal domains (components of ``{f != 0}``).

    Edges on which ``max(|a|, |b|) <= 1e-10 * sup|f|`` count as identically
    zero; vertices with ``|f(v)| <= 1e-8 * sup|f|`` are zeros.
    """
    norm = sup_norm(f)
    if norm == 0.0:
        raise DomainError("function vanishes identically")
    zero_edges = [w.edge for w in f if max(abs(w.a), abs(w.b)) <= ZERO_EDGE_RTOL * norm]
    zero_edge_set = set(zero_edges)

    zero_vertex = []
    for v in range(g.n_vertices):
        ends = [(e, end) for e, end in g.incidence[v] if e not in zero_edge_set]
        if not g.incidence[v]:
            zero_vertex.append(False)
        elif not ends:
            zero_vertex.append(True)
        else:
            e, end = ends[0]
            val = f[e](0.0 if end == 0 else f[e].length)
            zero_vertex.append(abs(val) <= ZERO_VERTEX_RTOL * norm)

    parent: dict[object, object] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    zero_points: list[GraphPoint] = [g.vertex_point(v) for v in range(g.n_vertices) if zero_vertex[v] and g.incidence[v]]
    for w in f:
        if w.edge in zero_edge_set:
            continue
        u, v, L = g.edges[w.edge]
        delta = SNAP_RTOL * L
        roots = []
        for t in w.zeros():
            if t <= delta and zero_vertex[u]:
                continue
            if t >= L - delta and zero_vertex[v]:
                continue
            roots.append(min(max(t, 0.0), L))
        zero_points.extend(g.canonical(GraphPoint(w.edge, t)) for t in roots)
        n_seg = len(roots) + 1
        for j in range(n_seg):
            find(("seg", w.edge, j))
        if not zero_vertex[u]:
            union(("seg", w.edge, 0), ("v", u))
        if not zero_vertex[v]:
            union(("seg", w.edge, n_seg - 1), ("v", v))

    count = len({find(x) for x in list(parent) if x[0] == "seg"})
    return NodalReport(_dedupe(zero_points), tuple(sorted(zero_edges)), count)


def _point_dict(g: MetricGraph, p: GraphPoint) -> dict:
    out: dict = {"edge": p.edge, "t": p.t}
    if p.vertex is not None:
        out["vertex"] = p.vertex
        if g.labels[p.vertex] is not None:
            out["label"] = g.labels[p.vertex]
    return out


def report_to_dict(g: MetricGraph, report: ExtremumReport) -> dict:
    """JSON-ready form of an :class:`ExtremumReport`."""
    return {
        "max_points": [_point_dict(g, p) for p in report.max_points],
        "max_value": report.max_value,
        "min_points": [_point_dict(g, p) for p in report.min_points],
        "min_value": report.min_value,
        "extrema_distance": report.extrema_distance,
        "diameter": report.diameter,
        "boundary_margin": report.boundary_margin,
        "degenerate": report.degenerate,
        "pair_distances": [list(x) for x in report.pair_distances],
    }
