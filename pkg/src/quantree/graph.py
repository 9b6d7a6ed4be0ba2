"""Metric graphs: data model, validation, surgery and intrinsic geometry.

A :class:`MetricGraph` is a finite combinatorial graph whose edges carry
positive lengths.  Each edge ``(u, v, L)`` is parametrised by arclength
``t in [0, L]`` running from ``u`` (``t = 0``) to ``v`` (``t = L``); the
direction only fixes sign conventions, the Laplacian does not depend on it.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import UnsupportedError, ValidationError

__all__ = [
    "VertexCondition",
    "GraphPoint",
    "MetricGraph",
    "build_graph",
    "is_tree",
    "boundary_vertices",
    "split_at_vertex",
    "glue_graphs",
    "distance",
    "diameter",
    "tree_signature",
    "trees_isomorphic",
    "graph_to_dict",
    "graph_from_dict",
    "read_graph",
    "write_graph",
]


class VertexCondition(enum.Enum):
    STANDARD = "standard"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class GraphPoint:
    """A point on an edge at arclength ``t`` from the edge's source.

    ``vertex`` is set by :meth:`MetricGraph.canonical` when the point is a
    vertex; canonical vertex points always sit on the lowest-numbered
    incident edge, so equality of canonical points is location equality.
    """

    edge: int
    t: float
    vertex: int | None = None


Edge = tuple[int, int, float]


@dataclass(frozen=True, eq=False)
class MetricGraph:
    """Immutable metric graph.

    Parameters
    ----------
    n_vertices : int
        Number of vertices; vertices are ``0 .. n_vertices - 1``.
    edges : tuple of (int, int, float)
        ``(source, target, length)`` triples.  Parallel edges and loops are
        allowed in the data model.
    labels : tuple of str or None
        Optional vertex names, e.g. ``"v_l"``.
    dirichlet : frozenset of int
        Vertices carrying a Dirichlet condition; all others are standard.
    """

    n_vertices: int
    edges: tuple[Edge, ...]
    labels: tuple[str | None, ...] = ()
    dirichlet: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValidationError("a graph needs at least one vertex")
        edges = []
        for i, edge in enumerate(self.edges):
            try:
                u, v, length = edge
            except (TypeError, ValueError):
                raise ValidationError(f"edge {i} is not a (source, target, length) triple") from None
            if int(u) != u or int(v) != v:
                raise ValidationError(f"edge {i} has non-integer endpoints")
            u, v, length = int(u), int(v), float(length)
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValidationError(f"edge {i} references a missing vertex: ({u}, {v})")
            if not (math.isfinite(length) and length > 0):
                raise ValidationError(f"edge {i} has non-positive or non-finite length {length!r}")
            edges.append((u, v, length))
        object.__setattr__(self, "edges", tuple(edges))

        labels = tuple(self.labels) if self.labels else (None,) * self.n_vertices
        if len(labels) != self.n_vertices:
            raise ValidationError("labels must have one entry per vertex")
        object.__setattr__(self, "labels", labels)

        dirichlet = frozenset(int(v) for v in self.dirichlet)
        if any(not 0 <= v < self.n_vertices for v in dirichlet):
            raise ValidationError("Dirichlet vertex out of range")
        object.__setattr__(self, "dirichlet", dirichlet)

    # -- combinatorics -------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.array([e[2] for e in self.edges], dtype=float)

    @property
    def total_length(self) -> float:
        return float(math.fsum(e[2] for e in self.edges))

    @property
    def shortest_edge(self) -> float:
        return float(self.lengths.min())

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the incident edge ends as ``(edge, end)``; end 0 = source, 1 = target."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for i, (u, v, _) in enumerate(self.edges):
            inc[u].append((i, 0))
            inc[v].append((i, 1))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def condition(self, v: int) -> VertexCondition:
        return VertexCondition.DIRICHLET if v in self.dirichlet else VertexCondition.STANDARD

    @property
    def conditions(self) -> dict[int, VertexCondition]:
        return {v: self.condition(v) for v in range(self.n_vertices)}

    def endpoint(self, edge: int, end: int) -> int:
        return self.edges[edge][end]

    def vertex(self, label: str) -> int:
        """Vertex id carrying ``label``."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"no vertex labelled {label!r}") from None

    def label(self, v: int) -> str:
        name = self.labels[v]
        return name if name is not None else str(v)

    @cached_property
    def is_connected(self) -> bool:
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n_vertices)}) == 1

    # -- points ----------------------------------------------------------

    def vertex_point(self, v: int) -> GraphPoint:
        """Canonical point of vertex ``v``."""
        if not self.incidence[v]:
            raise ValidationError(f"vertex {v} is isolated and has no point on an edge")
        edge, end = min(self.incidence[v])
        return GraphPoint(edge, 0.0 if end == 0 else self.edges[edge][2], v)

    def canonical(self, p: GraphPoint) -> GraphPoint:
        if not 0 <= p.edge < self.n_edges:
            raise ValidationError(f"point on missing edge {p.edge}")
        u, v, length = self.edges[p.edge]
        if not 0.0 <= p.t <= length:
            raise ValidationError(f"t={p.t} outside [0, {length}] on edge {p.edge}")
        if p.t == 0.0:
            return self.vertex_point(u)
        if p.t == length:
            return self.vertex_point(v)
        return GraphPoint(p.edge, float(p.t))

    # -- geometry --------------------------------------------------------

    @cached_property
    def vertex_distances(self) -> np.ndarray:
        """All-pairs shortest path lengths between vertices."""
        w = np.full((self.n_vertices, self.n_vertices), np.inf)
        for u, v, length in self.edges:
            if u != v:
                w[u, v] = w[v, u] = min(w[u, v], length)
        np.fill_diagonal(w, 0.0)
        return shortest_path(np.where(np.isinf(w), 0.0, w), method="D", directed=False)

    # -- derived graphs --------------------------------------------------

    def with_lengths(self, lengths: Sequence[float]) -> MetricGraph:
        if len(lengths) != self.n_edges:
            raise ValidationError("need one length per edge")
        edges = tuple((u, v, float(L)) for (u, v, _), L in zip(self.edges, lengths))
        return MetricGraph(self.n_vertices, edges, self.labels, self.dirichlet)

    def scaled(self, s: float) -> MetricGraph:
        return self.with_lengths(self.lengths * s)

    def with_dirichlet(self, vertices: Iterable[int]) -> MetricGraph:
        return MetricGraph(self.n_vertices, self.edges, self.labels, frozenset(vertices))

    def add_pendant(self, v: int, length: float, label: str | None = None) -> MetricGraph:
        """Attach a new degree-one vertex to ``v`` by an edge of ``length``."""
        if not 0 <= v < self.n_vertices:
            raise ValidationError(f"unknown vertex {v}")
        n = self.n_vertices
        return MetricGraph(
            n + 1, self.edges + ((v, n, length),), self.labels + (label,), self.dirichlet
        )

    def __repr__(self) -> str:
        return (
            f"MetricGraph(|V|={self.n_vertices}, |E|={self.n_edges}, "
            f"L={self.total_length:.6g}, dirichlet={sorted(self.dirichlet)})"
        )


def build_graph(
    vertex_count: int,
    edge_list: Iterable[tuple[int, int, float]],
    conditions: Mapping[int, VertexCondition | str] | None = None,
    labels: Sequence[str | None] | None = None,
) -> MetricGraph:
    """Validate and build a :class:`MetricGraph`.

    ``conditions`` maps vertex ids to :class:`VertexCondition` (or its string
    value); unlisted vertices are standard.
    """
    dirichlet = set()
    for v, cond in (conditions or {}).items():
        if VertexCondition(cond) is VertexCondition.DIRICHLET:
            dirichlet.add(v)
    return MetricGraph(
        int(vertex_count), tuple(tuple(e) for e in edge_list), tuple(labels or ()), frozenset(dirichlet)
    )


def is_tree(g: MetricGraph) -> bool:
    return g.is_connected and g.n_edges == g.n_vertices - 1


def boundary_vertices(g: MetricGraph) -> set[int]:
    """Vertices of degree one."""
    return {v for v, d in enumerate(g.degrees) if d == 1}


def split_at_vertex(g: MetricGraph, v: int) -> list[MetricGraph]:
    """Disconnect ``g`` at ``v`` into one piece per incident edge.

    On a tree this yields ``deg(v)`` connected graphs.  In every piece,
    vertex 0 is the fresh copy of ``v``; the remaining vertices keep their
    relative order and edges keep their original order and orientation.
    """
    if not 0 <= v < g.n_vertices:
        raise ValidationError(f"unknown vertex {v}")
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in g.edges:
        if a != v and b != v:
            parent[find(a)] = find(b)

    # group key per edge: the component (of g minus v) it lives in; loops at v stand alone
    groups: dict[object, list[int]] = {}
    for i, (a, b, _) in enumerate(g.edges):
        if a == v and b == v:
            key: object = ("loop", i)
        elif a == v:
            key = find(b)
        else:
            key = find(a)
        groups.setdefault(key, []).append(i)

    def first_incidence(edges: list[int]) -> int:
        return min(i for i in edges if v in g.edges[i][:2])

    pieces = []
    for edge_ids in sorted(groups.values(), key=first_incidence):
        others = sorted({x for i in edge_ids for x in g.edges[i][:2]} - {v})
        index = {v: 0} | {x: j + 1 for j, x in enumerate(others)}
        edges = tuple((index[a], index[b], L) for a, b, L in (g.edges[i] for i in edge_ids))
        labels = (g.labels[v],) + tuple(g.labels[x] for x in others)
        dirichlet = frozenset(index[x] for x in g.dirichlet if x in index)
        pieces.append(MetricGraph(len(index), edges, labels, dirichlet))
    return pieces


def glue_graphs(parts: Sequence[MetricGraph], attach: Sequence[int]) -> MetricGraph:
    """Identify ``attach[i]`` of every ``parts[i]`` into one vertex.

    The glued vertex becomes vertex 0 and takes its label and condition from
    the first part; the other vertices follow part by part in their original
    order.
    """
    if not parts:
        raise ValidationError("nothing to glue")
    if len(parts) != len(attach):
        raise ValidationError("need exactly one attach vertex per part")
    labels: list[str | None] = [parts[0].labels[attach[0]]]
    dirichlet = {0} if attach[0] in parts[0].dirichlet else set()
    edges = []
    n = 1
    for part, a in zip(parts, attach):
        if not 0 <= a < part.n_vertices:
            raise ValidationError(f"attach vertex {a} missing from part")
        index = {a: 0}
        for x in range(part.n_vertices):
            if x != a:
                index[x] = n
                labels.append(part.labels[x])
                if x in part.dirichlet:
                    dirichlet.add(n)
                n += 1
        edges.extend((index[u], index[w], L) for u, w, L in part.edges)
    return MetricGraph(n, tuple(edges), tuple(labels), frozenset(dirichlet))


def _point_to_vertices(g: MetricGraph, p: GraphPoint) -> list[tuple[int, float]]:
    u, v, length = g.edges[p.edge]
    return [(u, p.t), (v, length - p.t)]


def distance(g: MetricGraph, p: GraphPoint, q: GraphPoint) -> float:
    """Intrinsic (shortest path) distance between two points of ``g``."""
    if not g.is_connected:
        raise ValidationError("distance needs a connected graph")
    p, q = g.canonical(p), g.canonical(q)
    if p == q:
        return 0.0
    d = g.vertex_distances
    best = math.inf
    if p.edge == q.edge:
        best = abs(p.t - q.t)
    for x, dx in _point_to_vertices(g, p):
        for y, dy in _point_to_vertices(g, q):
            best = min(best, dx + d[x, y] + dy)
    return float(best)


def diameter(g: MetricGraph) -> tuple[float, tuple[GraphPoint, GraphPoint]]:
    """Diameter of a tree and a pair of leaves realising it (two-sweep search)."""
    if not is_tree(g):
        raise UnsupportedError("diameter is only implemented for trees")
    if g.n_edges == 0:
        raise ValidationError("diameter of a graph without edges is undefined")
    d = g.vertex_distances
    a = int(np.argmax(d[0]))
    b = int(np.argmax(d[a]))
    a, b = min(a, b), max(a, b)
    return float(d[a, b]), (g.vertex_point(a), g.vertex_point(b))


# -- isomorphism --------------------------------------------------------


def _rooted_code(g: MetricGraph, root: int) -> str:
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n_vertices)]
    for u, v, length in g.edges:
        adj[u].append((v, length))
        adj[v].append((u, length))

    def code(x: int, parent: int) -> str:
        kids = sorted(f"{L!r}{code(y, x)}" for y, L in adj[x] if y != parent)
        mark = "D" if x in g.dirichlet else ""
        return f"{mark}(" + ",".join(kids) + ")"

    return code(root, -1)


def tree_signature(g: MetricGraph) -> str:
    """Canonical string of a tree up to relabelling, edge lengths included."""
    if not is_tree(g):
        raise UnsupportedError("tree signature needs a tree")
    return min(_rooted_code(g, r) for r in range(g.n_vertices))


def trees_isomorphic(g: MetricGraph, h: MetricGraph) -> bool:
    if g.n_vertices != h.n_vertices or g.n_edges != h.n_edges:
        return False
    return tree_signature(g) == tree_signature(h)


# -- file format --------------------------------------------------------


def graph_to_dict(g: MetricGraph) -> dict:
    vertices = []
    for v in range(g.n_vertices):
        item: dict = {"id": v}
        if g.labels[v] is not None:
            item["label"] = g.labels[v]
        vertices.append(item)
    out = {
        "vertices": vertices,
        "edges": [{"source": u, "target": v, "length": L} for u, v, L in g.edges],
    }
    if g.dirichlet:
        out["dirichlet"] = sorted(g.dirichlet)
    return out


def graph_from_dict(data: Mapping) -> MetricGraph:
    """Build a graph from the JSON object layout used by graph files.

    Vertex ids may be arbitrary distinct integers; they are renumbered in
    the order listed.
    """
    if not isinstance(data, Mapping):
        raise ValidationError("graph document must be an object")
    try:
        verts = list(data["vertices"])
        raw_edges = list(data.get("edges", []))
        ids = [int(item["id"]) for item in verts]
        labels = [item.get("label") for item in verts]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate vertex ids")
        index = {vid: i for i, vid in enumerate(ids)}
        edges = [(index[int(e["source"])], index[int(e["target"])], float(e["length"])) for e in raw_edges]
        dirichlet = frozenset(index[int(v)] for v in data.get("dirichlet", []))
    except ValidationError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed graph document: {exc!r}") from None
    return MetricGraph(len(ids), tuple(edges), tuple(labels), dirichlet)


def write_graph(g: MetricGraph, path: str | Path) -> None:
    # json writes floats with repr(), the shortest string that round-trips bit-exactly
    Path(path).write_text(json.dumps(graph_to_dict(g), indent=2) + "\n", encoding="utf-8")


def read_graph(path: str | Path) -> MetricGraph:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cannot parse graph file {path}: {exc}") from None
    return graph_from_dict(data)
