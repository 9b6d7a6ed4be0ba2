"""Exact spectrum of the Laplacian on a metric graph.

On an edge of length ``L`` an eigenfunction with eigenvalue ``mu = k**2 > 0``
is ``a*cos(k t) + b*sin(k t)``.  The vertex conditions (continuity plus
Kirchhoff at standard vertices, vanishing value at Dirichlet vertices) are
``2|E|`` linear equations in the coefficients; ``mu`` is an eigenvalue
exactly when that secular matrix is singular.  Roots in ``k`` are located by
scanning the smallest singular value of the row-normalised matrix and
polishing each local minimum with golden-section search.

Completeness of every scan is checked against an exact eigenvalue count
obtained from the vertex Dirichlet-to-Neumann matrix (see
:func:`eigenvalue_count`), with a Weyl-law sanity bound on top.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResolutionError, ValidationError
from .graph import GraphPoint, MetricGraph

__all__ = [
    "EdgeWave",
    "Eigenpair",
    "SecularSystem",
    "ZERO_THRESHOLD",
    "MULTIPLICITY_THRESHOLD",
    "K_RTOL",
    "assemble_secular",
    "secular_indicator",
    "eigenvalue_count",
    "find_eigenvalues",
    "lowest_eigenpairs",
    "second_eigenpair",
    "eigenfunctions",
    "integral",
    "inner",
    "evaluate",
    "vertex_values",
    "sup_norm",
    "vertex_residuals",
    "eigenvalue_vs_length_sweep",
    "eigenpair_to_dict",
    "eigenpair_from_dict",
]

ZERO_THRESHOLD = 1e-9
MULTIPLICITY_THRESHOLD = 1e-7
K_RTOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class EdgeWave:
    """Restriction of an eigenfunction to one edge.

    ``a*cos(k t) + b*sin(k t)`` for ``k > 0`` and ``a + b*t`` for ``k == 0``,
    with ``t`` in ``[0, length]``.
    """

    edge: int
    a: float
    b: float
    k: float
    length: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.k == 0.0:
            out = self.a + self.b * t
        else:
            out = self.a * np.cos(self.k * t) + self.b * np.sin(self.k * t)
        return float(out) if out.ndim == 0 else out

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.k == 0.0:
            out = np.full_like(t, self.b)
        else:
            out = self.k * (self.b * np.cos(self.k * t) - self.a * np.sin(self.k * t))
        return float(out) if out.ndim == 0 else out

    def __neg__(self) -> EdgeWave:
        return EdgeWave(self.edge, -self.a, -self.b, self.k, self.length)

    def scale(self, c: float) -> EdgeWave:
        return EdgeWave(self.edge, c * self.a, c * self.b, self.k, self.length)

    def critical_points(self) -> list[float]:
        """Interior zeros of the derivative, increasing, strictly inside ``(0, length)``."""
        if self.k == 0.0 or (self.a == 0.0 and self.b == 0.0):
            return []
        # b/a is sign-invariant, so f and -f get bit-identical critical points
        phase = math.pi / 2 if self.a == 0.0 else math.atan(self.b / self.a)
        return _phase_points(phase, self.k, self.length)

    def zeros(self) -> list[float]:
        """Zeros in the closed interval ``[0, length]`` (the wave must not vanish identically)."""
        if self.k == 0.0:
            if self.b == 0.0:
                return []
            t = -self.a / self.b
            return [t] if 0.0 <= t <= self.length else []
        phase = math.pi / 2 if self.b == 0.0 else math.atan(-self.a / self.b)
        return _phase_points(phase, self.k, self.length, closed=True)


def _phase_points(phase: float, k: float, length: float, closed: bool = False) -> list[float]:
    # all t with k*t = phase + n*pi inside the interval
    n0 = math.floor((0.0 - phase) / math.pi) - 1
    out = []
    n = n0
    while True:
        t = (phase + n * math.pi) / k
        if t > length:
            break
        if (0.0 < t < length) or (closed and 0.0 <= t <= length):
            out.append(t)
        n += 1
    return out


GraphFunction = Sequence[EdgeWave]


@dataclass(frozen=True)
class Eigenpair:
    """Eigenvalue ``mu = k**2`` with an L2-orthonormal basis of its eigenspace."""

    mu: float
    k: float
    basis: tuple[tuple[EdgeWave, ...], ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class SecularSystem:
    """Row-normalised vertex-condition matrix at wavenumber ``k``.

    ``row_vertex[i]`` is the vertex that row ``i`` encodes and
    ``row_norm[i]`` the Euclidean norm it had before normalisation.
    Derivative rows are divided by ``k`` before normalising.
    """

    k: float
    matrix: np.ndarray
    row_vertex: np.ndarray
    row_norm: np.ndarray


# -- assembly -------------------------------------------------------------


def _row_template(g: MetricGraph):
    """Symbolic rows: list of (vertex, [(column, kind, sign, edge)]).

    kind: 'one', 'cos', 'sin' on the edge's k*L; sign multiplies the entry.
    """
    rows = []
    for v in range(g.n_vertices):
        ends = g.incidence[v]
        if not ends:
            continue

        def value(edge: int, end: int, sign: float):
            if end == 0:
                return [(2 * edge, "one", sign, edge)]
            return [(2 * edge, "cos", sign, edge), (2 * edge + 1, "sin", sign, edge)]

        def outward(edge: int, end: int):
            # source: f'(0)/k = b ; target: -f'(L)/k = a sin(kL) - b cos(kL)
            if end == 0:
                return [(2 * edge + 1, "one", 1.0, edge)]
            return [(2 * edge, "sin", 1.0, edge), (2 * edge + 1, "cos", -1.0, edge)]

        if v in g.dirichlet:
            for e, end in ends:
                rows.append((v, value(e, end, 1.0)))
        else:
            e0, end0 = ends[0]
            for e, end in ends[1:]:
                rows.append((v, value(e, end, 1.0) + value(e0, end0, -1.0)))
            rows.append((v, [entry for e, end in ends for entry in outward(e, end)]))
    return rows


_TEMPLATES: "weakref.WeakKeyDictionary[MetricGraph, tuple]" = weakref.WeakKeyDictionary()
_KIND = {"one": 0, "cos": 1, "sin": 2}


def _compiled_template(g: MetricGraph) -> tuple:
    try:
        return _TEMPLATES[g]
    except KeyError:
        pass
    rows = _row_template(g)
    n = 2 * g.n_edges
    flat, kind, sign, edge = [], [], [], []
    for r, (_, entries) in enumerate(rows):
        for col, k, sg, e in entries:
            flat.append(r * n + col)
            kind.append(_KIND[k])
            sign.append(sg)
            edge.append(e)
    compiled = (
        np.array(flat, dtype=int),
        np.array(kind, dtype=int),
        np.array(sign),
        np.array(edge, dtype=int),
        np.array([v for v, _ in rows], dtype=int),
    )
    _TEMPLATES[g] = compiled
    return compiled


def _secular_stack(g: MetricGraph, ks: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    n = 2 * g.n_edges
    flat, kind, sign, edge, row_vertex = _compiled_template(g)
    kl = ks[:, None] * g.lengths[edge][None, :]
    vals = np.where(kind == 0, 1.0, np.where(kind == 1, np.cos(kl), np.sin(kl))) * sign
    M = np.zeros((n * n, ks.size))
    np.add.at(M, flat, vals.T)
    M = M.T.reshape(ks.size, n, n)
    norms = np.linalg.norm(M, axis=2)
    safe = np.where(norms > 0.0, norms, 1.0)
    M /= safe[:, :, None]
    return M, row_vertex, norms


def assemble_secular(g: MetricGraph, k: float) -> SecularSystem:
    """Secular matrix whose kernel is the set of edge coefficients of eigenfunctions.

    Unknowns are ordered ``(a_0, b_0, a_1, b_1, ...)``.  A standard vertex
    of degree ``d`` contributes ``d - 1`` continuity rows and one Kirchhoff
    row (sum of outward derivatives), a Dirichlet vertex ``d`` value rows.
    """
    if not k > 0:
        raise DomainError(f"secular matrix needs k > 0, got {k}")
    M, row_vertex, norms = _secular_stack(g, np.array([k]))
    return SecularSystem(float(k), M[0], row_vertex, norms[0])


def _indicator_many(g: MetricGraph, ks: np.ndarray) -> np.ndarray:
    M, _, _ = _secular_stack(g, ks)
    return np.linalg.svd(M, compute_uv=False)[:, -1]


def secular_indicator(g: MetricGraph, k: float) -> float:
    """Smallest singular value of the normalised secular matrix; zero iff ``k**2`` is an eigenvalue."""
    if not k > 0:
        raise DomainError(f"indicator needs k > 0, got {k}")
    return float(_indicator_many(g, np.array([k]))[0])


# -- exact counting -------------------------------------------------------


def _dtn_matrix(g: MetricGraph, k: float) -> np.ndarray:
    """Vertex matrix of the quadratic form k^2 |f|^2 - |f'|^2 on edgewise solutions."""
    free = [v for v in range(g.n_vertices) if v not in g.dirichlet]
    pos = {v: i for i, v in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    for u, v, L in g.edges:
        s, c = math.sin(k * L), math.cos(k * L)
        diag, off = -k * c / s, k / s
        for x in (u, v):
            if x in pos:
                A[pos[x], pos[x]] += diag
        if u in pos and v in pos:
            A[pos[u], pos[v]] += off
            A[pos[v], pos[u]] += off
    return A


def eigenvalue_count(g: MetricGraph, mu: float) -> int:
    """Number of eigenvalues strictly below ``mu``, counted with multiplicity.

    Uses the identity ``N(mu) = N_D(mu) + n_+(A(k))``: eigenvalues of the
    edges decoupled by Dirichlet conditions plus the positive eigenvalues of
    the vertex Dirichlet-to-Neumann matrix.  ``k = sqrt(mu)`` must avoid the
    decoupled Dirichlet spectrum and the spectrum itself.
    """
    if mu <= 0:
        return 0
    k = math.sqrt(mu)
    kl = k * g.lengths
    if np.any(np.abs(np.sin(kl)) < 1e-9):
        raise DomainError(f"mu={mu} hits the decoupled Dirichlet spectrum")
    n_dirichlet = int(np.sum(np.floor(kl / math.pi)))
    A = _dtn_matrix(g, k)
    if A.size == 0:
        return n_dirichlet
    w = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.any(np.abs(w) < 1e-12 * scale):
        raise DomainError(f"mu={mu} is (numerically) an eigenvalue")
    return n_dirichlet + int(np.sum(w > 0))


# -- root finding ---------------------------------------------------------


def _golden_min(f, lo: float, hi: float, rtol: float) -> float:
    """Golden-section minimiser of a unimodal function on ``[lo, hi]``."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > rtol * abs(hi + lo) * 0.5:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return x1 if f1 <= f2 else x2


def _multiplicity(g: MetricGraph, k: float) -> int:
    M = assemble_secular(g, k).matrix
    s = np.linalg.svd(M, compute_uv=False)
    return max(1, int(np.sum(s < MULTIPLICITY_THRESHOLD * s[0])))


def _grid_minima(g: MetricGraph, ks: np.ndarray, lo_pad: float) -> list[float]:
    """Polished zeros of the indicator at local minima of its samples on ``ks``."""
    s = _indicator_many(g, ks)

    def ind(k: float) -> float:
        return float(_indicator_many(g, np.array([k]))[0])

    roots: list[float] = []
    for i in range(len(ks) - 1):
        left = s[i - 1] if i > 0 else np.inf
        if s[i] <= left and s[i] <= s[i + 1]:
            lo = ks[i - 1] if i > 0 else lo_pad
            k_star = _golden_min(ind, lo, ks[i + 1], K_RTOL)
            if ind(k_star) < ZERO_THRESHOLD:
                roots.append(k_star)
    return roots


def _merge(g: MetricGraph, roots: Iterable[float]) -> list[tuple[float, int]]:
    merged: list[float] = []
    for k in sorted(roots):
        if merged and k - merged[-1] < 10 * K_RTOL * k:
            merged[-1] = 0.5 * (merged[-1] + k)
        else:
            merged.append(k)
    return [(float(k), _multiplicity(g, k)) for k in merged]


def _scan_roots(g: MetricGraph, k_end: float, dk: float) -> list[tuple[float, int]]:
    n = int(math.ceil(k_end / dk)) + 1
    ks = np.concatenate([[0.5 * dk], dk * np.arange(1, n + 1)])
    return _merge(g, _grid_minima(g, ks, 0.25 * dk))


def _resolve(g: MetricGraph, a: float, b: float, n_a: int, n_b: int, depth: int) -> list[tuple[float, int]]:
    """Roots in ``(a, b)``, where the exact count says ``n_b - n_a`` eigenvalues lie."""
    need = n_b - n_a
    if need == 0:
        return []
    ks = np.linspace(a, b, 65)
    found = [(k, m) for k, m in _merge(g, _grid_minima(g, ks, a)) if a < k < b]
    if sum(m for _, m in found) == need or depth == 0:
        return found
    roots = [k for k, _ in found]
    w = (b - a) / 8
    cuts = [a] + [_safe_count_point(g, a + (i - 0.25) * w, a + (i + 0.25) * w, roots) for i in range(1, 8)] + [b]
    counts = [n_a] + [eigenvalue_count(g, c * c) for c in cuts[1:-1]] + [n_b]
    out = []
    for i in range(8):
        out.extend(_resolve(g, cuts[i], cuts[i + 1], counts[i], counts[i + 1], depth - 1))
    return out


def _fill_gaps(g: MetricGraph, found: list[tuple[float, int]], k_test: float) -> list[tuple[float, int]]:
    """Localise missed roots between safe count points and resolve each gap by subdivision."""
    roots = [k for k, _ in found if k < k_test]
    k0 = math.pi / (4.0 * g.total_length)  # no eigenvalue has k below pi/(2L)
    points = [k0]
    for lo, hi in zip(roots, roots[1:]):
        gap = hi - lo
        points.append(_safe_count_point(g, lo + 0.1 * gap, hi - 0.1 * gap, roots))
    points.append(k_test)
    counts = [eigenvalue_count(g, p * p) for p in points]
    out = []
    for i, (lo, hi) in enumerate(zip(points, points[1:])):
        inside = [(k, m) for k, m in found if lo < k < hi]
        if sum(m for _, m in inside) == counts[i + 1] - counts[i]:
            out.extend(inside)
        else:
            out.extend(_resolve(g, lo, hi, counts[i], counts[i + 1], depth=4))
    return sorted(out)


def _safe_count_point(g: MetricGraph, lo: float, hi: float, roots: Iterable[float]) -> float:
    """A k in [lo, hi] far from found roots and from the decoupled Dirichlet points."""
    avoid = list(roots)
    for L in g.lengths:
        avoid.extend(np.arange(math.floor(lo * L / math.pi), math.ceil(hi * L / math.pi) + 1) * math.pi / L)
    avoid = np.array(avoid) if avoid else np.array([np.inf])
    cands = np.linspace(lo, hi, 65)
    gaps = np.min(np.abs(cands[:, None] - avoid[None, :]), axis=1)
    return float(cands[int(np.argmax(gaps))])


def _constant_pair(g: MetricGraph) -> Eigenpair:
    c = 1.0 / math.sqrt(g.total_length)
    f = tuple(EdgeWave(i, c, 0.0, 0.0, L) for i, (_, _, L) in enumerate(g.edges))
    return Eigenpair(0.0, 0.0, (f,))


def find_eigenvalues(
    g: MetricGraph,
    mu_max: float,
    *,
    scan_step: float | None = None,
    max_refinements: int = 3,
    resolve_clusters: bool = True,
) -> list[Eigenpair]:
    """All eigenvalues in ``[0, mu_max]`` with orthonormal eigenbases.

    Parameters
    ----------
    g : MetricGraph
        Connected graph with at least one edge.
    mu_max : float
        Upper end of the spectral window.
    scan_step : float, optional
        Grid step in ``k``; defaults to ``pi / (10 * total_length)``.
    max_refinements : int
        How many times the scan may be repeated at a quarter of the step
        when the exact eigenvalue count disagrees with the roots found.
    resolve_clusters : bool
        After the rescans, locate the gaps still missing roots with the
        exact count and subdivide only those (near-coincident eigenvalues,
        e.g. from pieces decoupled by Dirichlet vertices).

    Returns
    -------
    list of Eigenpair
        Sorted by eigenvalue.  Zero is included, and simple with a constant
        eigenfunction, exactly when the graph has no Dirichlet vertex.

    Raises
    ------
    ValidationError
        If the graph is disconnected or has no edges.
    ResolutionError
        If refined rescans still miss eigenvalues.
    """
    if not mu_max > 0:
        raise DomainError("mu_max must be positive")
    if not g.is_connected or g.n_edges == 0:
        raise ValidationError("spectrum needs a connected graph with at least one edge")
    L = g.total_length
    dk = scan_step if scan_step is not None else math.pi / (10.0 * L)
    k_max = math.sqrt(mu_max)
    has_zero = not g.dirichlet

    def check(found: list[tuple[float, int]], k_test: float) -> tuple[bool, int, int]:
        exact = eigenvalue_count(g, k_test**2)
        mine = int(has_zero) + sum(m for k, m in found if k < k_test)
        total = int(has_zero) + sum(m for k, m in found if k <= k_max * (1 + K_RTOL))
        weyl_ok = abs(total - L * k_max / math.pi) <= g.n_vertices + 2
        return exact == mine and weyl_ok, mine, exact

    for _ in range(max_refinements + 1):
        k_end = k_max + dk
        found = _scan_roots(g, k_end, dk)
        k_test = _safe_count_point(g, k_max, k_end, [k for k, _ in found])
        ok, mine, exact = check(found, k_test)
        if ok:
            break
        dk /= 4.0
    if not ok and resolve_clusters:
        found = _fill_gaps(g, found, k_test)
        ok, mine, exact = check(found, k_test)
    if not ok:
        raise ResolutionError(
            f"scan missed eigenvalues below mu={mu_max}: found {mine}, expected {exact}"
        )
    found = [(k, m) for k, m in found if k <= k_max * (1 + K_RTOL)]

    pairs = [_constant_pair(g)] if has_zero else []
    for k, m in found:
        k = float(k)
        pairs.append(Eigenpair(k * k, k, tuple(_eigenbasis(g, k, m))))
    return pairs


def lowest_eigenpairs(g: MetricGraph, count: int, scan_step: float | None = None) -> list[Eigenpair]:
    """Eigenpairs covering at least the ``count`` lowest eigenvalues (with multiplicity)."""
    if count < 1:
        raise DomainError("count must be positive")
    L = g.total_length
    # try the Weyl mean first; N(mu) >= L*sqrt(mu)/pi - |E| makes the second window sufficient
    for k in (math.pi * (count + 1) / L, math.pi * (count + g.n_edges) / L):
        pairs = find_eigenvalues(g, k * k, scan_step=scan_step)
        out, seen = [], 0
        for p in pairs:
            out.append(p)
            seen += p.multiplicity
            if seen >= count:
                return out
    raise ResolutionError("fewer eigenvalues found than the Weyl bound promises")


def second_eigenpair(g: MetricGraph, scan_step: float | None = None) -> Eigenpair:
    """Eigenpair of the second eigenvalue counted with multiplicity (mu_2 for standard graphs)."""
    pairs = lowest_eigenpairs(g, 2, scan_step)
    seen = 0
    for p in pairs:
        seen += p.multiplicity
        if seen >= 2:
            return p
    raise ResolutionError("second eigenvalue not found")


# -- eigenfunctions -------------------------------------------------------


def _edge_gram(k: float, L: float) -> np.ndarray:
    if k == 0.0:
        return np.array([[L, L * L / 2], [L * L / 2, L**3 / 3]])
    s2 = math.sin(2 * k * L) / (4 * k)
    cs = math.sin(k * L) ** 2 / (2 * k)
    return np.array([[L / 2 + s2, cs], [cs, L / 2 - s2]])


def _gram_weight(g: MetricGraph, k: float) -> np.ndarray:
    n = 2 * g.n_edges
    W = np.zeros((n, n))
    for i, L in enumerate(g.lengths):
        W[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = _edge_gram(k, float(L))
    return W


def _waves(g: MetricGraph, k: float, coeffs: np.ndarray) -> tuple[EdgeWave, ...]:
    return tuple(
        EdgeWave(i, float(coeffs[2 * i]), float(coeffs[2 * i + 1]), k, float(L))
        for i, L in enumerate(g.lengths)
    )


def _orient(g: MetricGraph, f: tuple[EdgeWave, ...]) -> tuple[EdgeWave, ...]:
    values = vertex_values(g, f)
    leaves = [v for v, d in enumerate(g.degrees) if d == 1] or list(range(g.n_vertices))
    top = max(abs(values[v]) for v in leaves)
    if top == 0.0:
        return f
    pick = next(v for v in leaves if abs(values[v]) >= top * (1 - 1e-9))
    return f if values[pick] > 0 else tuple(-w for w in f)


def _eigenbasis(g: MetricGraph, k: float, m: int) -> list[tuple[EdgeWave, ...]]:
    M = assemble_secular(g, k).matrix
    _, _, vt = np.linalg.svd(M)
    C = vt[-m:].T
    G = C.T @ _gram_weight(g, k) @ C
    w, Q = np.linalg.eigh(G)
    C = C @ Q / np.sqrt(w)
    return [_orient(g, _waves(g, k, C[:, j])) for j in range(m)]


def eigenfunctions(g: MetricGraph, mu: float) -> list[tuple[EdgeWave, ...]]:
    """L2-orthonormal basis of the eigenspace of ``mu``.

    Each basis function is signed so that its largest-magnitude value over
    degree-one vertices is positive (first such vertex on ties).
    """
    if mu < 0:
        raise DomainError("eigenvalues are nonnegative")
    if mu == 0.0:
        if g.dirichlet or not g.is_connected:
            raise DomainError("0 is an eigenvalue only of connected all-standard graphs")
        return list(_constant_pair(g).basis)
    k = math.sqrt(mu)
    if secular_indicator(g, k) >= ZERO_THRESHOLD:
        raise DomainError(f"mu={mu} is not an eigenvalue (indicator above threshold)")
    return _eigenbasis(g, k, _multiplicity(g, k))


# -- functionals on graph functions ---------------------------------------


def integral(f: GraphFunction) -> float:
    """Exact integral over the graph of an edgewise wave function."""
    parts = []
    for w in f:
        L, k = w.length, w.k
        if k == 0.0:
            parts.append(w.a * L + w.b * L * L / 2)
        else:
            parts.append(w.a * math.sin(k * L) / k + w.b * (1 - math.cos(k * L)) / k)
    return math.fsum(parts)


def inner(f: GraphFunction, h: GraphFunction) -> float:
    """L2 inner product of two edgewise waves sharing the same ``k`` on each edge."""
    parts = []
    for u, w in zip(f, h):
        if u.k != w.k:
            raise DomainError("inner product implemented for equal wavenumbers only")
        G = _edge_gram(u.k, u.length)
        x, y = np.array([u.a, u.b]), np.array([w.a, w.b])
        parts.append(float(x @ G @ y))
    return math.fsum(parts)


def evaluate(g: MetricGraph, f: GraphFunction, p: GraphPoint) -> float:
    return f[p.edge](p.t)


def vertex_values(g: MetricGraph, f: GraphFunction) -> np.ndarray:
    """Value at each vertex, read from its lowest incident edge end."""
    out = np.zeros(g.n_vertices)
    for v in range(g.n_vertices):
        if g.incidence[v]:
            e, end = min(g.incidence[v])
            out[v] = f[e](0.0 if end == 0 else f[e].length)
    return out


def sup_norm(f: GraphFunction) -> float:
    best = 0.0
    for w in f:
        ts = [0.0, w.length, *w.critical_points()]
        best = max(best, max(abs(w(t)) for t in ts))
    return best


def vertex_residuals(g: MetricGraph, f: GraphFunction) -> tuple[float, float]:
    """Largest continuity mismatch and largest Kirchhoff/Dirichlet defect over all vertices."""
    cont = kirch = 0.0
    for v in range(g.n_vertices):
        ends = g.incidence[v]
        if not ends:
            continue
        vals = [f[e](0.0 if end == 0 else f[e].length) for e, end in ends]
        if v in g.dirichlet:
            kirch = max(kirch, max(abs(x) for x in vals))
            continue
        cont = max(cont, max(vals) - min(vals))
        flux = math.fsum(
            f[e].derivative(0.0) if end == 0 else -f[e].derivative(f[e].length) for e, end in ends
        )
        kirch = max(kirch, abs(flux))
    return cont, kirch


def eigenvalue_vs_length_sweep(
    g: MetricGraph, edges: Iterable[int], scales: Iterable[float], index: int = 2
) -> list[tuple[float, float]]:
    """Eigenvalue number ``index`` (mu_2 by default) as the chosen edges are scaled.

    Returns ``(scale, eigenvalue)`` pairs sorted by scale.
    """
    edges = sorted(set(edges))
    out = []
    for s in sorted(float(x) for x in scales):
        if not s > 0:
            raise DomainError("scales must be positive")
        lengths = g.lengths.copy()
        lengths[edges] *= s
        h = g.with_lengths(lengths)
        seen = 0
        for p in lowest_eigenpairs(h, index):
            seen += p.multiplicity
            if seen >= index:
                out.append((s, p.mu))
                break
    return out


# -- serialisation --------------------------------------------------------


def eigenpair_to_dict(pair: Eigenpair) -> dict:
    return {
        "mu": pair.mu,
        "k": pair.k,
        "multiplicity": pair.multiplicity,
        "basis": [[{"edge": w.edge, "a": w.a, "b": w.b} for w in f] for f in pair.basis],
    }


def eigenpair_from_dict(data: dict, g: MetricGraph) -> Eigenpair:
    k = float(data["k"])
    basis = tuple(
        tuple(EdgeWave(int(w["edge"]), float(w["a"]), float(w["b"]), k, float(g.lengths[int(w["edge"])])) for w in f)
        for f in data["basis"]
    )
    if len(basis) != int(data["multiplicity"]):
        raise ValidationError("multiplicity does not match basis size")
    return Eigenpair(float(data["mu"]), k, basis)
