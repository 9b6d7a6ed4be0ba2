"""Piecewise-linear finite elements on a metric graph.

Independent check on :mod:`quantree.spectral`.  Every edge gets a uniform
mesh; vertex nodes are shared by all incident edges, which imposes
continuity, and the Kirchhoff condition then holds in the weak sense.
Dirichlet vertex nodes are removed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.csgraph
import scipy.sparse.linalg

from .errors import DomainError, ResolutionError
from .graph import MetricGraph

__all__ = ["FEMMesh", "build_mesh", "count_below", "fem_eigenvalues", "fem_eigenpairs"]

_DENSE_LIMIT = 200
_MAX_WIDENINGS = 6


@dataclass(frozen=True)
class FEMMesh:
    """Nodes of the graph mesh.

    ``edge_nodes[e]`` lists the global node indices along edge ``e`` from
    source to target (vertex nodes included) and ``edge_t[e]`` their
    arclength coordinates.  Vertex ``v`` is node ``v``.
    """

    n_nodes: int
    edge_nodes: tuple[np.ndarray, ...]
    edge_t: tuple[np.ndarray, ...]
    free: np.ndarray


def build_mesh(g: MetricGraph, h: float) -> FEMMesh:
    if not h > 0:
        raise DomainError("mesh width must be positive")
    if h >= g.shortest_edge:
        raise DomainError(f"mesh width {h} must be below the shortest edge {g.shortest_edge}")
    n = g.n_vertices
    edge_nodes, edge_t = [], []
    for u, v, L in g.edges:
        m = math.ceil(L / h)
        interior = np.arange(n, n + m - 1)
        n += m - 1
        edge_nodes.append(np.concatenate([[u], interior, [v]]))
        edge_t.append(np.linspace(0.0, L, m + 1))
    free = np.array([i for i in range(n) if i not in g.dirichlet], dtype=int)
    return FEMMesh(n, tuple(edge_nodes), tuple(edge_t), free)


def _assemble(g: MetricGraph, mesh: FEMMesh) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    rows, cols, kv, mv = [], [], [], []
    for nodes, t in zip(mesh.edge_nodes, mesh.edge_t):
        hs = np.diff(t)
        i, j = nodes[:-1], nodes[1:]
        # element stiffness [[1,-1],[-1,1]]/h, consistent mass [[2,1],[1,2]]*h/6
        for a, b, ks, ms in ((i, i, 1.0, 2.0), (j, j, 1.0, 2.0), (i, j, -1.0, 1.0), (j, i, -1.0, 1.0)):
            rows.append(a)
            cols.append(b)
            kv.append(ks / hs)
            mv.append(ms * hs / 6.0)
    shape = (mesh.n_nodes, mesh.n_nodes)
    r, c = np.concatenate(rows), np.concatenate(cols)
    K = sp.coo_matrix((np.concatenate(kv), (r, c)), shape=shape).tocsr()
    M = sp.coo_matrix((np.concatenate(mv), (r, c)), shape=shape).tocsr()
    f = mesh.free
    return K[f][:, f], M[f][:, f]


def _elimination_order(A: sp.csr_matrix) -> np.ndarray:
    # the mesh of a tree is a tree: eliminating leaves first produces no fill
    order = scipy.sparse.csgraph.breadth_first_order(A, 0, directed=False, return_predecessors=False)
    if len(order) < A.shape[0]:
        seen = np.zeros(A.shape[0], bool)
        seen[order] = True
        order = np.concatenate([order, np.flatnonzero(~seen)])
    return order[::-1].copy()


def count_below(K: sp.csr_matrix, M: sp.csr_matrix, theta: float, order: np.ndarray | None = None) -> int:
    """Number of eigenvalues of ``K x = w M x`` below ``theta`` (Sylvester inertia of ``K - theta M``)."""
    A = (K - theta * M).tocsr()
    if order is None:
        order = _elimination_order(A)
    A = A[order][:, order].tocsc()
    lu = scipy.sparse.linalg.splu(A, permc_spec="NATURAL", diag_pivot_thresh=0.0, options={"SymmetricMode": True})
    return int(np.sum(lu.U.diagonal() < 0))


def _sparse_lowest(K: sp.csr_matrix, M: sp.csr_matrix, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Lowest ``count`` eigenpairs by shift-invert Lanczos, checked against an inertia count.

    Lanczos can return too few copies of an exactly repeated eigenvalue, so
    extra pairs are requested and the result is accepted only when the
    inertia count just above the last wanted eigenvalue agrees.
    """
    n = K.shape[0]
    order = _elimination_order(K)
    extra = max(4, count // 4)
    Kc, Mc = K.tocsc(), M.tocsc()
    for _ in range(_MAX_WIDENINGS):
        m = min(count + extra, n - 2)
        # shift below zero keeps K - sigma*M positive definite
        w, V = scipy.sparse.linalg.eigsh(Kc, k=m, M=Mc, sigma=-1.0, which="LM", tol=0.0)
        idx = np.argsort(w)
        w, V = w[idx], V[:, idx]
        top = w[count - 1]
        theta = top + 1e-7 * max(1.0, abs(top))
        found = int(np.sum(w < theta))
        if found >= count and (found < m or m == n - 2) and count_below(K, M, theta, order) == found:
            return w[:count], V[:, :count]
        extra *= 2
    raise ResolutionError(f"sparse eigensolver did not return a complete set of {count} eigenvalues")


def fem_eigenpairs(g: MetricGraph, h: float, count: int) -> tuple[np.ndarray, np.ndarray, FEMMesh]:
    """Lowest ``count`` discrete eigenpairs.

    Returns eigenvalues, eigenvectors over all mesh nodes (zero at Dirichlet
    vertices, columns M-orthonormal) and the mesh.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    mesh = build_mesh(g, h)
    K, M = _assemble(g, mesh)
    n = K.shape[0]
    if count > n:
        raise DomainError(f"mesh has only {n} degrees of freedom")
    if n <= _DENSE_LIMIT or count >= n - 3:
        w, V = scipy.linalg.eigh(K.toarray(), M.toarray(), subset_by_index=[0, count - 1])
    else:
        w, V = _sparse_lowest(K, M, count)
    full = np.zeros((mesh.n_nodes, count))
    full[mesh.free] = V
    return w, full, mesh


def fem_eigenvalues(g: MetricGraph, h: float, count: int) -> list[float]:
    """Lowest ``count`` eigenvalues of the P1 discretisation with mesh width at most ``h``.

    The error per eigenvalue is O(h**2) and always positive (upper bounds).
    """
    w, _, _ = fem_eigenpairs(g, h, count)
    return [float(x) for x in w]
