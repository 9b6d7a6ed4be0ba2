import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import trees
from quantree.errors import DomainError
from quantree.experiments import build_paper_example, combine, eigenspace_samples
from quantree.fem import fem_eigenpairs
from quantree.graph import GraphPoint, build_graph
from quantree.hotspots import (
    edge_extrema,
    global_extrema,
    hot_spots_holds,
    nodal_domains,
    report_to_dict,
)
from quantree.spectral import EdgeWave, eigenfunctions, find_eigenvalues, second_eigenpair

UNIT = build_graph(2, [(0, 1, 1.0)])


def test_edge_extrema_cosine():
    out = edge_extrema(EdgeWave(0, 1.0, 0.0, math.pi, 1.0))
    assert [t for t, _ in out] == [0.0, 1.0]
    assert out[0][1] == 1.0 and out[1][1] == pytest.approx(-1.0)


def test_edge_extrema_sine():
    out = edge_extrema(EdgeWave(0, 0.0, 1.0, math.pi, 1.0))
    assert len(out) == 3
    t, v = out[1]
    assert t == pytest.approx(0.5) and v == pytest.approx(1.0)
    assert out[0][1] == 0.0 and abs(out[2][1]) < 1e-15


def test_edge_extrema_phase_shift():
    out = edge_extrema(EdgeWave(0, 1.0, 1.0, 1.0, 3.0))
    interior = out[1:-1]
    assert len(interior) == 1
    assert interior[0][0] == pytest.approx(math.pi / 4)
    assert interior[0][1] == pytest.approx(math.sqrt(2))


def test_edge_extrema_rejects_bad_length():
    with pytest.raises(DomainError):
        edge_extrema(EdgeWave(0, 1.0, 0.0, 1.0, 0.0))


@given(
    st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 20), st.floats(0.05, 3)
)
def test_edge_extrema_match_sampling(a, b, k, L):
    w = EdgeWave(0, a, b, k, L)
    cands = edge_extrema(w)
    t = np.linspace(0, L, 10_001)
    y = w(t)
    assert max(v for _, v in cands) >= y.max() - 1e-12
    assert min(v for _, v in cands) <= y.min() + 1e-12
    # sampling misses a peak by at most amplitude * (k dt)^2 / 8
    assert max(v for _, v in cands) <= y.max() + (abs(a) + abs(b)) * (k * L / 10_000) ** 2 / 8 + 1e-12


def test_path_report(paper05):
    P2 = paper05.P2
    (f,) = eigenfunctions(P2, math.pi**2 / 4)
    rep = global_extrema(P2, f)
    labels = {P2.label(p.vertex) for p in rep.max_points + rep.min_points}
    assert labels == {"v_l", "v_r"}
    assert len(rep.max_points) == len(rep.min_points) == 1
    assert rep.extrema_distance == pytest.approx(2.0)
    assert rep.diameter == pytest.approx(2.0)
    assert hot_spots_holds(rep)


def test_gamma_report(paper05):
    G = paper05.Gamma
    f = second_eigenpair(G).basis[0]
    rep = global_extrema(G, f)
    mx = sorted(G.label(p.vertex) for p in rep.max_points)
    mn = sorted(G.label(p.vertex) for p in rep.min_points)
    assert (mx, mn) in ((["v_u1", "v_u2"], ["v_d1", "v_d2"]), (["v_d1", "v_d2"], ["v_u1", "v_u2"]))
    assert rep.extrema_distance == pytest.approx(1.8, abs=1e-8)
    assert rep.diameter == pytest.approx(2.0)
    assert hot_spots_holds(rep)


def test_constant_is_degenerate(paper05):
    f = find_eigenvalues(paper05.Gamma, 1.0)[0].basis[0]
    rep = global_extrema(paper05.Gamma, f)
    assert rep.degenerate
    assert rep.max_value == rep.min_value
    assert len(rep.max_points) == paper05.Gamma.n_vertices


def test_interior_maximum_fails():
    # sin(pi t) stands in for t(1 - t): zero at both ends, peak mid-edge, not a Neumann eigenfunction
    f = [EdgeWave(0, 0.0, 1.0, math.pi, 1.0)]
    rep = global_extrema(UNIT, f)
    assert rep.max_points == (GraphPoint(0, 0.5),)
    assert rep.boundary_margin == pytest.approx(0.5)
    assert not hot_spots_holds(rep)


@settings(max_examples=30)
@given(trees(max_edges=8))
def test_sign_flip_swaps(g):
    f = second_eigenpair(g).basis[0]
    a = global_extrema(g, f)
    b = global_extrema(g, [-w for w in f])
    assert a.max_points == b.min_points and a.min_points == b.max_points
    assert a.max_value == -b.min_value


@settings(max_examples=15)
@given(trees(max_edges=5))
def test_closed_form_extrema_match_sampling(g):
    f = second_eigenpair(g).basis[0]
    rep = global_extrema(g, f)
    samples = np.concatenate([w(np.linspace(0, w.length, 10_000)) for w in f])
    assert rep.max_value >= samples.max() - 1e-12
    assert rep.min_value <= samples.min() + 1e-12
    assert rep.max_value <= samples.max() + 1e-6


@settings(max_examples=40)
@given(trees(max_edges=10))
def test_hot_spots_random_trees(g):
    pair = second_eigenpair(g)
    for f in eigenspace_samples(pair, 32, 0):
        rep = global_extrema(g, f)
        assert hot_spots_holds(rep)
        assert rep.extrema_distance <= rep.diameter + 1e-12


@settings(max_examples=25)
@given(trees(max_edges=8, equal_lengths=True))
def test_hot_spots_symmetric_trees(g):
    pair = second_eigenpair(g)
    for f in eigenspace_samples(pair, 32, 1):
        assert hot_spots_holds(global_extrema(g, f))


@pytest.mark.parametrize("eps", [0.01, 0.025, 0.05, 0.075, 0.1])
def test_strict_inequality_on_paper_tree(eps):
    G = build_paper_example(eps).Gamma
    rep = global_extrema(G, second_eigenpair(G).basis[0])
    assert rep.extrema_distance == pytest.approx(2 - 4 * eps, abs=1e-9)
    assert rep.extrema_distance < rep.diameter


def test_nodal_path(paper05):
    (f,) = eigenfunctions(paper05.P2, math.pi**2 / 4)
    rep = nodal_domains(paper05.P2, f)
    assert rep.domain_count == 2
    assert rep.zero_points == (paper05.P2.vertex_point(0),)


def test_nodal_gamma(paper05):
    G = paper05.Gamma
    f = second_eigenpair(G).basis[0]
    rep = nodal_domains(G, f)
    assert rep.domain_count == 2
    assert set(rep.zero_edges) == {0, 1}
    # FEM sign pattern oracle: one positive and one negative star, path ~ 0
    w, V, mesh = fem_eigenpairs(G, 2e-3, 2)
    v = V[:, 1]
    up = np.concatenate([mesh.edge_nodes[e][1:-1] for e in (3, 4)])
    down = np.concatenate([mesh.edge_nodes[e][1:-1] for e in (6, 7)])
    assert np.all(np.sign(v[up]) == np.sign(v[up][0]))
    assert np.all(np.sign(v[down]) == -np.sign(v[up][0]))


def test_nodal_third_interval_mode():
    f = [EdgeWave(0, 1.0, 0.0, 2 * math.pi, 1.0)]
    rep = nodal_domains(UNIT, f)
    assert rep.domain_count == 3
    assert [p.t for p in rep.zero_points] == pytest.approx([0.25, 0.75])


def test_nodal_rejects_zero():
    with pytest.raises(DomainError):
        nodal_domains(UNIT, [EdgeWave(0, 0.0, 0.0, 1.0, 1.0)])


@settings(max_examples=30)
@given(trees(max_edges=9))
def test_nodal_count_simple_gap(g):
    pair = second_eigenpair(g)
    if pair.multiplicity == 1:
        assert nodal_domains(g, pair.basis[0]).domain_count == 2


def test_report_serialisation(paper05):
    G = paper05.Gamma
    rep = global_extrema(G, second_eigenpair(G).basis[0])
    d = report_to_dict(G, rep)
    assert {p["label"] for p in d["max_points"] + d["min_points"]} == {"v_u1", "v_u2", "v_d1", "v_d2"}
    assert all(set(p) >= {"edge", "t", "vertex"} for p in d["max_points"])
    assert len(d["pair_distances"]) == 4


def test_combine_unit_norm():
    star = build_graph(4, [(0, 1, 0.5), (0, 2, 0.5), (0, 3, 0.5)])
    pair = second_eigenpair(star)
    assert pair.multiplicity == 2
    from quantree.spectral import inner

    f = combine(pair.basis, [0.6, 0.8])
    assert inner(f, f) == pytest.approx(1.0, abs=1e-10)
