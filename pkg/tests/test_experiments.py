import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from quantree.errors import ValidationError
from quantree.experiments import (
    EPSILON_STAR,
    ExampleParams,
    build_paper_example,
    dirichlet_star,
    monotonicity,
    random_tree,
    repro,
    solve_report,
    survey,
)
from quantree.fem import fem_eigenvalues
from quantree.graph import build_graph, is_tree
from quantree.spectral import lowest_eigenpairs, second_eigenpair

PI2 = math.pi**2


def test_example_lengths():
    P2, S2, G = build_paper_example(0.0)
    assert all(L == 0.5 for L in S2.lengths)
    assert P2.total_length == 2.0
    assert build_paper_example(0.05).Gamma.total_length == pytest.approx(4.7)
    assert G.n_vertices == 9 and G.n_edges == 8


@pytest.mark.parametrize("eps", [0.5, -0.01, 0.25])
def test_example_rejects(eps):
    with pytest.raises(ValidationError):
        build_paper_example(eps)


def test_epsilon_star_constant():
    assert EPSILON_STAR == pytest.approx(oracles.epsilon_star(), abs=1e-12)
    assert EPSILON_STAR == pytest.approx(0.108173, abs=1e-6)


def test_repro_default():
    rep = repro()
    assert rep.passed
    assert rep.mu2_P2 == pytest.approx(PI2 / 4, rel=1e-10)
    assert rep.mu2_S2 == pytest.approx(oracles.mu2_doubled_star(0.05), rel=1e-9)
    assert rep.mu2_Gamma == pytest.approx(rep.mu2_S2, abs=1e-8)
    assert rep.multiplicity_Gamma == 1
    assert rep.extrema_distance == pytest.approx(1.8, abs=1e-8)
    assert rep.diameter == pytest.approx(2.0)
    # FEM cross-check of the gap
    G = build_paper_example(0.05).Gamma
    assert fem_eigenvalues(G, 1e-3, 2)[1] == pytest.approx(rep.mu2_Gamma, rel=1e-4)


def test_repro_past_threshold_fails():
    rep = repro(0.2)
    assert not rep.ordering_holds
    assert not rep.passed
    assert rep.mu2_Gamma == pytest.approx(PI2 / 4, rel=1e-10)


def test_repro_symmetric_case():
    rep = repro(0.0)
    assert rep.mu2_S2 == pytest.approx(oracles.mu2_doubled_star(0.0), rel=1e-9)
    assert rep.ordering_holds


@pytest.mark.parametrize("eps", [0.01, 0.03, 0.05, 0.08, 0.1])
def test_gap_is_min_of_pieces(eps):
    rep = repro(eps)
    assert rep.mu2_Gamma == pytest.approx(min(rep.mu2_P2, rep.mu2_S2), abs=1e-8)
    assert rep.passed


@pytest.mark.parametrize("eps", [0.0, 0.05, 0.1])
def test_dirichlet_star_identity(eps):
    lam = lowest_eigenpairs(dirichlet_star(eps), 1)[0].mu
    mu = second_eigenpair(build_paper_example(eps).S2).mu
    assert abs(lam - mu) < 1e-9


def test_random_tree_examples():
    g = random_tree(1, 1)
    assert g.n_vertices == 2 and g.n_edges == 1
    a = random_tree(42, 10, (0.2, 2.0))
    b = random_tree(42, 10, (0.2, 2.0))
    assert a.n_vertices == 11 and a.edges == b.edges
    with pytest.raises(ValidationError):
        random_tree(1, 3, (0.0, 1.0))
    with pytest.raises(ValidationError):
        random_tree(1, 3, (2.0, 1.0))
    with pytest.raises(ValidationError):
        random_tree(1, 0)


@given(st.integers(0, 2**63 - 1), st.integers(1, 30))
def test_random_tree_is_tree(seed, n):
    g = random_tree(seed, n, (0.3, 1.5))
    assert is_tree(g)
    assert np.all((g.lengths >= 0.3) & (g.lengths <= 1.5))


def test_random_tree_documented_algorithm():
    rng = np.random.Generator(np.random.PCG64(5))
    edges = []
    for i in range(4):
        p = int(rng.integers(0, i + 1))
        edges.append((p, i + 1, float(rng.uniform(0.2, 2.0))))
    assert random_tree(5, 4).edges == tuple(edges)


def test_survey_single_interval():
    res = survey(1, 3, max_edges=1)
    (rec,) = res.records
    assert rec.n_edges == 1 and rec.ratio == 1.0 and rec.hot_spots
    assert res.all_pass


def test_survey_injected_example():
    res = survey(3, 11, max_edges=6, extra=[build_paper_example(0.05).Gamma])
    assert res.records[-1].seed == -1
    assert res.records[-1].ratio == pytest.approx(0.9, abs=1e-9)
    assert all(r.extrema_distance <= r.diameter + 1e-12 for r in res.records)
    assert res.summary()["ratio_min"] <= 0.9 + 1e-9


def test_survey_deterministic():
    a, b = survey(5, 99, 8), survey(5, 99, 8)
    assert a.records == b.records


def test_survey_rejects():
    with pytest.raises(ValidationError):
        survey(0, 1)


def test_monotonicity_interval():
    unit = build_graph(2, [(0, 1, 1.0)])
    rep = monotonicity(unit, 0, 0.5)
    assert rep.mu2_before == pytest.approx(PI2, rel=1e-10)
    assert rep.expected_strict and rep.strict_decrease and rep.consistent
    fem = fem_eigenvalues(build_graph(3, [(0, 1, 1.0), (0, 2, 0.5)]), 1e-3, 2)[1]
    assert rep.mu2_after == pytest.approx(fem, rel=1e-4)


def test_monotonicity_at_nodal_vertex(paper05):
    rep = monotonicity(paper05.Gamma, 0, 0.05)
    assert not rep.expected_strict
    assert abs(rep.decrease) < 1e-8
    assert rep.consistent


def test_monotonicity_continuity():
    g = random_tree(8, 5)
    changes = [monotonicity(g, 2, L).decrease for L in (0.1, 0.01, 0.001)]
    assert changes[0] > changes[1] > changes[2] >= 0
    # first-order perturbation: the drop is linear in the pendant length
    assert changes[2] / changes[0] == pytest.approx(1e-2, rel=0.1)


def test_solve_report_path():
    out = solve_report(build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)]), 10)
    mus = [e["mu"] for e in out["eigenvalues"]]
    assert mus == pytest.approx([0.0, PI2 / 4, PI2], rel=1e-10)


def test_solve_report_extrema():
    S2 = build_paper_example(0.0).S2
    out = solve_report(S2, 3, extrema=2)
    rep = out["extrema"]["report"]
    assert {p["label"] for p in rep["max_points"] + rep["min_points"]} == {"v_u1", "v_u2", "v_d1", "v_d2"}
    with pytest.raises(ValidationError):
        solve_report(S2, 3, extrema=9)


def test_example_params():
    assert ExampleParams().epsilon == 0.05
    assert ExampleParams(0.1).star_edge == pytest.approx(0.4)
