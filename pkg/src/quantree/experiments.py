"""Experiments on quantum trees: the path/star counterexample, random-tree surveys,
pendant-gluing monotonicity and a general solve report.

The counterexample graph is two unit edges (``v_l - v0 - v_r``) glued at
``v0`` to two copies of a three-edge star with edges ``1/2 - eps``, reflected
through one of their leaves.  Its diameter 2 is realised only by
``v_l, v_r``, yet for small ``eps > 0`` the first nontrivial eigenfunction
lives on the stars and peaks at the four star leaves.

Random trees use numpy's PCG64 generator: edge ``i`` joins the new vertex
``i + 1`` to a parent drawn uniformly from ``0..i`` (``Generator.integers``),
then its length is drawn with ``Generator.uniform(lo, hi)``.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import asdict, dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ResolutionError, ValidationError
from .graph import MetricGraph, glue_graphs, is_tree
from .hotspots import ExtremumReport, global_extrema, hot_spots_holds, nodal_domains, report_to_dict
from .spectral import (
    EdgeWave,
    Eigenpair,
    eigenpair_to_dict,
    find_eigenvalues,
    integral,
    lowest_eigenpairs,
    second_eigenpair,
    sup_norm,
    vertex_values,
)

__all__ = [
    "ExampleParams",
    "PaperExample",
    "EPSILON_STAR",
    "build_paper_example",
    "dirichlet_star",
    "ReproReport",
    "repro",
    "random_tree",
    "combine",
    "SurveyRecord",
    "SurveyResult",
    "survey",
    "MonotonicityReport",
    "monotonicity",
    "solve_report",
]

# star edge below which the reflected stars undercut the doubled path: arctan(1/sqrt2)/(1/2 - eps) = pi/2
EPSILON_STAR = 0.5 - 2.0 / math.pi * math.atan(1.0 / math.sqrt(2.0))

EQUALITY_TOL = 1e-8
DIRICHLET_TOL = 1e-9
SUPPORT_TOL = 1e-8
INTEGRAL_TOL = 1e-8
STRICT_DECREASE = 1e-6


@dataclass(frozen=True)
class ExampleParams:
    epsilon: float = 0.05

    def __post_init__(self) -> None:
        if not (0.0 <= self.epsilon < 0.25):
            raise ValidationError(f"epsilon must lie in [0, 0.25), got {self.epsilon}")

    @property
    def star_edge(self) -> float:
        return 0.5 - self.epsilon


class PaperExample(NamedTuple):
    P2: MetricGraph
    S2: MetricGraph
    Gamma: MetricGraph


def build_paper_example(p: ExampleParams | float = ExampleParams()) -> PaperExample:
    """Doubled path, doubled star and their union glued at ``v0``.

    Vertex 0 is ``v0`` in all three graphs.  Labels: ``v_l, v_r`` on the
    path, ``c_u, v_u1, v_u2`` and ``c_d, v_d1, v_d2`` on the two stars.
    """
    if not isinstance(p, ExampleParams):
        p = ExampleParams(float(p))
    a = p.star_edge
    P2 = MetricGraph(3, ((1, 0, 1.0), (0, 2, 1.0)), ("v0", "v_l", "v_r"))
    S2 = MetricGraph(
        7,
        ((0, 1, a), (1, 2, a), (1, 3, a), (0, 4, a), (4, 5, a), (4, 6, a)),
        ("v0", "c_u", "v_u1", "v_u2", "c_d", "v_d1", "v_d2"),
    )
    return PaperExample(P2, S2, glue_graphs([P2, S2], [0, 0]))


def dirichlet_star(p: ExampleParams | float = ExampleParams()) -> MetricGraph:
    """One three-edge star with a Dirichlet condition at the leaf that becomes ``v0``."""
    if not isinstance(p, ExampleParams):
        p = ExampleParams(float(p))
    a = p.star_edge
    return MetricGraph(4, ((1, 0, a), (1, 2, a), (1, 3, a)), ("v0", "c", "w1", "w2"), frozenset({0}))


# -- reproduction of the counterexample -----------------------------------


@dataclass
class ReproReport:
    epsilon: float
    mu2_P2: float
    mu2_S2: float
    mu2_Gamma: float
    multiplicity_Gamma: int
    lambda1_S: float
    ordering_holds: bool
    equality_holds: bool
    simple: bool
    dirichlet_identity_holds: bool
    p2_sup_ratio: float
    vanishes_on_P2: bool
    integral: float
    max_labels: list[str]
    min_labels: list[str]
    extrema_at_star_leaves: bool
    extrema_distance: float
    diameter: float
    closer_than_diameter: bool
    hotspots_at_boundary: bool
    extrema: dict = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(
            (
                self.ordering_holds,
                self.equality_holds,
                self.simple,
                self.dirichlet_identity_holds,
                self.vanishes_on_P2,
                self.extrema_at_star_leaves,
                self.closer_than_diameter,
                self.hotspots_at_boundary,
            )
        )

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _labels(g: MetricGraph, points) -> list[str]:
    return [g.label(p.vertex) if p.vertex is not None else f"e{p.edge}@{p.t!r}" for p in points]


def repro(epsilon: float = 0.05) -> ReproReport:
    """Check every claim about the counterexample at one ``epsilon``."""
    params = ExampleParams(epsilon)
    P2, S2, G = build_paper_example(params)
    mu_p = second_eigenpair(P2).mu
    mu_s = second_eigenpair(S2).mu
    pair = second_eigenpair(G)
    lam = lowest_eigenpairs(dirichlet_star(params), 1)[0].mu

    f = pair.basis[0]
    norm = sup_norm(f)
    path_edges = [i for i, (u, v, _) in enumerate(G.edges) if G.label(u) in ("v_l", "v_r") or G.label(v) in ("v_l", "v_r")]
    p2_ratio = sup_norm([f[i] for i in path_edges]) / norm

    rep = global_extrema(G, f)
    max_l, min_l = sorted(_labels(G, rep.max_points)), sorted(_labels(G, rep.min_points))
    up, down = ["v_u1", "v_u2"], ["v_d1", "v_d2"]
    return ReproReport(
        epsilon=params.epsilon,
        mu2_P2=mu_p,
        mu2_S2=mu_s,
        mu2_Gamma=pair.mu,
        multiplicity_Gamma=pair.multiplicity,
        lambda1_S=lam,
        ordering_holds=mu_s < mu_p,
        equality_holds=abs(pair.mu - mu_s) < EQUALITY_TOL,
        simple=pair.multiplicity == 1,
        dirichlet_identity_holds=abs(lam - mu_s) < DIRICHLET_TOL,
        p2_sup_ratio=p2_ratio,
        vanishes_on_P2=p2_ratio < SUPPORT_TOL,
        integral=integral(f),
        max_labels=max_l,
        min_labels=min_l,
        extrema_at_star_leaves=(max_l, min_l) in ((up, down), (down, up)),
        extrema_distance=rep.extrema_distance,
        diameter=rep.diameter,
        closer_than_diameter=rep.extrema_distance < rep.diameter - EQUALITY_TOL,
        hotspots_at_boundary=hot_spots_holds(rep),
        extrema=report_to_dict(G, rep),
    )


# -- random trees and the hot-spots survey --------------------------------


def random_tree(seed: int, n_edges: int, length_range: tuple[float, float] = (0.2, 2.0)) -> MetricGraph:
    """Uniform-attachment random tree, fully determined by ``seed``."""
    lo, hi = length_range
    if n_edges < 1:
        raise ValidationError("a random tree needs at least one edge")
    if not (0 < lo <= hi and math.isfinite(hi)):
        raise ValidationError(f"invalid length range {length_range}")
    rng = np.random.Generator(np.random.PCG64(seed))
    edges = []
    for i in range(n_edges):
        parent = int(rng.integers(0, i + 1))
        edges.append((parent, i + 1, float(rng.uniform(lo, hi))))
    return MetricGraph(n_edges + 1, tuple(edges))


def combine(basis, coeffs) -> tuple[EdgeWave, ...]:
    """Linear combination of eigenfunctions sharing one eigenvalue."""
    out = []
    for waves in zip(*basis):
        w0 = waves[0]
        a = math.fsum(c * w.a for c, w in zip(coeffs, waves))
        b = math.fsum(c * w.b for c, w in zip(coeffs, waves))
        out.append(EdgeWave(w0.edge, a, b, w0.k, w0.length))
    return tuple(out)


def eigenspace_samples(pair: Eigenpair, n_combos: int, seed) -> list[tuple[EdgeWave, ...]]:
    """Basis functions plus, for a multiple eigenvalue, random unit-norm combinations."""
    funcs = list(pair.basis)
    if pair.multiplicity > 1:
        rng = np.random.default_rng(seed)
        for _ in range(n_combos):
            c = rng.standard_normal(pair.multiplicity)
            funcs.append(combine(pair.basis, c / np.linalg.norm(c)))
    return funcs


@dataclass
class SurveyRecord:
    seed: int
    n_vertices: int
    n_edges: int
    total_length: float
    mu2: float = math.nan
    multiplicity: int = 0
    boundary_margin: float = math.nan
    hot_spots: bool = False
    extrema_distance: float = math.nan
    diameter: float = math.nan
    ratio: float = math.nan
    max_abs_integral: float = math.nan
    nodal_count: int = 0
    functions_checked: int = 0
    error: str | None = None


@dataclass
class SurveyResult:
    records: list[SurveyRecord]

    @property
    def all_pass(self) -> bool:
        return all(r.hot_spots and r.error is None for r in self.records)

    def summary(self) -> dict:
        ratios = [r.ratio for r in self.records if r.error is None]
        return {
            "n": len(self.records),
            "passed": sum(r.hot_spots for r in self.records),
            "failed": sum((not r.hot_spots) and r.error is None for r in self.records),
            "errored": sum(r.error is not None for r in self.records),
            "ratio_min": min(ratios) if ratios else math.nan,
            "ratio_median": statistics.median(ratios) if ratios else math.nan,
            "max_abs_integral": max((r.max_abs_integral for r in self.records if r.error is None), default=math.nan),
        }


def survey_tree(g: MetricGraph, seed: int, n_combos: int = 32) -> SurveyRecord:
    """Hot-spots check of every sampled mu_2 eigenfunction of one tree."""
    rec = SurveyRecord(seed, g.n_vertices, g.n_edges, g.total_length)
    try:
        pair = second_eigenpair(g)
    except ResolutionError:
        try:
            pair = second_eigenpair(g, scan_step=math.pi / (160.0 * g.total_length))
        except ResolutionError as exc:
            rec.error = str(exc)
            return rec
    funcs = eigenspace_samples(pair, n_combos, [seed, 1])
    reports = [global_extrema(g, f) for f in funcs]
    first: ExtremumReport = reports[0]
    rec.mu2 = pair.mu
    rec.multiplicity = pair.multiplicity
    rec.boundary_margin = max(r.boundary_margin for r in reports)
    rec.hot_spots = all(hot_spots_holds(r) for r in reports)
    rec.extrema_distance = first.extrema_distance
    rec.diameter = first.diameter
    rec.ratio = first.extrema_distance / first.diameter
    rec.max_abs_integral = max(abs(integral(f)) for f in funcs)
    rec.nodal_count = nodal_domains(g, funcs[0]).domain_count
    rec.functions_checked = len(funcs)
    return rec


def survey(
    n: int,
    seed: int,
    max_edges: int = 12,
    length_range: tuple[float, float] = (0.2, 2.0),
    n_combos: int = 32,
    extra: Iterable[MetricGraph] = (),
) -> SurveyResult:
    """Run the hot-spots check on ``n`` random trees (plus any ``extra`` trees).

    A PCG64 generator seeded with ``seed`` draws, per trial, the edge count
    uniformly from ``1..max_edges`` and then a 63-bit seed for
    :func:`random_tree`.  Extra graphs get record seed ``-1``.
    """
    if n < 1:
        raise ValidationError("survey needs n >= 1")
    if max_edges < 1:
        raise ValidationError("max_edges must be at least 1")
    master = np.random.Generator(np.random.PCG64(seed))
    records = []
    for _ in range(n):
        n_edges = int(master.integers(1, max_edges + 1))
        tree_seed = int(master.integers(0, 2**63 - 1))
        records.append(survey_tree(random_tree(tree_seed, n_edges, length_range), tree_seed, n_combos))
    for g in extra:
        if not is_tree(g):
            raise ValidationError("survey graphs must be trees")
        records.append(survey_tree(g, -1, n_combos))
    return SurveyResult(records)


# -- pendant gluing -------------------------------------------------------


@dataclass
class MonotonicityReport:
    vertex: int
    pendant_length: float
    mu2_before: float
    mu2_after: float
    multiplicity_before: int
    eigenfunction_at_vertex: float
    decrease: float
    strict_decrease: bool
    expected_strict: bool
    consistent: bool


def monotonicity(g: MetricGraph, vertex: int, pendant_length: float) -> MonotonicityReport:
    """Compare mu_2 before and after gluing a pendant edge at ``vertex``.

    ``eigenfunction_at_vertex`` is the largest ``|f(vertex)|`` over unit-norm
    ``f`` in the mu_2 eigenspace.  A strict decrease is expected when it is
    nonzero; an increase is never consistent.
    """
    if not 0 <= vertex < g.n_vertices:
        raise ValidationError(f"unknown vertex {vertex}")
    if not pendant_length > 0:
        raise ValidationError("pendant length must be positive")
    before = second_eigenpair(g)
    after = second_eigenpair(g.add_pendant(vertex, pendant_length))
    vals = np.array([vertex_values(g, f)[vertex] for f in before.basis])
    at_v = float(np.linalg.norm(vals))
    norm = max(sup_norm(f) for f in before.basis)
    decrease = before.mu - after.mu
    expected = at_v > SUPPORT_TOL * norm
    strict = decrease > STRICT_DECREASE
    consistent = decrease >= -EQUALITY_TOL and (strict or not expected)
    return MonotonicityReport(
        vertex, pendant_length, before.mu, after.mu, before.multiplicity, at_v, decrease, strict, expected, consistent
    )


# -- general solve --------------------------------------------------------


def solve_report(
    g: MetricGraph, mu_max: float, extrema: int | None = None, with_functions: bool = False
) -> dict:
    """Spectrum up to ``mu_max`` and optionally the extrema of eigenfunction number ``extrema``.

    Eigenvalue numbering starts at 1 and counts multiplicity; the first
    basis function of the matching eigenspace is analysed.
    """
    pairs = find_eigenvalues(g, mu_max)
    out: dict = {
        "mu_max": mu_max,
        "eigenvalues": [
            {"index": i + 1, "mu": p.mu, "k": p.k, "multiplicity": p.multiplicity} for i, p in enumerate(pairs)
        ],
    }
    if with_functions:
        out["eigenpairs"] = [eigenpair_to_dict(p) for p in pairs]
    if extrema is not None:
        if extrema < 1:
            raise ValidationError("eigenvalue index starts at 1")
        seen = 0
        target = None
        for p in pairs:
            seen += p.multiplicity
            if seen >= extrema:
                target = p
                break
        if target is None:
            raise ValidationError(f"eigenvalue {extrema} lies above mu_max={mu_max}")
        rep = global_extrema(g, target.basis[0])
        out["extrema"] = {
            "index": extrema,
            "mu": target.mu,
            "multiplicity": target.multiplicity,
            "report": report_to_dict(g, rep),
            "hot_spots_holds": hot_spots_holds(rep),
        }
    return out
