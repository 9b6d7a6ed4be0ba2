"""Spectral analysis of Laplacians on metric graphs and hot spots of quantum trees."""
from .errors import DomainError, QuantreeError, ResolutionError, UnsupportedError, ValidationError
from .experiments import build_paper_example, monotonicity, random_tree, repro, survey
from .fem import fem_eigenpairs, fem_eigenvalues
from .graph import (
    GraphPoint,
    MetricGraph,
    VertexCondition,
    boundary_vertices,
    build_graph,
    diameter,
    distance,
    glue_graphs,
    is_tree,
    read_graph,
    split_at_vertex,
    write_graph,
)
from .hotspots import global_extrema, hot_spots_holds, nodal_domains
from .spectral import (
    EdgeWave,
    Eigenpair,
    assemble_secular,
    eigenfunctions,
    eigenvalue_count,
    find_eigenvalues,
    integral,
    lowest_eigenpairs,
    second_eigenpair,
    secular_indicator,
)

__version__ = "0.1.0"
