"""Configuration-model random graphs and their clustering spectrum.

Generates power-law configuration multigraphs, erases them to simple
graphs, counts triangles exactly, and evaluates the closed-form
predictions for the degree-resolved local clustering c(k) so simulation
and theory can be compared on normalized axes.
"""

from ._ext import BACKEND as kernel_backend
from .asymptotics import (
    TheoryCurve,
    ck_crossover,
    clustering_limit,
    clustering_scale,
    constant_A,
    crossover_scaling,
    one_minus_exp_moment,
    theory_curve,
)
from .degrees import DegreeSequence, degree_sum_typical, sample_degrees
from .experiments import ExperimentConfig, run
from .graphs import SimpleGraph, erase
from .hvm import HvmParams, compare_spectra, generate_hvm
from .ingest import EdgeListGraph, ingest_edge_list
from .matching import MultiGraph, pair_half_edges
from .params import ModelParams, degree_range, gamma_tail_constant
from .quadrature import QuadratureSpec
from .regimes import (
    RegimeWindow,
    TriangleDecomposition,
    contributing_alpha_band,
    decompose_triangles,
    empirical_connection_probability,
    triangle_probability_estimate,
    window_contains,
)
from .rng import replica_stream
from .triangles import (
    BinnedSpectrum,
    ClusteringSpectrum,
    clustering_spectrum,
    count_triangles,
    count_triangles_edge_perspective,
    fit_slope,
    global_clustering,
    log_bin,
    pool_spectra,
    triangle_list,
    triangles_per_vertex,
)

__version__ = "0.1.0"
