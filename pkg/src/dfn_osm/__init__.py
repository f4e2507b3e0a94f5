"""Optimized Schwarz methods on staircase fracture networks.

Iteration-matrix assembly, spectral diagnostics, two-fracture convergence
theory with Robin parameter optimization, and a finite-difference solver
that runs the actual Schwarz iteration against a monolithic reference.
"""

from .network import (BcKind, Network, TraceLayout, build_staircase,
                      trace_layout, unknown_count)
from .matrices import (IterationMatrixPair, MatrixKind, RobinParams,
                       assemble_dirichlet_1d, assemble_mode_2d,
                       assemble_neumann_1d, iteration_matrix, theorem1_norm)
from .spectral import ModeRange, SpectrumReport, max_mode_radius, spectral_radius
from .convergence import (OptimizationResult, TwoFractureGeometry, f_symbols,
                          grid_search_minmax, minmax_value,
                          optimal_params_1d, optimize_equioscillation,
                          rho_1d, rho_2d, rho_tilde, two_fracture_p_estimate)
from .solver import (BoundaryData, Discretization, OsmRunReport,
                     make_discretization, monolithic_solve,
                     observed_vs_predicted, osm_iterate)

__version__ = "0.1.0"

__all__ = [
    "BcKind", "Network", "TraceLayout", "build_staircase", "trace_layout",
    "unknown_count",
    "IterationMatrixPair", "MatrixKind", "RobinParams",
    "assemble_dirichlet_1d", "assemble_mode_2d", "assemble_neumann_1d",
    "iteration_matrix", "theorem1_norm",
    "ModeRange", "SpectrumReport", "max_mode_radius", "spectral_radius",
    "OptimizationResult", "TwoFractureGeometry", "f_symbols",
    "grid_search_minmax", "minmax_value", "optimal_params_1d",
    "optimize_equioscillation", "rho_1d", "rho_2d", "rho_tilde",
    "two_fracture_p_estimate",
    "BoundaryData", "Discretization", "OsmRunReport", "make_discretization",
    "monolithic_solve", "observed_vs_predicted", "osm_iterate",
    "__version__",
]
