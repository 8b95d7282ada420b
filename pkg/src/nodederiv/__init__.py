"""Derivative estimation on irregular node sets.

Weighted least-squares Taylor stencils over scattered 1D/2D nodes, a
classical finite-difference baseline on regular grids, and a convergence
study harness that measures observed orders of accuracy.
"""

from ._backend import backend_name
from .analysis import (
    Method,
    StudyCell,
    StudyConfig,
    StudyFit,
    StudyReport,
    fit_order,
    rms,
    run_study,
)
from .errors import (
    CoincidentNodeError,
    DegenerateLogError,
    DegenerateNeighborhoodError,
    EmptySampleError,
    InsufficientGridError,
    InsufficientNeighborsError,
    InvalidDomainError,
    InvalidRadiusError,
    NodederivError,
    SingularWeightError,
    UnsupportedAnisotropyError,
)
from .fields import (
    AnalyticJet,
    TestFunction,
    eval_jet,
    get_function,
    power,
    quadratic,
    sinusoidal,
)
from .neighbors import NeighborTable, brute_force_neighbors, build_neighbor_table
from .node_model import NodeSet, load_nodes, perturb, regular_grid, save_nodes
from .regular_fd import FdScheme, fd_derivatives
from .reporting import emit_csv, emit_field_dump
from .stencil import (
    COND_LIMIT,
    PIVOT_RTOL,
    ConditionReport,
    DerivativeField,
    DerivativeJet,
    StencilCoefficients,
    apply_stencil,
    build_stencil,
    derivative_field,
    design_row,
    diagnostics,
)
from .svgplot import emit_svg_plot
from .weighting import WeightKind, weight

__version__ = "0.1.0"

__all__ = [
    "AnalyticJet",
    "COND_LIMIT",
    "CoincidentNodeError",
    "ConditionReport",
    "DegenerateLogError",
    "DegenerateNeighborhoodError",
    "DerivativeField",
    "DerivativeJet",
    "EmptySampleError",
    "FdScheme",
    "InsufficientGridError",
    "InsufficientNeighborsError",
    "InvalidDomainError",
    "InvalidRadiusError",
    "Method",
    "NeighborTable",
    "NodeSet",
    "NodederivError",
    "PIVOT_RTOL",
    "SingularWeightError",
    "StencilCoefficients",
    "StudyCell",
    "StudyConfig",
    "StudyFit",
    "StudyReport",
    "TestFunction",
    "UnsupportedAnisotropyError",
    "WeightKind",
    "apply_stencil",
    "backend_name",
    "brute_force_neighbors",
    "build_neighbor_table",
    "build_stencil",
    "derivative_field",
    "design_row",
    "diagnostics",
    "emit_csv",
    "emit_field_dump",
    "emit_svg_plot",
    "eval_jet",
    "fd_derivatives",
    "fit_order",
    "get_function",
    "load_nodes",
    "perturb",
    "power",
    "quadratic",
    "regular_grid",
    "rms",
    "run_study",
    "save_nodes",
    "sinusoidal",
    "weight",
]
