"""Convergence studies: RMS errors across a ladder of grid resolutions.

For each grid size the harness builds a regular grid over the test
function's domain, perturbs it (scattered-node methods only), estimates all
five derivative quantities per requested method, and reduces each to an RMS
error against the analytic jet. Orders of accuracy are the slopes of
ordinary least-squares fits through (log dx, log rms).

Methods: ``ddin`` solves with uniform weights, ``ddinw`` with the
configured weight kernel, and ``fd`` applies classical finite differences
on the unperturbed grid (its stencils require regular spacing).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateLogError, EmptySampleError, NodederivError
from .fields import JET_SLOTS, TestFunction
from .node_model import perturb, regular_grid
from .neighbors import build_neighbor_table
from .regular_fd import FdScheme, fd_derivatives
from .stencil import QUANTITIES_2D, derivative_field
from .weighting import WeightKind


class Method(Enum):
    DDIN = "ddin"
    DDINW = "ddinw"
    FD = "fd"


#: Default study setup, shared with the CLI.
DEFAULT_SIZES = (26, 51, 101, 201)
DEFAULT_DR_FRAC = 0.25
DEFAULT_R_FRAC = 2.5
DEFAULT_SEED = 42


@dataclass(frozen=True)
class StudyConfig:
    function: TestFunction
    sizes: tuple[int, ...] = DEFAULT_SIZES
    dr_frac: float = DEFAULT_DR_FRAC
    r_frac: float = DEFAULT_R_FRAC
    weight: WeightKind = WeightKind.MPS
    seed: int = DEFAULT_SEED
    include_boundary: bool = False
    methods: tuple[Method, ...] = (Method.DDIN, Method.DDINW, Method.FD)
    fd_first: FdScheme = FdScheme.CENTRAL_FIRST
    fd_second: FdScheme = FdScheme.CENTRAL_SECOND

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.sizes:
            raise ValueError("at least one grid size is required")
        if any(b >= a for a, b in zip(self.sizes[1:], self.sizes)):
            raise ValueError(f"grid sizes must be strictly increasing: {self.sizes}")
        if self.dr_frac < 0:
            raise ValueError(f"dr_frac must be >= 0, got {self.dr_frac}")
        if not self.r_frac > 0:
            raise ValueError(f"r_frac must be > 0, got {self.r_frac}")
        if not self.methods:
            raise ValueError("at least one method is required")


@dataclass(frozen=True)
class StudyCell:
    """RMS of one (method, quantity) pair at one grid size."""

    method: Method
    quantity: str
    n: int
    dx: float
    rms: float | None
    nodes_used: int
    nodes_total: int
    nodes_masked: int
    nodes_failed: int


@dataclass(frozen=True)
class StudyFit:
    """Fitted convergence order of one (method, quantity) series."""

    method: Method
    quantity: str
    slope: float | None
    intercept: float | None


@dataclass(frozen=True)
class StudyReport:
    config: StudyConfig
    cells: tuple[StudyCell, ...]
    fits: tuple[StudyFit, ...]


def rms(numeric, exact, valid=None, include=None) -> float:
    """Root-mean-square deviation over the valid, included nodes.

    sqrt((1/M) sum (numeric_k - exact_k)^2) with M the number of nodes that
    are both valid and included; raises EmptySampleError when M = 0.
    """
    numeric = np.asarray(numeric, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if numeric.shape != exact.shape:
        raise ValueError("numeric and exact must have equal length")
    sel = np.ones(numeric.shape, dtype=bool)
    if valid is not None:
        sel &= np.asarray(valid, dtype=bool)
    if include is not None:
        sel &= np.asarray(include, dtype=bool)
    m = int(np.count_nonzero(sel))
    if m == 0:
        raise EmptySampleError("no valid included nodes to average over")
    diff = numeric[sel] - exact[sel]
    return float(np.sqrt(np.dot(diff, diff) / m))


def fit_order(dx_values, rms_values) -> tuple[float, float]:
    """OLS line through (log dx, log rms); the slope is the measured order."""
    dx_values = np.asarray(dx_values, dtype=np.float64)
    rms_values = np.asarray(rms_values, dtype=np.float64)
    if len(dx_values) != len(rms_values) or len(dx_values) < 2:
        raise ValueError("order fit needs at least two (dx, rms) pairs")
    if np.any(dx_values <= 0) or np.any(rms_values <= 0):
        raise DegenerateLogError(
            "order fit needs strictly positive spacings and rms values"
        )
    slope, intercept = np.polyfit(np.log(dx_values), np.log(rms_values), 1)
    return float(slope), float(intercept)


def _mesh_methods(config: StudyConfig):
    return [m for m in config.methods if m != Method.FD]


def _weight_for(method: Method, config: StudyConfig) -> WeightKind:
    return WeightKind.UNIFORM if method == Method.DDIN else config.weight


def _method_fields(config: StudyConfig, n: int):
    """One ladder rung: grid, include mask, and per-method results.

    Returns (grid, include, {method: (points, derivative field, exact jets)});
    the scattered methods share one perturbed node set and neighbor table,
    the FD baseline runs on the unperturbed grid.
    """
    grid = regular_grid(config.function.domain, (n, n))
    dx = grid.dx
    r_cut = config.r_frac * dx
    if config.include_boundary:
        include = np.ones(len(grid.points), dtype=bool)
    else:
        include = ~grid.boundary_mask(r_cut)

    per_method: dict[Method, tuple] = {}
    mesh = _mesh_methods(config)
    if mesh:
        nodes = perturb(grid, config.dr_frac * dx, config.seed)
        table = build_neighbor_table(nodes, r_cut)
        exact_mesh = config.function.sample(nodes.points)
        for method in mesh:
            df = derivative_field(
                nodes, table, exact_mesh[:, 0], _weight_for(method, config)
            )
            per_method[method] = (nodes.points, df, exact_mesh)
    if Method.FD in config.methods:
        exact_reg = config.function.sample(grid.points)
        df = fd_derivatives(
            exact_reg[:, 0].reshape(n, n),
            dx,
            first=config.fd_first,
            second=config.fd_second,
        )
        per_method[Method.FD] = (grid.points, df, exact_reg)
    return grid, include, per_method


def field_tables(config: StudyConfig):
    """Per-node results at the first (coarsest) configured size.

    Backs the CLI field dump: list of (method, points, derivative field,
    exact jets) in configured method order.
    """
    _, _, per_method = _method_fields(config, config.sizes[0])
    return [(m, *per_method[m]) for m in config.methods]


def _study_size(config: StudyConfig, n: int) -> list[StudyCell]:
    grid, include, per_method = _method_fields(config, n)
    dx = grid.dx
    total = len(grid.points)
    masked = total - int(np.count_nonzero(include))

    cells = []
    for method in config.methods:
        _, df, exact = per_method[method]
        for quantity in QUANTITIES_2D:
            numeric = df.column(quantity)
            valid = df.valid_column(quantity)
            exact_col = exact[:, JET_SLOTS.index(quantity)]
            used = int(np.count_nonzero(valid & include))
            failed = int(np.count_nonzero(include & ~valid))
            value = rms(numeric, exact_col, valid=valid, include=include)
            cells.append(
                StudyCell(
                    method=method,
                    quantity=quantity,
                    n=n,
                    dx=dx,
                    rms=value,
                    nodes_used=used,
                    nodes_total=total,
                    nodes_masked=masked,
                    nodes_failed=failed,
                )
            )
    return cells


def _fit_series(cells: list[StudyCell]) -> tuple[float, float] | None:
    points = [(c.dx, c.rms) for c in cells if c.rms is not None]
    if len(points) < 2 or any(r <= 0 for _, r in points):
        return None  # exact-zero series (polynomial fields) have no order
    return fit_order([p[0] for p in points], [p[1] for p in points])


def run_study(config: StudyConfig) -> StudyReport:
    """Run the full ladder; deterministic given the config."""
    cells: list[StudyCell] = []
    for n in config.sizes:
        try:
            cells.extend(_study_size(config, n))
        except NodederivError as exc:
            raise NodederivError(f"study failed at n={n}: {exc}") from exc
    fits = []
    for method in config.methods:
        for quantity in QUANTITIES_2D:
            series = [
                c for c in cells if c.method == method and c.quantity == quantity
            ]
            fitted = _fit_series(series)
            fits.append(
                StudyFit(
                    method=method,
                    quantity=quantity,
                    slope=fitted[0] if fitted else None,
                    intercept=fitted[1] if fitted else None,
                )
            )
    return StudyReport(config=config, cells=tuple(cells), fits=tuple(fits))
