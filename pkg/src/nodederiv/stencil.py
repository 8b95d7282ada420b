"""Weighted least-squares Taylor stencils on scattered nodes.

At node i with neighbors j, the field differences are modeled by a
second-order Taylor expansion

    phi_j - phi_i ~= a(r_j - r_i) . z

with design row a(u) = (u, u^2) in 1D or a(u, v) = (u, v, u^2, uv, v^2) in
2D, and unknowns z = (phi_x, 1/2 phi_xx) or
(phi_x, phi_y, 1/2 phi_xx, phi_xy, 1/2 phi_yy). The weighted normal system
(A^T W A) z = A^T W d is solved per node; the coefficient matrix
C = (A^T W A)^-1 A^T W maps differences straight to the unknowns. Public
jets report true derivatives, i.e. the half-factor slots are doubled.

Degenerate neighborhoods (collinear nodes and the like) are rejected by a
Cholesky pivot guard plus a 1-norm condition estimate of the normal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import (
    CoincidentNodeError,
    DegenerateNeighborhoodError,
    InsufficientNeighborsError,
)
from .neighbors import NeighborTable
from .weighting import WeightKind, weights

#: Reject a stencil when cond_1(A^T W A) exceeds this.
COND_LIMIT = 1e12
#: Reject when a Cholesky pivot falls below PIVOT_RTOL * max diagonal.
PIVOT_RTOL = 1e-14

#: Derivative quantities in storage order, by dimension.
QUANTITIES_1D = ("fx", "fxx")
QUANTITIES_2D = ("fx", "fy", "fxx", "fxy", "fyy")

#: Per-node solve status codes.
STATUS_OK = 0
STATUS_INSUFFICIENT = 1
STATUS_DEGENERATE = 2


def design_row(dim: int, offset) -> np.ndarray:
    """Monomial row of the Taylor system for one neighbor offset."""
    offset = np.asarray(offset, dtype=np.float64).reshape(-1)
    if offset.shape[0] != dim:
        raise ValueError(f"offset has {offset.shape[0]} components, expected {dim}")
    if not offset.any():
        raise CoincidentNodeError("zero offset: neighbor coincides with center")
    if dim == 1:
        u = offset[0]
        return np.array([u, u * u])
    u, v = offset
    return np.array([u, v, u * u, u * v, v * v])


@dataclass(frozen=True, eq=False)
class StencilCoefficients:
    """Solved difference-to-unknowns map for one node.

    ``coeffs`` has shape (m, J): row s gives the weights turning the J
    neighbor differences into solved unknown s (half-factor slots included,
    i.e. rows are ordered as the z vector above, not the public jet).
    """

    center: int
    indices: np.ndarray  # (J,) neighbor node indices
    coeffs: np.ndarray  # (m, J)
    cond: float  # 1-norm condition estimate of A^T W A
    weights: np.ndarray  # (J,) weights used in the solve

    def __post_init__(self):
        for arr in (self.indices, self.coeffs, self.weights):
            arr.setflags(write=False)

    @property
    def n_neighbors(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class DerivativeJet:
    """True derivatives at one node (half-factors already doubled)."""

    dx_val: float
    dxx_val: float
    dy_val: float | None = None
    dxy_val: float | None = None
    dyy_val: float | None = None

    def as_array(self) -> np.ndarray:
        if self.dy_val is None:
            return np.array([self.dx_val, self.dxx_val])
        return np.array(
            [self.dx_val, self.dy_val, self.dxx_val, self.dxy_val, self.dyy_val]
        )


@dataclass(frozen=True, eq=False)
class ConditionReport:
    """Diagnostics of one built stencil."""

    center: int
    n_neighbors: int
    cond: float
    weight_min: float
    weight_max: float


@dataclass(frozen=True, eq=False)
class DerivativeField:
    """Per-node derivative estimates with validity flags.

    ``values`` columns follow `quantities()`: (fx, fxx) in 1D,
    (fx, fy, fxx, fxy, fyy) in 2D. A node is valid for a quantity when the
    corresponding ``valid`` entry is set; invalid entries hold NaN.
    ``status`` carries the per-node solve status (always 0 for the
    finite-difference baseline, whose validity is per quantity instead).
    """

    dim: int
    values: np.ndarray  # (N, P) float64
    valid: np.ndarray  # (N, P) bool
    status: np.ndarray = field(default=None)  # (N,) uint8

    def __post_init__(self):
        if self.status is None:
            object.__setattr__(
                self, "status", np.zeros(len(self.values), dtype=np.uint8)
            )
        for arr in (self.values, self.valid, self.status):
            arr.setflags(write=False)

    def quantities(self) -> tuple[str, ...]:
        return QUANTITIES_1D if self.dim == 1 else QUANTITIES_2D

    def column(self, quantity: str) -> np.ndarray:
        return self.values[:, self.quantities().index(quantity)]

    def valid_column(self, quantity: str) -> np.ndarray:
        return self.valid[:, self.quantities().index(quantity)]


def _check_distances(dists: np.ndarray):
    if np.any(dists == 0.0):
        raise CoincidentNodeError("zero distance between distinct nodes")


def build_stencil(
    center: int, table: NeighborTable, weight_kind: WeightKind
) -> StencilCoefficients:
    """Assemble and solve the normal system at one node.

    Raises InsufficientNeighborsError when the neighbor count is below the
    number of unknowns and DegenerateNeighborhoodError when the guard trips.
    """
    idx, offs, dist = table.row(center)
    m = 2 if table.dim == 1 else 5
    _check_distances(dist)
    if len(idx) < m:
        raise InsufficientNeighborsError(node=center, found=len(idx), needed=m)
    coeffs, cond, status, _, _ = _backend.build_stencils(
        np.ascontiguousarray(offs),
        np.ascontiguousarray(dist),
        np.array([0, len(idx)], dtype=np.int64),
        table.dim,
        int(weight_kind),
        table.r_cut,
        COND_LIMIT,
        PIVOT_RTOL,
    )
    if status[0] == STATUS_DEGENERATE:
        raise DegenerateNeighborhoodError(node=center, cond=float(cond[0]))
    return StencilCoefficients(
        center=int(center),
        indices=idx.copy(),
        coeffs=np.ascontiguousarray(coeffs.T),
        cond=float(cond[0]),
        weights=weights(weight_kind, dist, table.r_cut),
    )


def apply_stencil(stencil: StencilCoefficients, field_values) -> DerivativeJet:
    """Contract one stencil with a per-node field array."""
    field_values = np.asarray(field_values, dtype=np.float64)
    dphi = field_values[stencil.indices] - field_values[stencil.center]
    raw = stencil.coeffs @ dphi
    if len(raw) == 2:
        return DerivativeJet(dx_val=float(raw[0]), dxx_val=float(2.0 * raw[1]))
    return DerivativeJet(
        dx_val=float(raw[0]),
        dy_val=float(raw[1]),
        dxx_val=float(2.0 * raw[2]),
        dxy_val=float(raw[3]),
        dyy_val=float(2.0 * raw[4]),
    )


def _scale_raw(raw: np.ndarray, dim: int) -> np.ndarray:
    """Double the half-factor slots, mapping solved unknowns to derivatives."""
    out = raw.copy()
    if dim == 1:
        out[:, 1] *= 2.0
    else:
        out[:, 2] *= 2.0
        out[:, 4] *= 2.0
    return out


def derivative_field(
    nodes, table: NeighborTable, field_values, weight_kind: WeightKind
) -> DerivativeField:
    """Estimate the derivative jet at every node of a set.

    Nodes whose solve fails (too few neighbors, degenerate neighborhood)
    carry a nonzero status and NaN values rather than aborting the batch.
    """
    points = getattr(nodes, "points", nodes)
    field_values = np.ascontiguousarray(field_values, dtype=np.float64)
    if len(field_values) != len(points) or table.n_nodes != len(points):
        raise ValueError(
            "nodes, neighbor table and field must describe the same node count"
        )
    _check_distances(table.dists)
    coeffs, cond, status, _, _ = _backend.build_stencils(
        table.offsets,
        table.dists,
        table.indptr,
        table.dim,
        int(weight_kind),
        table.r_cut,
        COND_LIMIT,
        PIVOT_RTOL,
    )
    raw = _backend.apply_stencils(
        coeffs, table.indptr, table.indices, status, field_values
    )
    values = _scale_raw(raw, table.dim)
    ok = status == STATUS_OK
    valid = np.repeat(ok[:, None], values.shape[1], axis=1)
    return DerivativeField(dim=table.dim, values=values, valid=valid, status=status)


def diagnostics(stencil: StencilCoefficients) -> ConditionReport:
    """Neighbor count, condition estimate and weight range of a stencil."""
    return ConditionReport(
        center=stencil.center,
        n_neighbors=stencil.n_neighbors,
        cond=stencil.cond,
        weight_min=float(stencil.weights.min()),
        weight_max=float(stencil.weights.max()),
    )
