"""Classical finite differences on an unperturbed 2D grid.

Serves as the reference method next to the scattered-node stencils. The
field comes in as an (nx, ny) array over a uniform grid of spacing dx in
both axes; derivatives are returned as a flat `DerivativeField` in the same
node order as `NodeSet` (x-index slow, y-index fast).

Two second-derivative schemes are provided: the central one,
(u_{i+1} - 2 u_i + u_{i-1}) / dx^2, and the one-sided
(u_i - 2 u_{i-1} + u_{i-2}) / dx^2, which despite occasionally being
credited with second order converges at first order; the study harness
measures both. Nodes where a scheme would reach outside the grid are
marked invalid, never extrapolated.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import InsufficientGridError
from .stencil import DerivativeField


class FdScheme(Enum):
    CENTRAL_FIRST = "central_first"
    FORWARD_FIRST = "forward_first"
    BACKWARD_FIRST = "backward_first"
    CENTRAL_SECOND = "central_second"
    ONESIDED_SECOND = "onesided_second"


FIRST_SCHEMES = (
    FdScheme.CENTRAL_FIRST,
    FdScheme.FORWARD_FIRST,
    FdScheme.BACKWARD_FIRST,
)
SECOND_SCHEMES = (FdScheme.CENTRAL_SECOND, FdScheme.ONESIDED_SECOND)


def fd_derivatives(
    grid_field,
    dx: float,
    first: FdScheme = FdScheme.CENTRAL_FIRST,
    second: FdScheme = FdScheme.CENTRAL_SECOND,
) -> DerivativeField:
    """All five derivative quantities of a gridded field.

    ``first`` picks the x/y first-derivative scheme, ``second`` the
    fxx/fyy scheme; fxy is always the nested central difference.
    """
    F = np.asarray(grid_field, dtype=np.float64)
    if F.ndim != 2:
        raise ValueError(f"expected a 2D grid field, got shape {F.shape}")
    nx, ny = F.shape
    if nx < 3 or ny < 3:
        raise InsufficientGridError(
            f"grid {nx}x{ny} too small: need at least 3 nodes per axis"
        )
    dx = float(dx)
    if not dx > 0.0:
        raise ValueError(f"spacing must be positive, got {dx}")
    if first not in FIRST_SCHEMES:
        raise ValueError(f"{first} is not a first-derivative scheme")
    if second not in SECOND_SCHEMES:
        raise ValueError(f"{second} is not a second-derivative scheme")

    fx = np.full((nx, ny), np.nan)
    fy = np.full((nx, ny), np.nan)
    fxx = np.full((nx, ny), np.nan)
    fxy = np.full((nx, ny), np.nan)
    fyy = np.full((nx, ny), np.nan)
    vfx = np.zeros((nx, ny), dtype=bool)
    vfy = np.zeros((nx, ny), dtype=bool)
    vfxx = np.zeros((nx, ny), dtype=bool)
    vfxy = np.zeros((nx, ny), dtype=bool)
    vfyy = np.zeros((nx, ny), dtype=bool)

    if first == FdScheme.CENTRAL_FIRST:
        fx[1:-1, :] = (F[2:, :] - F[:-2, :]) / (2.0 * dx)
        fy[:, 1:-1] = (F[:, 2:] - F[:, :-2]) / (2.0 * dx)
        vfx[1:-1, :] = True
        vfy[:, 1:-1] = True
    elif first == FdScheme.FORWARD_FIRST:
        fx[:-1, :] = (F[1:, :] - F[:-1, :]) / dx
        fy[:, :-1] = (F[:, 1:] - F[:, :-1]) / dx
        vfx[:-1, :] = True
        vfy[:, :-1] = True
    else:  # backward: same divided differences as forward, shifted one node
        fx[1:, :] = (F[1:, :] - F[:-1, :]) / dx
        fy[:, 1:] = (F[:, 1:] - F[:, :-1]) / dx
        vfx[1:, :] = True
        vfy[:, 1:] = True

    d2x = (F[2:, :] - 2.0 * F[1:-1, :] + F[:-2, :]) / (dx * dx)
    d2y = (F[:, 2:] - 2.0 * F[:, 1:-1] + F[:, :-2]) / (dx * dx)
    if second == FdScheme.CENTRAL_SECOND:
        fxx[1:-1, :] = d2x
        fyy[:, 1:-1] = d2y
        vfxx[1:-1, :] = True
        vfyy[:, 1:-1] = True
    else:  # one-sided: identical numerator, attributed to the trailing node
        fxx[2:, :] = d2x
        fyy[:, 2:] = d2y
        vfxx[2:, :] = True
        vfyy[:, 2:] = True

    gx = (F[2:, :] - F[:-2, :]) / (2.0 * dx)
    fxy[1:-1, 1:-1] = (gx[:, 2:] - gx[:, :-2]) / (2.0 * dx)
    vfxy[1:-1, 1:-1] = True

    values = np.column_stack(
        [fx.ravel(), fy.ravel(), fxx.ravel(), fxy.ravel(), fyy.ravel()]
    )
    valid = np.column_stack(
        [vfx.ravel(), vfy.ravel(), vfxx.ravel(), vfxy.ravel(), vfyy.ravel()]
    )
    return DerivativeField(dim=2, values=values, valid=valid)
