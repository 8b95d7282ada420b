"""Per-neighbor weights: uniform (unweighted) or the MPS kernel r/d - 1."""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from .errors import SingularWeightError


class WeightKind(IntEnum):
    """Weight applied to each neighbor row of the least-squares system."""

    UNIFORM = 0
    MPS = 1


#: CSV / CLI labels.
WEIGHT_LABELS = {WeightKind.UNIFORM: "none", WeightKind.MPS: "mps"}


def weight(kind: WeightKind, dist: float, r_cut: float) -> float:
    """Weight of a neighbor at distance ``dist`` under cutoff ``r_cut``.

    Uniform: 1 inside the cutoff. MPS: r_cut/dist - 1, which decreases to 0
    at the cutoff. Outside (dist >= r_cut) both are 0. A zero distance means
    two distinct nodes coincide and is rejected rather than capped.
    """
    if dist == 0.0:
        raise SingularWeightError(
            "zero distance between distinct nodes (coincident nodes?)"
        )
    if not dist < r_cut:
        return 0.0
    if kind == WeightKind.UNIFORM:
        return 1.0
    return r_cut / dist - 1.0


def weights(kind: WeightKind, dists: np.ndarray, r_cut: float) -> np.ndarray:
    """Vectorized `weight` over a distance array (all inside the cutoff)."""
    dists = np.asarray(dists, dtype=np.float64)
    if np.any(dists == 0.0):
        raise SingularWeightError(
            "zero distance between distinct nodes (coincident nodes?)"
        )
    if kind == WeightKind.UNIFORM:
        return np.where(dists < r_cut, 1.0, 0.0)
    return np.where(dists < r_cut, r_cut / dists - 1.0, 0.0)
