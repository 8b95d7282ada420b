"""Fixed-radius neighbor tables in CSR form.

`build_neighbor_table` uses a uniform cell index (side >= r_cut, so only
adjacent cells need checking); `brute_force_neighbors` is the all-pairs
oracle used to validate it. Both return identical tables: entries are the
nodes at distance strictly less than ``r_cut``, self excluded, each row
sorted by neighbor index ascending. Offsets and distances are derived from
the index arrays in one shared place so the two construction routes (and
both kernel backends) agree bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import InvalidRadiusError


@dataclass(frozen=True, eq=False)
class NeighborTable:
    """CSR neighbor lists: row i holds the neighbors of node i.

    offsets[k] = points[indices[k]] - points[owner of k] and
    dists[k] = |offsets[k]| < r_cut (strict).
    """

    r_cut: float
    indptr: np.ndarray  # (N+1,) int64
    indices: np.ndarray  # (nnz,) int64
    offsets: np.ndarray  # (nnz, dim) float64
    dists: np.ndarray  # (nnz,) float64

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.offsets, self.dists):
            arr.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def dim(self) -> int:
        return self.offsets.shape[1]

    def counts(self) -> np.ndarray:
        """Number of neighbors per node."""
        return np.diff(self.indptr)

    def row(self, i: int):
        """(indices, offsets, dists) views for node i's neighbor list."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.offsets[lo:hi], self.dists[lo:hi]


def _points_of(nodes) -> np.ndarray:
    pts = getattr(nodes, "points", nodes)
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] not in (1, 2):
        raise ValueError(f"expected points of shape (N, 1) or (N, 2), got {pts.shape}")
    return pts


def _check_radius(r_cut: float) -> float:
    r_cut = float(r_cut)
    if not np.isfinite(r_cut) or r_cut <= 0.0:
        raise InvalidRadiusError(f"cutoff radius must be positive, got {r_cut}")
    return r_cut


def _distances(offsets: np.ndarray) -> np.ndarray:
    # same expression the search kernels evaluate, so `< r_cut` holds bitwise
    if offsets.shape[1] == 1:
        return np.abs(offsets[:, 0])
    return np.sqrt(offsets[:, 0] * offsets[:, 0] + offsets[:, 1] * offsets[:, 1])


def _assemble(points, r_cut, indptr, indices) -> NeighborTable:
    owner = np.repeat(np.arange(len(points), dtype=np.int64), np.diff(indptr))
    offsets = points[indices] - points[owner]
    return NeighborTable(
        r_cut=r_cut,
        indptr=indptr,
        indices=indices,
        offsets=offsets,
        dists=_distances(offsets),
    )


def build_neighbor_table(nodes, r_cut: float) -> NeighborTable:
    """Cell-index search for all pairs at distance < r_cut."""
    points = _points_of(nodes)
    r_cut = _check_radius(r_cut)
    indptr, indices = _backend.cell_neighbor_search(points, r_cut)
    return _assemble(points, r_cut, indptr, indices)


def brute_force_neighbors(nodes, r_cut: float) -> NeighborTable:
    """All-pairs reference search; the oracle build_neighbor_table must match."""
    points = _points_of(nodes)
    r_cut = _check_radius(r_cut)
    n = len(points)
    u = points[None, :, 0] - points[:, None, 0]
    if points.shape[1] == 1:
        d = np.abs(u)
    else:
        v = points[None, :, 1] - points[:, None, 1]
        d = np.sqrt(u * u + v * v)
    close = d < r_cut
    np.fill_diagonal(close, False)
    ii, jj = np.nonzero(close)  # row-major: sorted by (i, j) ascending
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(ii, minlength=n), out=indptr[1:])
    return _assemble(points, r_cut, indptr, jj.astype(np.int64))
