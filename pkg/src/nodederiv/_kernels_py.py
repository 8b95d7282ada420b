"""Pure-NumPy kernels: cell-index neighbor search, batched stencil solves.

This is the fallback backend; `_kernels_cy` implements the same three
functions in Cython. Both share the shared-layer contracts:

* neighbor rows are sorted by node index ascending, self excluded, and the
  selection predicate is ``dist < r_cut`` evaluated on the same distance
  formula the table stores (|u| in 1D, sqrt(u*u + v*v) in 2D), so the two
  backends produce identical tables;
* stencil statuses: 0 ok, 1 insufficient neighbors, 2 degenerate
  neighborhood (Cholesky pivot below tolerance or 1-norm condition estimate
  of the normal matrix above the limit).
"""

from __future__ import annotations

import numpy as np

STATUS_OK = 0
STATUS_INSUFFICIENT = 1
STATUS_DEGENERATE = 2


def cell_neighbor_search(points: np.ndarray, r_cut: float):
    """All pairs at distance < r_cut via uniform cells of side >= r_cut.

    Returns CSR arrays (indptr int64 (N+1,), indices int64 (nnz,)).
    """
    n, dim = points.shape
    indptr = np.zeros(n + 1, dtype=np.int64)
    if n <= 1:
        return indptr, np.empty(0, dtype=np.int64)

    mins = points.min(axis=0)
    ext = points.max(axis=0) - mins
    cap = int(np.sqrt(4.0 * n)) + 1  # keeps total cell count O(N)
    ncells = np.ones(dim, dtype=np.int64)
    cell_idx = np.zeros((n, dim), dtype=np.int64)
    for a in range(dim):
        nc = min(int(ext[a] / r_cut), cap) if ext[a] > 0 else 0
        ncells[a] = max(1, nc)
        if ncells[a] > 1:
            side = ext[a] / ncells[a]  # >= r_cut since ncells <= floor(ext/r_cut)
            cell_idx[:, a] = np.clip(
                ((points[:, a] - mins[a]) / side).astype(np.int64), 0, ncells[a] - 1
            )

    ncy = int(ncells[1]) if dim == 2 else 1
    cell_id = cell_idx[:, 0] * ncy + (cell_idx[:, 1] if dim == 2 else 0)
    ntot = int(ncells.prod())
    counts = np.bincount(cell_id, minlength=ntot)
    starts = np.zeros(ntot + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    by_cell = np.argsort(cell_id, kind="stable")  # within a cell: index ascending

    ii_parts: list[np.ndarray] = []
    jj_parts: list[np.ndarray] = []
    deltas = range(-1, 2)
    for c in np.flatnonzero(counts):
        members = by_cell[starts[c] : starts[c + 1]]
        cx, cy = divmod(int(c), ncy)
        cand_parts = []
        for dcx in deltas:
            ccx = cx + dcx
            if not 0 <= ccx < ncells[0]:
                continue
            for dcy in deltas if dim == 2 else (0,):
                ccy = cy + dcy
                if not 0 <= ccy < ncy:
                    continue
                cc = ccx * ncy + ccy
                if counts[cc]:
                    cand_parts.append(by_cell[starts[cc] : starts[cc + 1]])
        cand = np.concatenate(cand_parts)
        u = points[cand, 0][None, :] - points[members, 0][:, None]
        if dim == 2:
            v = points[cand, 1][None, :] - points[members, 1][:, None]
            d = np.sqrt(u * u + v * v)
        else:
            d = np.abs(u)
        mask = (d < r_cut) & (cand[None, :] != members[:, None])
        mi, ci = np.nonzero(mask)
        ii_parts.append(members[mi])
        jj_parts.append(cand[ci])

    ii = np.concatenate(ii_parts)
    jj = np.concatenate(jj_parts)
    order = np.lexsort((jj, ii))
    indices = jj[order]
    np.cumsum(np.bincount(ii, minlength=n), out=indptr[1:])
    return indptr, indices


def _design_matrix(offsets: np.ndarray, dim: int) -> np.ndarray:
    u = offsets[:, 0]
    if dim == 1:
        return np.column_stack([u, u * u])
    v = offsets[:, 1]
    return np.column_stack([u, v, u * u, u * v, v * v])


def build_stencils(
    offsets: np.ndarray,
    dists: np.ndarray,
    indptr: np.ndarray,
    dim: int,
    weight_kind: int,
    r_cut: float,
    cond_limit: float,
    pivot_rtol: float,
):
    """Solve the weighted normal system at every node, vectorized over nodes.

    Returns (coeffs (nnz, m), cond (N,), status (N,), wmin (N,), wmax (N,)).
    ``coeffs[k, s]`` maps the field difference of CSR entry k into solved
    unknown s; rows of failed nodes are zero.
    """
    n = len(indptr) - 1
    m = 2 if dim == 1 else 5
    nnz = len(dists)
    counts = np.diff(indptr)
    owner = np.repeat(np.arange(n, dtype=np.int64), counts)

    A = _design_matrix(offsets, dim)
    if weight_kind == 0:
        w = np.ones(nnz)
    else:
        w = r_cut / dists - 1.0
    wA = w[:, None] * A

    wmin = np.full(n, np.nan)
    wmax = np.full(n, np.nan)
    have = counts > 0
    acc = np.full(n, np.inf)
    np.minimum.at(acc, owner, w)
    wmin[have] = acc[have]
    acc = np.full(n, -np.inf)
    np.maximum.at(acc, owner, w)
    wmax[have] = acc[have]

    M = np.empty((n, m, m))
    for s in range(m):
        for t in range(s, m):
            val = np.bincount(owner, weights=wA[:, s] * A[:, t], minlength=n)
            M[:, s, t] = val
            M[:, t, s] = val

    status = np.zeros(n, dtype=np.uint8)
    status[counts < m] = STATUS_INSUFFICIENT
    alive = status == STATUS_OK

    rng = np.arange(m)
    tol = pivot_rtol * M[:, rng, rng].max(axis=1)
    L = np.zeros_like(M)
    degenerate = np.zeros(n, dtype=bool)
    for c in range(m):
        p = M[:, c, c].copy()
        for k in range(c):
            p -= L[:, c, k] * L[:, c, k]
        bad = alive & ~(p > tol)
        degenerate |= bad
        alive &= ~bad
        L[:, c, c] = np.sqrt(np.where(alive, p, 1.0))
        for r in range(c + 1, m):
            s_ = M[:, r, c].copy()
            for k in range(c):
                s_ -= L[:, r, k] * L[:, c, k]
            L[:, r, c] = np.where(alive, s_ / L[:, c, c], 0.0)

    # invert via the factor: L Y = I, then L^T X = Y
    Y = np.zeros_like(M)
    X = np.zeros_like(M)
    for s in range(m):
        for r in range(m):
            acc = np.full(n, 1.0 if r == s else 0.0)
            for k in range(r):
                acc = acc - L[:, r, k] * Y[:, k, s]
            Y[:, r, s] = acc / L[:, r, r]
        for r in range(m - 1, -1, -1):
            acc = Y[:, r, s].copy()
            for k in range(r + 1, m):
                acc -= L[:, k, r] * X[:, k, s]
            X[:, r, s] = acc / L[:, r, r]

    norm1_M = np.abs(M).sum(axis=1).max(axis=1)
    norm1_inv = np.abs(X).sum(axis=1).max(axis=1)
    cond = np.where(status == STATUS_INSUFFICIENT, np.nan, norm1_M * norm1_inv)
    cond[degenerate] = np.inf
    status[degenerate] = STATUS_DEGENERATE
    over = (status == STATUS_OK) & (cond > cond_limit)
    status[over] = STATUS_DEGENERATE

    coeffs = np.zeros((nnz, m))
    ok_entry = status[owner] == STATUS_OK
    for s in range(m):
        col = np.zeros(nnz)
        for t in range(m):
            col += X[owner, s, t] * wA[:, t]
        coeffs[:, s] = np.where(ok_entry, col, 0.0)
    return coeffs, cond, status, wmin, wmax


def apply_stencils(
    coeffs: np.ndarray,
    indptr: np.ndarray,
    indices: np.ndarray,
    status: np.ndarray,
    field: np.ndarray,
) -> np.ndarray:
    """Contract stencil coefficients with neighbor field differences.

    Returns the raw solved unknowns (N, m); rows of failed nodes are NaN.
    """
    n = len(indptr) - 1
    m = coeffs.shape[1]
    counts = np.diff(indptr)
    owner = np.repeat(np.arange(n, dtype=np.int64), counts)
    dphi = field[indices] - field[owner]
    out = np.empty((n, m))
    for s in range(m):
        out[:, s] = np.bincount(owner, weights=coeffs[:, s] * dphi, minlength=n)
    out[status != STATUS_OK] = np.nan
    return out
