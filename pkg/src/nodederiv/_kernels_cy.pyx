# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; mirrors `_kernels_py` function for function.

Accumulation orders match the NumPy fallback (neighbor entries in CSR
order, unknowns in column order) so the two backends agree to rounding;
the neighbor tables themselves are identical because the selection
predicate is evaluated on the same distance expression, compiled without
FP contraction.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, NAN, fabs, sqrt

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8

STATUS_OK = 0
STATUS_INSUFFICIENT = 1
STATUS_DEGENERATE = 2


def cell_neighbor_search(const double[:, ::1] points, double r_cut):
    """All pairs at distance < r_cut via uniform cells of side >= r_cut.

    Returns CSR arrays (indptr int64 (N+1,), indices int64 (nnz,)).
    """
    cdef Py_ssize_t n = points.shape[0]
    cdef int dim = <int> points.shape[1]
    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] indptr = indptr_arr
    if n <= 1:
        return indptr_arr, np.empty(0, dtype=np.int64)

    cdef double xmin = points[0, 0], xmax = points[0, 0]
    cdef double ymin = 0.0, ymax = 0.0
    cdef Py_ssize_t i, j, k, a, b
    if dim == 2:
        ymin = points[0, 1]
        ymax = points[0, 1]
    for i in range(1, n):
        if points[i, 0] < xmin:
            xmin = points[i, 0]
        elif points[i, 0] > xmax:
            xmax = points[i, 0]
        if dim == 2:
            if points[i, 1] < ymin:
                ymin = points[i, 1]
            elif points[i, 1] > ymax:
                ymax = points[i, 1]

    cdef i64 cap = <i64> sqrt(4.0 * n) + 1
    cdef i64 ncx = 1, ncy = 1
    cdef double sidex = 0.0, sidey = 0.0
    if xmax > xmin:
        ncx = <i64> ((xmax - xmin) / r_cut)
        if ncx > cap:
            ncx = cap
        if ncx < 1:
            ncx = 1
        sidex = (xmax - xmin) / ncx
    if dim == 2 and ymax > ymin:
        ncy = <i64> ((ymax - ymin) / r_cut)
        if ncy > cap:
            ncy = cap
        if ncy < 1:
            ncy = 1
        sidey = (ymax - ymin) / ncy

    cell_id_arr = np.empty(n, dtype=np.int64)
    counts_arr = np.zeros(ncx * ncy + 1, dtype=np.int64)
    cdef i64[::1] cell_id = cell_id_arr
    cdef i64[::1] cell_start = counts_arr  # becomes prefix sums below
    cdef i64 cx, cy, c
    for i in range(n):
        cx = 0
        cy = 0
        if ncx > 1:
            cx = <i64> ((points[i, 0] - xmin) / sidex)
            if cx > ncx - 1:
                cx = ncx - 1
        if ncy > 1:
            cy = <i64> ((points[i, 1] - ymin) / sidey)
            if cy > ncy - 1:
                cy = ncy - 1
        c = cx * ncy + cy
        cell_id[i] = c
        cell_start[c + 1] += 1
    for c in range(1, ncx * ncy + 1):
        cell_start[c] += cell_start[c - 1]

    by_cell_arr = np.empty(n, dtype=np.int64)
    cursor_arr = counts_arr[:ncx * ncy].copy()
    cdef i64[::1] by_cell = by_cell_arr
    cdef i64[::1] cursor = cursor_arr
    for i in range(n):  # ascending i => within a cell: index ascending
        c = cell_id[i]
        by_cell[cursor[c]] = i
        cursor[c] += 1

    # first sweep counts, second fills
    cdef double x, y, u, v, d
    cdef i64 dcx, dcy, ccx, ccy, cnt, pos, key
    cdef i64 dylo = -1 if dim == 2 else 0
    cdef i64 dyhi = 2 if dim == 2 else 1
    for i in range(n):
        x = points[i, 0]
        y = points[i, 1] if dim == 2 else 0.0
        cx = cell_id[i] // ncy
        cy = cell_id[i] % ncy
        cnt = 0
        for dcx in range(-1, 2):
            ccx = cx + dcx
            if ccx < 0 or ccx >= ncx:
                continue
            for dcy in range(dylo, dyhi):
                ccy = cy + dcy
                if ccy < 0 or ccy >= ncy:
                    continue
                c = ccx * ncy + ccy
                for k in range(cell_start[c], cell_start[c + 1]):
                    j = by_cell[k]
                    if j == i:
                        continue
                    u = points[j, 0] - x
                    if dim == 2:
                        v = points[j, 1] - y
                        d = sqrt(u * u + v * v)
                    else:
                        d = fabs(u)
                    if d < r_cut:
                        cnt += 1
        indptr[i + 1] = cnt
    for i in range(n):
        indptr[i + 1] += indptr[i]

    indices_arr = np.empty(indptr[n], dtype=np.int64)
    cdef i64[::1] indices = indices_arr
    for i in range(n):
        x = points[i, 0]
        y = points[i, 1] if dim == 2 else 0.0
        cx = cell_id[i] // ncy
        cy = cell_id[i] % ncy
        pos = indptr[i]
        for dcx in range(-1, 2):
            ccx = cx + dcx
            if ccx < 0 or ccx >= ncx:
                continue
            for dcy in range(dylo, dyhi):
                ccy = cy + dcy
                if ccy < 0 or ccy >= ncy:
                    continue
                c = ccx * ncy + ccy
                for k in range(cell_start[c], cell_start[c + 1]):
                    j = by_cell[k]
                    if j == i:
                        continue
                    u = points[j, 0] - x
                    if dim == 2:
                        v = points[j, 1] - y
                        d = sqrt(u * u + v * v)
                    else:
                        d = fabs(u)
                    if d < r_cut:
                        indices[pos] = j
                        pos += 1
        # insertion sort the row ascending
        for a in range(indptr[i] + 1, indptr[i + 1]):
            key = indices[a]
            b = a - 1
            while b >= indptr[i] and indices[b] > key:
                indices[b + 1] = indices[b]
                b -= 1
            indices[b + 1] = key
    return indptr_arr, indices_arr


def build_stencils(const double[:, ::1] offsets, const double[::1] dists, const i64[::1] indptr,
                   int dim, int weight_kind, double r_cut,
                   double cond_limit, double pivot_rtol):
    """Solve the weighted normal system at every node.

    Returns (coeffs (nnz, m), cond (N,), status (N,), wmin (N,), wmax (N,)).
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t nnz = dists.shape[0]
    cdef int m = 2 if dim == 1 else 5
    coeffs_arr = np.zeros((nnz, m))
    cond_arr = np.full(n, np.nan)
    status_arr = np.zeros(n, dtype=np.uint8)
    wmin_arr = np.full(n, np.nan)
    wmax_arr = np.full(n, np.nan)
    cdef double[:, ::1] coeffs = coeffs_arr
    cdef double[::1] cond = cond_arr
    cdef u8[::1] status = status_arr
    cdef double[::1] wmin = wmin_arr
    cdef double[::1] wmax = wmax_arr

    cdef double a[5]
    cdef double M[25]
    cdef double L[25]
    cdef double Y[25]
    cdef double X[25]
    cdef Py_ssize_t i, k, lo, hi
    cdef int s, t, r, c, J
    cdef double u, v, w, wa, wmn, wmx, maxdiag, tol, p, acc
    cdef double colsum, norm_m, norm_inv, c1
    cdef bint failed

    for i in range(n):
        lo = indptr[i]
        hi = indptr[i + 1]
        J = <int> (hi - lo)
        if J > 0:
            wmn = INFINITY
            wmx = -INFINITY
            for k in range(lo, hi):
                w = 1.0 if weight_kind == 0 else r_cut / dists[k] - 1.0
                if w < wmn:
                    wmn = w
                if w > wmx:
                    wmx = w
            wmin[i] = wmn
            wmax[i] = wmx
        if J < m:
            status[i] = STATUS_INSUFFICIENT
            continue

        for s in range(m * m):
            M[s] = 0.0
        for k in range(lo, hi):
            u = offsets[k, 0]
            if dim == 1:
                a[0] = u
                a[1] = u * u
            else:
                v = offsets[k, 1]
                a[0] = u
                a[1] = v
                a[2] = u * u
                a[3] = u * v
                a[4] = v * v
            w = 1.0 if weight_kind == 0 else r_cut / dists[k] - 1.0
            for s in range(m):
                wa = w * a[s]
                for t in range(s, m):
                    M[s * m + t] += wa * a[t]
        for s in range(m):
            for t in range(s + 1, m):
                M[t * m + s] = M[s * m + t]

        maxdiag = M[0]
        for s in range(1, m):
            if M[s * m + s] > maxdiag:
                maxdiag = M[s * m + s]
        tol = pivot_rtol * maxdiag

        failed = False
        for c in range(m):
            p = M[c * m + c]
            for k in range(c):
                p -= L[c * m + k] * L[c * m + k]
            if not p > tol:
                failed = True
                break
            L[c * m + c] = sqrt(p)
            for r in range(c + 1, m):
                acc = M[r * m + c]
                for k in range(c):
                    acc -= L[r * m + k] * L[c * m + k]
                L[r * m + c] = acc / L[c * m + c]
        if failed:
            status[i] = STATUS_DEGENERATE
            cond[i] = INFINITY
            continue

        # invert via the factor: L Y = I, then L^T X = Y
        for s in range(m):
            for r in range(m):
                acc = 1.0 if r == s else 0.0
                for k in range(r):
                    acc -= L[r * m + k] * Y[k * m + s]
                Y[r * m + s] = acc / L[r * m + r]
            for r in range(m - 1, -1, -1):
                acc = Y[r * m + s]
                for k in range(r + 1, m):
                    acc -= L[k * m + r] * X[k * m + s]
                X[r * m + s] = acc / L[r * m + r]

        norm_m = 0.0
        norm_inv = 0.0
        for t in range(m):
            colsum = 0.0
            for r in range(m):
                colsum += fabs(M[r * m + t])
            if colsum > norm_m:
                norm_m = colsum
            colsum = 0.0
            for r in range(m):
                colsum += fabs(X[r * m + t])
            if colsum > norm_inv:
                norm_inv = colsum
        c1 = norm_m * norm_inv
        cond[i] = c1
        if c1 > cond_limit:
            status[i] = STATUS_DEGENERATE
            continue

        for k in range(lo, hi):
            u = offsets[k, 0]
            if dim == 1:
                a[0] = u
                a[1] = u * u
            else:
                v = offsets[k, 1]
                a[0] = u
                a[1] = v
                a[2] = u * u
                a[3] = u * v
                a[4] = v * v
            w = 1.0 if weight_kind == 0 else r_cut / dists[k] - 1.0
            for s in range(m):
                acc = 0.0
                for t in range(m):
                    acc += X[s * m + t] * (w * a[t])
                coeffs[k, s] = acc
    return coeffs_arr, cond_arr, status_arr, wmin_arr, wmax_arr


def apply_stencils(const double[:, ::1] coeffs, const i64[::1] indptr, const i64[::1] indices,
                   const u8[::1] status, const double[::1] field):
    """Contract stencil coefficients with neighbor field differences.

    Returns the raw solved unknowns (N, m); rows of failed nodes are NaN.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int m = <int> coeffs.shape[1]
    out_arr = np.empty((n, m))
    cdef double[:, ::1] out = out_arr
    cdef double acc[5]
    cdef double phi_i, dphi
    cdef Py_ssize_t i, k
    cdef int s
    for i in range(n):
        if status[i] != STATUS_OK:
            for s in range(m):
                out[i, s] = NAN
            continue
        phi_i = field[i]
        for s in range(m):
            acc[s] = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            dphi = field[indices[k]] - phi_i
            for s in range(m):
                acc[s] += coeffs[k, s] * dphi
        for s in range(m):
            out[i, s] = acc[s]
    return out_arr
