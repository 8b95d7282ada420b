"""Timing comparison of the compiled kernels against the NumPy fallback.

Runs neighbor search, stencil construction and stencil application on
perturbed grids of increasing size and prints per-stage wall times for
both backends plus the speedup. The two implementations produce
bit-identical output (the test suite enforces this), so this script is
purely about throughput.

Usage: python benchmarks/bench_backends.py [--sizes 51,101,201] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import nodederiv
from nodederiv import _kernels_py
from nodederiv.stencil import COND_LIMIT, PIVOT_RTOL

try:
    from nodederiv import _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(repeat, fn, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_size(n: int, repeat: int) -> list[tuple[str, float, float]]:
    grid = nodederiv.regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (n, n))
    nodes = nodederiv.perturb(grid, 0.25 * grid.dx, seed=42)
    r = 2.5 * grid.dx
    pts = np.ascontiguousarray(nodes.points)
    table = nodederiv.build_neighbor_table(nodes, r)
    field = np.ascontiguousarray(nodederiv.power().sample(nodes.points)[:, 0])

    solve_args = (table.offsets, table.dists, table.indptr, 2, 1, r,
                  COND_LIMIT, PIVOT_RTOL)
    coeffs, _, status, _, _ = _kernels_py.build_stencils(*solve_args)
    apply_args = (coeffs, table.indptr, table.indices, status, field)

    rows = []
    for stage, args in (
        ("search", (pts, r)),
        ("solve", solve_args),
        ("apply", apply_args),
    ):
        fn_py = getattr(_kernels_py, _STAGE_FN[stage])
        t_py, _ = best_of(repeat, fn_py, *args)
        if _kernels_cy is not None:
            fn_cy = getattr(_kernels_cy, _STAGE_FN[stage])
            t_cy, _ = best_of(repeat, fn_cy, *args)
        else:
            t_cy = float("nan")
        rows.append((stage, t_py, t_cy))
    return rows


_STAGE_FN = {
    "search": "cell_neighbor_search",
    "solve": "build_stencils",
    "apply": "apply_stencils",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="51,101,201",
                        help="comma list of per-axis node counts")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions; the best run counts")
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]

    if _kernels_cy is None:
        print("note: compiled extension not available, timing fallback only")
    print(f"{'n':>6} {'nodes':>8} {'stage':>8} {'python':>10} "
          f"{'compiled':>10} {'speedup':>8}")
    for n in sizes:
        rows = bench_size(n, args.repeat)
        for stage, t_py, t_cy in rows:
            speed = t_py / t_cy if t_cy == t_cy and t_cy > 0 else float("nan")
            print(f"{n:>6} {n * n:>8} {stage:>8} {t_py * 1e3:>9.2f}ms "
                  f"{t_cy * 1e3:>9.2f}ms {speed:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
