"""Built-in sanity suite behind the `selftest` CLI subcommand.

Fast versions of the load-bearing properties: quadratic exactness of the
scattered-node stencils, cell-index vs brute-force neighbor equivalence,
finite-difference exactness on quadratics, and the analytic-jet
cross-check against central differences.
"""

from __future__ import annotations

import numpy as np

from . import fields
from .analysis import rms
from .neighbors import brute_force_neighbors, build_neighbor_table
from .node_model import perturb, regular_grid
from .regular_fd import fd_derivatives
from .stencil import derivative_field
from .weighting import WeightKind


def _within(numeric, exact, rtol, atol) -> float:
    """Worst tolerance-normalized deviation (<= 1 means pass)."""
    err = np.abs(numeric - exact) / (atol + rtol * np.abs(exact))
    return float(err.max()) if err.size else 0.0


def _check_quadratic_exactness():
    rng = np.random.default_rng(123)
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (31, 31))
    nodes = perturb(grid, 0.25 * grid.dx, seed=7)
    table = build_neighbor_table(nodes, 2.5 * grid.dx)
    worst = 0.0
    for _ in range(5):
        func = fields.quadratic(*rng.uniform(-10.0, 10.0, size=6))
        exact = func.sample(nodes.points)
        for kind in (WeightKind.UNIFORM, WeightKind.MPS):
            df = derivative_field(nodes, table, exact[:, 0], kind)
            ok = df.status == 0
            if not ok.any():
                return False, "no successful stencils"
            worst = max(
                worst,
                _within(df.values[ok], exact[ok][:, 1:], rtol=1e-9, atol=1e-12),
            )
    return worst <= 1.0, f"worst tolerance ratio {worst:.3g}"


def _check_oracle_equivalence():
    rng = np.random.default_rng(456)
    for trial in range(10):
        dim = 1 if trial % 3 == 0 else 2
        n = int(rng.integers(20, 400))
        points = rng.uniform(0.0, 1.0, size=(n, dim))
        r_cut = float(rng.uniform(0.05, 0.4))
        fast = build_neighbor_table(points, r_cut)
        slow = brute_force_neighbors(points, r_cut)
        same = (
            np.array_equal(fast.indptr, slow.indptr)
            and np.array_equal(fast.indices, slow.indices)
            and np.array_equal(fast.offsets, slow.offsets)
            and np.array_equal(fast.dists, slow.dists)
        )
        if not same:
            return False, f"mismatch at trial {trial} (n={n}, r_cut={r_cut:.3g})"
    return True, "10 randomized configurations"


def _check_fd_exactness():
    grid = regular_grid(((-1.0, 1.0), (-1.0, 1.0)), (21, 21))
    func = fields.quadratic(0.5, -1.0, 2.0, 3.0, -2.5, 1.5)
    exact = func.sample(grid.points)
    df = fd_derivatives(exact[:, 0].reshape(21, 21), grid.dx)
    worst = 0.0
    for idx, quantity in enumerate(df.quantities()):
        valid = df.valid_column(quantity)
        worst = max(
            worst,
            _within(
                df.column(quantity)[valid],
                exact[valid, 1 + idx],
                rtol=1e-12,
                atol=1e-12,
            ),
        )
    return worst <= 1.0, f"worst tolerance ratio {worst:.3g}"


def _check_jet_crosscheck():
    h = 1e-4
    worst = 0.0
    for func in (fields.power(), fields.sinusoidal()):
        (xlo, xhi), (ylo, yhi) = func.domain
        probes = np.linspace(0.2, 0.8, 5)
        for px in xlo + probes * (xhi - xlo):
            for py in ylo + probes * (yhi - ylo):
                jet = fields.eval_jet(func, (px, py))

                def f(x, y):
                    return fields.eval_jet(func, (x, y)).f

                approx = {
                    "fx": (f(px + h, py) - f(px - h, py)) / (2 * h),
                    "fy": (f(px, py + h) - f(px, py - h)) / (2 * h),
                    "fxx": (f(px + h, py) - 2 * f(px, py) + f(px - h, py)) / h**2,
                    "fyy": (f(px, py + h) - 2 * f(px, py) + f(px, py - h)) / h**2,
                    "fxy": (
                        f(px + h, py + h)
                        - f(px + h, py - h)
                        - f(px - h, py + h)
                        + f(px - h, py - h)
                    )
                    / (4 * h * h),
                }
                for name, est in approx.items():
                    exact = getattr(jet, name)
                    worst = max(worst, abs(est - exact) / (1e-6 * max(1.0, abs(exact))))
    return worst <= 1.0, f"worst tolerance ratio {worst:.3g}"


def _check_rms_basics():
    value = rms([1.0, 3.0], [0.0, 0.0])
    expected = np.sqrt(5.0)
    ok = abs(value - expected) < 1e-15
    return ok, f"rms([1,3],[0,0]) = {value!r}"


CHECKS = (
    ("quadratic-exactness", _check_quadratic_exactness),
    ("neighbor-oracle-equivalence", _check_oracle_equivalence),
    ("fd-quadratic-exactness", _check_fd_exactness),
    ("analytic-jet-crosscheck", _check_jet_crosscheck),
    ("rms-definition", _check_rms_basics),
)


def run_selfchecks() -> list[tuple[str, bool, str]]:
    """Run every check; returns (name, passed, detail) triples."""
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check()
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, passed, detail))
    return results
