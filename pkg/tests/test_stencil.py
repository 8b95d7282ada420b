from __future__ import annotations

import numpy as np
import pytest

from nodederiv import (
    CoincidentNodeError,
    DegenerateNeighborhoodError,
    InsufficientNeighborsError,
    WeightKind,
    apply_stencil,
    build_neighbor_table,
    build_stencil,
    derivative_field,
    design_row,
    diagnostics,
    perturb,
    quadratic,
    regular_grid,
)
from nodederiv.stencil import QUANTITIES_1D, QUANTITIES_2D


def test_design_row_2d():
    # columns are (u, v, u^2, uv, v^2) for an offset (u, v)
    h = 0.1
    assert design_row(2, (h, 0.0)).tolist() == [h, 0.0, h * h, 0.0, 0.0]
    assert design_row(2, (1.0, 2.0)).tolist() == [1.0, 2.0, 1.0, 2.0, 4.0]


def test_design_row_1d():
    h = 0.25
    assert design_row(1, (h,)).tolist() == [h, h * h]


def test_design_row_rejects_coincident_offset():
    with pytest.raises(CoincidentNodeError):
        design_row(2, (0.0, 0.0))


def test_1d_two_neighbor_oracle():
    """Neighbors at +h and +2h on u = x^3.

    The 2x2 system [[h, h^2], [2h, 4h^2]] [a, b]^T = [h^3, 8h^3] solves to
    a = -2h^2, b = 3h, so the reported jet is (fx, fxx) = (-2h^2, 6h).
    """
    h = 0.1
    pts = np.array([[0.0], [h], [2 * h]])
    table = build_neighbor_table(pts, 2.5 * h)
    st = build_stencil(0, table, WeightKind.UNIFORM)
    jet = apply_stencil(st, pts[:, 0] ** 3)
    assert jet.dx_val == pytest.approx(-2 * h * h, rel=1e-12)
    assert jet.dxx_val == pytest.approx(6 * h, rel=1e-12)
    assert jet.dy_val is None and jet.dxy_val is None and jet.dyy_val is None


def test_1d_symmetric_pair_is_exact_on_x_squared():
    h = 0.25  # exactly representable so the algebra stays clean
    pts = np.array([[-h], [0.0], [h]])
    table = build_neighbor_table(pts, 1.5 * h)
    st = build_stencil(1, table, WeightKind.UNIFORM)
    jet = apply_stencil(st, pts[:, 0] ** 2)
    assert jet.dx_val == pytest.approx(0.0, abs=1e-15)
    assert jet.dxx_val == pytest.approx(2.0, rel=1e-13)


def test_square_system_coefficients_invert_design_matrix():
    # with J == m the least-squares map reduces to A^-1, so C A = I
    offs = np.array([[0.1, 0.0], [0.0, 0.1], [-0.08, 0.03], [0.05, -0.09], [0.07, 0.07]])
    pts = np.vstack([[0.0, 0.0], offs])
    table = build_neighbor_table(pts, 0.5)
    for kind in WeightKind:
        st = build_stencil(0, table, kind)
        _, row_offs, _ = table.row(0)
        a = np.vstack([design_row(2, o) for o in row_offs])
        assert np.allclose(st.coeffs @ a, np.eye(5), atol=1e-9)


@pytest.mark.parametrize("kind", [WeightKind.UNIFORM, WeightKind.MPS])
def test_quadratic_exactness_single_node(kind):
    grid = regular_grid(((-1.0, 1.0), (-1.0, 1.0)), (11, 11))
    nodes = perturb(grid, 0.25 * grid.dx, seed=8)
    table = build_neighbor_table(nodes, 2.5 * grid.dx)
    func = quadratic(1.0, -2.0, 0.5, 3.0, -1.5, 2.5)
    sample = func.sample(nodes.points)
    center = 60  # an interior node
    st = build_stencil(center, table, kind)
    jet = apply_stencil(st, sample[:, 0])
    exact = sample[center, 1:]
    got = np.array([jet.dx_val, jet.dy_val, jet.dxx_val, jet.dxy_val, jet.dyy_val])
    assert np.allclose(got, exact, rtol=1e-11, atol=1e-13)


def test_linear_field_jet():
    grid = regular_grid(((-1.0, 1.0), (-1.0, 1.0)), (9, 9))
    nodes = perturb(grid, 0.2 * grid.dx, seed=3)
    table = build_neighbor_table(nodes, 2.5 * grid.dx)
    field = 3.0 * nodes.points[:, 0] - 7.0 * nodes.points[:, 1]
    st = build_stencil(40, table, WeightKind.MPS)
    jet = apply_stencil(st, field)
    assert jet.dx_val == pytest.approx(3.0, rel=1e-12)
    assert jet.dy_val == pytest.approx(-7.0, rel=1e-12)
    for second in (jet.dxx_val, jet.dxy_val, jet.dyy_val):
        assert second == pytest.approx(0.0, abs=1e-10)


def test_xy_field_mixed_derivative():
    grid = regular_grid(((-1.0, 1.0), (-1.0, 1.0)), (9, 9))
    nodes = perturb(grid, 0.2 * grid.dx, seed=4)
    table = build_neighbor_table(nodes, 2.5 * grid.dx)
    field = nodes.points[:, 0] * nodes.points[:, 1]
    jet = apply_stencil(build_stencil(40, table, WeightKind.UNIFORM), field)
    assert jet.dxy_val == pytest.approx(1.0, rel=1e-12)


def test_collinear_neighborhood_is_degenerate():
    xs = np.array([0.0, 0.1, 0.2, -0.1, -0.2, 0.05])
    pts = np.column_stack([xs, np.zeros_like(xs)])
    table = build_neighbor_table(pts, 0.5)
    with pytest.raises(DegenerateNeighborhoodError):
        build_stencil(0, table, WeightKind.UNIFORM)


def test_insufficient_neighbors():
    pts = np.array([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]])
    table = build_neighbor_table(pts, 0.5)
    with pytest.raises(InsufficientNeighborsError) as exc:
        build_stencil(0, table, WeightKind.UNIFORM)
    assert exc.value.found == 2
    assert exc.value.needed == 5


def test_diagnostics_condition_number():
    # 1D pair at +-h, uniform weights: M = diag(2h^2, 2h^4), so the
    # one-norm condition number is h^-2
    h = 0.5
    pts = np.array([[-h], [0.0], [h]])
    table = build_neighbor_table(pts, 1.5 * h)
    st = build_stencil(1, table, WeightKind.UNIFORM)
    rep = diagnostics(st)
    assert rep.cond == pytest.approx(1.0 / (h * h), rel=1e-12)
    assert rep.n_neighbors == 2
    assert rep.weight_min == rep.weight_max == 1.0


def test_weights_recorded_in_diagnostics():
    pts = np.array([[0.0], [0.1], [-0.2]])
    table = build_neighbor_table(pts, 0.5)
    st = build_stencil(0, table, WeightKind.MPS)
    rep = diagnostics(st)
    # w = 0.5/d - 1 at d = 0.1 and 0.2
    assert rep.weight_max == pytest.approx(4.0, rel=1e-14)
    assert rep.weight_min == pytest.approx(1.5, rel=1e-14)


def test_derivative_field_statuses_and_nan_rows():
    grid = regular_grid(((0.0, 1.0), (0.0, 1.0)), (5, 5))
    table = build_neighbor_table(grid, 1.5 * grid.dx)
    field = grid.points[:, 0] ** 2
    df = derivative_field(grid, table, field, WeightKind.UNIFORM)
    assert df.dim == 2
    assert df.quantities() == QUANTITIES_2D
    # corners see only 3 nodes (J < 5): insufficient
    for corner in (0, 4, 20, 24):
        assert df.status[corner] == 1
        assert np.all(np.isnan(df.values[corner]))
        assert not df.valid[corner].any()
    # edge midpoints have J = 5 but every neighbor sits at u in {0, h},
    # making the u and u^2 columns proportional: degenerate
    for edge in (2, 10, 14, 22):
        assert df.status[edge] == 2
        assert np.all(np.isnan(df.values[edge]))
    ok = df.status == 0
    interior = np.zeros(25, dtype=bool)
    interior[[6, 7, 8, 11, 12, 13, 16, 17, 18]] = True
    assert np.array_equal(ok, interior)
    assert np.allclose(df.column("fxx")[ok], 2.0, rtol=1e-10)
    assert np.allclose(df.column("fxy")[ok], 0.0, atol=1e-10)


def test_derivative_field_1d():
    grid = regular_grid((0.0, 1.0), 21)
    table = build_neighbor_table(grid, 2.5 * grid.dx)
    df = derivative_field(grid, table, grid.points[:, 0] ** 2, WeightKind.MPS)
    assert df.quantities() == QUANTITIES_1D
    assert df.values.shape == (21, 2)
    ok = df.status == 0
    assert np.allclose(df.column("fxx")[ok], 2.0, rtol=1e-9)
    mask = df.valid_column("fx")
    assert np.array_equal(mask, ok)
    vals = df.column("fx")
    assert np.allclose(vals[ok], 2.0 * grid.points[ok, 0], rtol=1e-9, atol=1e-12)


def test_coincident_nodes_rejected():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [0.1, 0.0]])
    table = build_neighbor_table(pts, 0.5)
    with pytest.raises(CoincidentNodeError):
        derivative_field(pts, table, np.zeros(3), WeightKind.MPS)
