from __future__ import annotations

import numpy as np
import pytest

from nodederiv import (
    InvalidDomainError,
    UnsupportedAnisotropyError,
    load_nodes,
    perturb,
    regular_grid,
    save_nodes,
)
from nodederiv.node_model import _scalar_unit_draws, splitmix64_stream, unit_draws

# Published SplitMix64 reference outputs for seed 0 (Vigna's splitmix64.c).
SPLITMIX64_SEED0 = (
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
    0xF88BB8A8724C81EC,
)


def test_splitmix64_reference_vector():
    out = splitmix64_stream(0, len(SPLITMIX64_SEED0))
    assert tuple(int(x) for x in out) == SPLITMIX64_SEED0


def test_splitmix64_stream_is_prefix_stable():
    long = splitmix64_stream(987654321, 64)
    short = splitmix64_stream(987654321, 16)
    assert np.array_equal(long[:16], short)


def test_unit_draws_match_scalar_reference():
    # vectorized generator must replay the scalar loop bit for bit
    for seed in (0, 1, 42, 2**63):
        v = unit_draws(seed, 257)
        s = _scalar_unit_draws(seed, 257)
        assert np.array_equal(v, s)


def test_unit_draws_open_interval():
    u = unit_draws(7, 100_000)
    assert u.min() > -1.0
    assert u.max() < 1.0
    # crude uniformity sanity: mean of U(-1,1) is 0 with sd 1/sqrt(3N)
    assert abs(u.mean()) < 5.0 / np.sqrt(3 * len(u))


def test_regular_grid_2d_spacing_and_order():
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (51, 51))
    assert grid.dx == pytest.approx(0.08, abs=0.0)
    assert len(grid) == 2601
    assert grid.dim == 2
    # node n = i*ny + j: first node is the (-2,-2) corner, second steps in y
    assert grid.points[0].tolist() == [-2.0, -2.0]
    assert grid.points[1].tolist() == [-2.0, -1.92]
    assert grid.points[51].tolist() == [-1.92, -2.0]
    assert grid.points[-1].tolist() == [2.0, 2.0]


def test_regular_grid_1d():
    grid = regular_grid((0.0, 1.0), 2)
    assert grid.points[:, 0].tolist() == [0.0, 1.0]
    assert grid.dx == 1.0
    assert grid.dim == 1

    tau = regular_grid((0.0, 2.0 * np.pi), 51)
    assert tau.dx == pytest.approx(2.0 * np.pi / 50.0, rel=1e-15)


def test_regular_grid_rejects_bad_input():
    with pytest.raises(InvalidDomainError):
        regular_grid((0.0, 1.0), 1)
    with pytest.raises(InvalidDomainError):
        regular_grid((1.0, 1.0), 5)
    with pytest.raises(InvalidDomainError):
        regular_grid(((0.0, 1.0), (0.0, 1.0)), (5,))
    # unequal spacings across axes are out of scope
    with pytest.raises(UnsupportedAnisotropyError):
        regular_grid(((0.0, 1.0), (0.0, 2.0)), (11, 11))


def test_perturb_displacement_bound_and_determinism():
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (26, 26))
    dr = 0.25 * grid.dx
    nodes = perturb(grid, dr, seed=42)
    disp = np.abs(nodes.points - grid.points)
    assert disp.max() < dr
    assert disp.max() > 0.9 * dr  # draws actually span the interval
    again = perturb(grid, dr, seed=42)
    assert np.array_equal(nodes.points, again.points)
    other = perturb(grid, dr, seed=43)
    assert not np.array_equal(nodes.points, other.points)


def test_perturb_zero_dr_is_identity():
    grid = regular_grid(((-1.0, 1.0), (-1.0, 1.0)), (5, 5))
    nodes = perturb(grid, 0.0, seed=9)
    assert np.array_equal(nodes.points, grid.points)
    assert nodes.dr == 0.0


def test_perturb_rejects_negative_dr():
    grid = regular_grid((0.0, 1.0), 4)
    with pytest.raises(InvalidDomainError):
        perturb(grid, -0.1, seed=1)


def test_boundary_mask_interior_count():
    # 51x51 grid, r_cut = 2.5 dx: rows/cols within 2 dx of the edge are
    # boundary (strict <), leaving a 45x45 interior block
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (51, 51))
    mask = grid.boundary_mask(2.5 * grid.dx)
    assert mask.sum() == 2601 - 2025
    assert (~mask).sum() == 45 * 45


def test_boundary_mask_uses_regular_positions_for_perturbed_sets():
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (26, 26))
    nodes = perturb(grid, 0.25 * grid.dx, seed=5)
    # the mask depends on the unperturbed lattice, not the jittered points
    assert np.array_equal(nodes.boundary_mask(2.5 * grid.dx), grid.boundary_mask(2.5 * grid.dx))


def test_boundary_mask_outermost_layer_always_included():
    grid = regular_grid(((0.0, 1.0), (0.0, 1.0)), (6, 6))
    mask = grid.boundary_mask(1e-9)  # radius smaller than any spacing
    idx = np.unravel_index(np.arange(36), (6, 6))
    edge = (idx[0] == 0) | (idx[0] == 5) | (idx[1] == 0) | (idx[1] == 5)
    assert np.array_equal(mask, edge)


def test_save_load_round_trip(tmp_path):
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (9, 9))
    nodes = perturb(grid, 0.02, seed=11)
    path = tmp_path / "nodes.txt"
    save_nodes(nodes, path)
    back = load_nodes(path)
    assert np.array_equal(back.points, nodes.points)
    assert back.dim == nodes.dim
    assert back.dx == nodes.dx
    assert back.dr == nodes.dr
    assert back.seed == nodes.seed
    # loaded sets carry no grid provenance
    assert back.grid_shape is None
    with pytest.raises(InvalidDomainError):
        back.regular_positions()
    with pytest.raises(InvalidDomainError):
        perturb(back, 0.01, seed=1)


def test_load_rejects_malformed_header(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 4 0.1\n0 0\n0 1\n1 0\n1 1\n")
    with pytest.raises(InvalidDomainError):
        load_nodes(path)
