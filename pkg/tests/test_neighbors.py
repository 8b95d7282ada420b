from __future__ import annotations

import numpy as np
import pytest

from nodederiv import (
    InvalidRadiusError,
    brute_force_neighbors,
    build_neighbor_table,
    perturb,
    regular_grid,
)


def tables_equal(a, b) -> bool:
    return (
        np.array_equal(a.indptr, b.indptr)
        and np.array_equal(a.indices, b.indices)
        and np.array_equal(a.offsets, b.offsets)
        and np.array_equal(a.dists, b.dists)
    )


def test_matches_brute_force_on_perturbed_grid():
    grid = regular_grid(((-2.0, 2.0), (-2.0, 2.0)), (51, 51))
    nodes = perturb(grid, 0.25 * grid.dx, seed=42)
    r = 2.5 * grid.dx
    fast = build_neighbor_table(nodes, r)
    slow = brute_force_neighbors(nodes, r)
    assert tables_equal(fast, slow)


@pytest.mark.parametrize("trial", range(10))
def test_matches_brute_force_random_clouds(trial):
    rng = np.random.default_rng(1000 + trial)
    dim = 1 if trial % 3 == 0 else 2
    n = int(rng.integers(20, 500))
    pts = rng.uniform(-1.0, 1.0, size=(n, dim))
    r = float(rng.uniform(0.05, 0.5))
    fast = build_neighbor_table(pts, r)
    slow = brute_force_neighbors(pts, r)
    assert tables_equal(fast, slow)


def test_1d_grid_neighbor_count():
    # r = 2.5 dx reaches two nodes on each side of an interior node
    grid = regular_grid((0.0, 1.0), 11)
    table = build_neighbor_table(grid, 2.5 * grid.dx)
    counts = table.counts()
    assert counts[5] == 4
    assert counts[0] == 2  # only the two nodes to the right
    idx, off, dist = table.row(5)
    assert sorted(idx.tolist()) == [3, 4, 6, 7]
    assert np.allclose(sorted(np.abs(off[:, 0])), [0.1, 0.1, 0.2, 0.2])
    assert np.array_equal(dist, np.abs(off[:, 0]))


def test_cutoff_is_strict():
    # nodes exactly r_cut apart are not neighbors
    pts = np.array([[0.0], [1.0], [2.5]])
    table = build_neighbor_table(pts, 1.0)
    assert table.counts().tolist() == [0, 0, 0]
    table = build_neighbor_table(pts, 1.0000001)
    assert table.counts().tolist() == [1, 1, 0]


def test_self_is_never_a_neighbor():
    pts = np.array([[0.0, 0.0], [0.05, 0.0], [0.0, 0.05]])
    table = build_neighbor_table(pts, 1.0)
    for i in range(3):
        idx, _, _ = table.row(i)
        assert i not in idx
        assert len(idx) == 2


def test_offsets_point_from_owner_to_neighbor():
    pts = np.array([[0.0, 0.0], [0.3, 0.4]])
    table = build_neighbor_table(pts, 1.0)
    idx, off, dist = table.row(0)
    assert idx.tolist() == [1]
    assert off[0].tolist() == [0.3, 0.4]
    assert dist[0] == pytest.approx(0.5, rel=1e-15)


def test_collinear_points():
    pts = np.array([[0.0, 0.0], [0.1, 0.0], [0.2, 0.0]])
    table = build_neighbor_table(pts, 0.15)
    assert table.counts().tolist() == [1, 2, 1]


def test_invalid_radius():
    pts = np.zeros((3, 2))
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(InvalidRadiusError):
            build_neighbor_table(pts, bad)
        with pytest.raises(InvalidRadiusError):
            brute_force_neighbors(pts, bad)


def test_rows_sorted_by_index():
    rng = np.random.default_rng(7)
    pts = rng.uniform(0.0, 1.0, size=(200, 2))
    table = build_neighbor_table(pts, 0.2)
    for i in range(table.n_nodes):
        idx, _, _ = table.row(i)
        assert np.all(np.diff(idx) > 0)
