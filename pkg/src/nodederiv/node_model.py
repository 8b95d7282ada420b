"""Node-set generation: regular tensor grids and their randomly perturbed counterparts.

Perturbation draws come from a pinned SplitMix64 stream so that node sets are
bit-reproducible across runs and across implementations of the same recipe:
nodes are visited in row-major grid order, drawing the x offset and then the
y offset for each node, each offset being ``dr * u`` with ``u`` uniform on
the open interval (-1, +1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDomainError, UnsupportedAnisotropyError

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53 = float(1 << 53)


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of SplitMix64 seeded with ``seed``, as uint64."""
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    # state after k steps is seed + k*gamma mod 2^64, so the stream vectorizes
    states = np.uint64(seed) + np.arange(1, count + 1, dtype=np.uint64) * np.uint64(_GAMMA)
    z = states
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z = z ^ (z >> np.uint64(31))
    return z


def _scalar_unit_draws(seed: int, count: int) -> np.ndarray:
    """Reference scalar path: ``count`` uniforms in (-1, +1), rejecting exact endpoints."""
    out = np.empty(count, dtype=np.float64)
    state = seed & _MASK64
    k = 0
    while k < count:
        state = (state + _GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        z = z ^ (z >> 31)
        u = 2.0 * ((z >> 11) / _TWO53) - 1.0
        if u == -1.0 or u == 1.0:
            continue
        out[k] = u
        k += 1
    return out


def unit_draws(seed: int, count: int) -> np.ndarray:
    """``count`` uniforms in the open interval (-1, +1) from the pinned stream."""
    z = splitmix64_stream(seed, count)
    u = 2.0 * ((z >> np.uint64(11)).astype(np.float64) / _TWO53) - 1.0
    if np.any(u == -1.0) or np.any(u == 1.0):
        # endpoint hit (probability ~ count * 2^-53): a rejection shifts the
        # rest of the stream, so replay the whole prefix scalar-style
        return _scalar_unit_draws(seed, count)
    return u


def _axis_positions(lo: float, hi: float, count: int) -> np.ndarray:
    return np.linspace(lo, hi, count)


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Scattered nodes plus the generation metadata carried through the pipeline.

    ``points`` has shape (N, dim). ``grid_shape`` is the per-axis node count
    for generated sets and None for sets loaded from an external file (those
    carry no grid provenance).
    """

    points: np.ndarray
    dim: int
    dx: float
    dr: float
    seed: int
    domain_bounds: np.ndarray  # shape (dim, 2)
    grid_shape: tuple[int, ...] | None

    def __post_init__(self):
        if self.grid_shape is not None:
            expected = int(np.prod(self.grid_shape))
            if len(self.points) != expected:
                raise InvalidDomainError(
                    f"{len(self.points)} points for grid shape {self.grid_shape}"
                )
        self.points.setflags(write=False)
        self.domain_bounds.setflags(write=False)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n_nodes(self) -> int:
        return len(self.points)

    def regular_positions(self) -> np.ndarray:
        """Unperturbed grid positions of each node, in node order."""
        if self.grid_shape is None:
            raise InvalidDomainError("node set has no grid provenance")
        axes = [
            _axis_positions(self.domain_bounds[a, 0], self.domain_bounds[a, 1], n)
            for a, n in enumerate(self.grid_shape)
        ]
        if self.dim == 1:
            return axes[0][:, None].copy()
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def boundary_mask(self, r_cut: float) -> np.ndarray:
        """True where a node sits on the outermost grid layer or its regular
        position lies within ``r_cut`` of the domain boundary."""
        if self.grid_shape is not None:
            ref = self.regular_positions()
        else:
            ref = self.points
        mask = np.zeros(len(ref), dtype=bool)
        for a in range(self.dim):
            lo, hi = self.domain_bounds[a]
            mask |= (ref[:, a] - lo < r_cut) | (hi - ref[:, a] < r_cut)
        if self.grid_shape is not None:
            idx = np.unravel_index(np.arange(len(ref)), self.grid_shape)
            for a, n in enumerate(self.grid_shape):
                mask |= (idx[a] == 0) | (idx[a] == n - 1)
        return mask


def _as_bounds(bounds) -> np.ndarray:
    arr = np.asarray(bounds, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] not in (1, 2):
        raise InvalidDomainError(f"bounds must be (lo, hi) per axis, got shape {arr.shape}")
    return arr


def regular_grid(bounds, counts) -> NodeSet:
    """Uniform tensor grid of nodes over an axis-aligned box.

    ``bounds`` is (lo, hi) in 1D or ((lox, hix), (loy, hiy)) in 2D; ``counts``
    is the per-axis node count. All axes must yield the same spacing.
    """
    box = _as_bounds(bounds)
    shape = tuple(int(c) for c in np.atleast_1d(counts))
    dim = box.shape[0]
    if len(shape) != dim:
        raise InvalidDomainError(f"{len(shape)} counts for {dim} axes")
    if any(c < 2 for c in shape):
        raise InvalidDomainError(f"need at least 2 nodes per axis, got {shape}")
    if np.any(box[:, 1] <= box[:, 0]):
        raise InvalidDomainError(f"degenerate bounds {box.tolist()}")

    spacings = [(box[a, 1] - box[a, 0]) / (shape[a] - 1) for a in range(dim)]
    dx = spacings[0]
    for s in spacings[1:]:
        if abs(s - dx) > 1e-12 * max(abs(s), abs(dx)):
            raise UnsupportedAnisotropyError(f"per-axis spacings differ: {spacings}")

    axes = [_axis_positions(box[a, 0], box[a, 1], shape[a]) for a in range(dim)]
    if dim == 1:
        points = axes[0][:, None].copy()
    else:
        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.column_stack([m.ravel() for m in mesh])
    return NodeSet(
        points=points,
        dim=dim,
        dx=float(dx),
        dr=0.0,
        seed=0,
        domain_bounds=box,
        grid_shape=shape,
    )


def perturb(nodes: NodeSet, dr: float, seed: int) -> NodeSet:
    """Offset every coordinate of every node by ``dr * u``, u uniform in (-1, +1).

    Deterministic in (nodes, dr, seed); dr = 0 returns the input coordinates
    bit for bit.
    """
    if nodes.grid_shape is None:
        raise InvalidDomainError("perturb requires a grid-generated node set")
    if dr < 0:
        raise InvalidDomainError(f"dr must be non-negative, got {dr}")
    if dr == 0.0:
        return NodeSet(
            points=nodes.points,
            dim=nodes.dim,
            dx=nodes.dx,
            dr=0.0,
            seed=seed,
            domain_bounds=nodes.domain_bounds,
            grid_shape=nodes.grid_shape,
        )
    n = len(nodes)
    u = unit_draws(seed, n * nodes.dim).reshape(n, nodes.dim)
    points = nodes.points + dr * u
    return NodeSet(
        points=points,
        dim=nodes.dim,
        dx=nodes.dx,
        dr=float(dr),
        seed=seed,
        domain_bounds=nodes.domain_bounds,
        grid_shape=nodes.grid_shape,
    )


def save_nodes(nodes: NodeSet, path) -> None:
    """Write the plain-text node format: ``dim N dx dr seed`` header, one node per line."""
    lines = [f"{nodes.dim} {len(nodes)} {nodes.dx!r} {nodes.dr!r} {nodes.seed}"]
    for row in nodes.points:
        lines.append(" ".join(repr(float(c)) for c in row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_nodes(path) -> NodeSet:
    """Read the plain-text node format written by :func:`save_nodes`.

    Externally produced sets carry no grid provenance: grid_shape is None and
    the domain bounds are the tight bounding box of the points.
    """
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 5:
            raise InvalidDomainError(f"bad node-file header: {header}")
        dim, n = int(header[0]), int(header[1])
        dx, dr, seed = float(header[2]), float(header[3]), int(header[4])
        points = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if points.shape != (n, dim):
        raise InvalidDomainError(f"expected {n} nodes of dim {dim}, got shape {points.shape}")
    bounds = np.column_stack([points.min(axis=0), points.max(axis=0)])
    return NodeSet(
        points=points,
        dim=dim,
        dx=dx,
        dr=dr,
        seed=seed,
        domain_bounds=bounds,
        grid_shape=None,
    )
