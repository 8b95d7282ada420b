"""Exception types raised by the toolkit."""


class NodederivError(Exception):
    """Base class for all toolkit errors."""


class InvalidDomainError(NodederivError):
    """Degenerate or malformed domain bounds / node counts."""


class UnsupportedAnisotropyError(NodederivError):
    """Per-axis grid spacings differ; only a single spacing is supported."""


class InvalidRadiusError(NodederivError):
    """Cutoff radius is not strictly positive."""


class SingularWeightError(NodederivError):
    """Weight kernel evaluated at zero distance (coincident distinct nodes)."""


class CoincidentNodeError(NodederivError):
    """Two distinct nodes share a position, so Taylor rows degenerate."""


class InsufficientNeighborsError(NodederivError):
    """Fewer neighbors than unknowns at a node."""

    def __init__(self, node: int, found: int, needed: int):
        self.node = node
        self.found = found
        self.needed = needed
        super().__init__(f"node {node}: {found} neighbors, need at least {needed}")


class DegenerateNeighborhoodError(NodederivError):
    """Normal matrix numerically singular (e.g. collinear neighbors)."""

    def __init__(self, node: int, cond: float):
        self.node = node
        self.cond = cond
        super().__init__(f"node {node}: degenerate neighborhood (condition estimate {cond:g})")


class InsufficientGridError(NodederivError):
    """Grid too small for the requested difference scheme."""


class EmptySampleError(NodederivError):
    """RMS requested over zero included valid nodes."""


class DegenerateLogError(NodederivError):
    """Order fit requested on a series with non-positive values."""
