"""Analytic test fields with exact derivative jets.

The two study fields are f = x^4 + y^4 + x^3 y^3 on (-2, 2)^2 and
f = sin x cos 2y on (0, 2pi)^2; a quadratic family over the basis
(1, x, y, x^2, xy, y^2) backs the exactness tests. Derivatives are written
out analytically (and cross-checked against finite differences of f in the
test suite, which pins down the sinusoidal fxy/fyy pair:
fxy = -2 cos x sin 2y and fyy = -4 sin x cos 2y).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

#: Column order of `TestFunction.sample` / jet arrays.
JET_SLOTS = ("f", "fx", "fy", "fxx", "fxy", "fyy")


@dataclass(frozen=True)
class AnalyticJet:
    """Exact value and derivatives of a test field at one point."""

    f: float
    fx: float
    fy: float
    fxx: float
    fxy: float
    fyy: float

    def as_array(self) -> np.ndarray:
        return np.array([self.f, self.fx, self.fy, self.fxx, self.fxy, self.fyy])


@dataclass(frozen=True)
class TestFunction:
    """A scalar field over the plane together with its exact jet."""

    name: str
    domain: tuple[tuple[float, float], tuple[float, float]]
    _jet: Callable[[np.ndarray, np.ndarray], tuple]

    def sample(self, points) -> np.ndarray:
        """Jet at each point: (N, 6) array, columns per JET_SLOTS."""
        points = np.asarray(points, dtype=np.float64)
        x, y = points[:, 0], points[:, 1]
        return np.column_stack(self._jet(x, y))

    def values(self, points) -> np.ndarray:
        """Field values alone, (N,)."""
        return self.sample(points)[:, 0]


def eval_jet(function: TestFunction, point) -> AnalyticJet:
    """Exact jet of ``function`` at one 2D point."""
    x, y = float(point[0]), float(point[1])
    parts = function._jet(np.float64(x), np.float64(y))
    return AnalyticJet(*(float(p) for p in parts))


def _power_jet(x, y):
    x2, y2 = x * x, y * y
    x3, y3 = x2 * x, y2 * y
    f = x2 * x2 + y2 * y2 + x3 * y3
    fx = 4.0 * x3 + 3.0 * x2 * y3
    fy = 4.0 * y3 + 3.0 * x3 * y2
    fxx = 12.0 * x2 + 6.0 * x * y3
    fxy = 9.0 * x2 * y2
    fyy = 12.0 * y2 + 6.0 * x3 * y
    return f, fx, fy, fxx, fxy, fyy


def _sinusoidal_jet(x, y):
    sx, cx = np.sin(x), np.cos(x)
    s2y, c2y = np.sin(2.0 * y), np.cos(2.0 * y)
    f = sx * c2y
    fx = cx * c2y
    fy = -2.0 * sx * s2y
    fxx = -sx * c2y
    fxy = -2.0 * cx * s2y
    fyy = -4.0 * sx * c2y
    return f, fx, fy, fxx, fxy, fyy


def power() -> TestFunction:
    """f = x^4 + y^4 + x^3 y^3 on (-2, 2)^2."""
    return TestFunction(
        name="power", domain=((-2.0, 2.0), (-2.0, 2.0)), _jet=_power_jet
    )


def sinusoidal() -> TestFunction:
    """f = sin x cos 2y on (0, 2pi)^2."""
    two_pi = 2.0 * np.pi
    return TestFunction(
        name="sinusoidal", domain=((0.0, two_pi), (0.0, two_pi)), _jet=_sinusoidal_jet
    )


def quadratic(c0, c1, c2, c3, c4, c5) -> TestFunction:
    """f = c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2 on (-2, 2)^2."""
    c = [float(v) for v in (c0, c1, c2, c3, c4, c5)]

    def jet(x, y):
        one = np.ones_like(x)
        f = c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y
        fx = c[1] * one + 2.0 * c[3] * x + c[4] * y
        fy = c[2] * one + c[4] * x + 2.0 * c[5] * y
        return f, fx, fy, 2.0 * c[3] * one, c[4] * one, 2.0 * c[5] * one

    return TestFunction(name="quadratic", domain=((-2.0, 2.0), (-2.0, 2.0)), _jet=jet)


#: CLI-facing registry.
FUNCTIONS = {"power": power, "sinusoidal": sinusoidal}


def get_function(name: str) -> TestFunction:
    try:
        return FUNCTIONS[name]()
    except KeyError:
        raise ValueError(
            f"unknown test function {name!r}; choose from {sorted(FUNCTIONS)}"
        ) from None
