from __future__ import annotations

import numpy as np
import pytest

from nodederiv import eval_jet, get_function, power, quadratic, sinusoidal
from nodederiv.fields import FUNCTIONS


def test_power_jet_at_1_1():
    jet = eval_jet(power(), (1.0, 1.0))
    assert jet.f == 3.0
    assert jet.fx == 7.0  # 4x^3 + 3x^2 y^3
    assert jet.fy == 7.0
    assert jet.fxx == 18.0  # 12x^2 + 6x y^3
    assert jet.fxy == 9.0  # 9x^2 y^2
    assert jet.fyy == 18.0


def test_power_jet_generic_point():
    x, y = -1.3, 0.7
    jet = eval_jet(power(), (x, y))
    assert jet.f == pytest.approx(x**4 + y**4 + x**3 * y**3, rel=1e-15)
    assert jet.fx == pytest.approx(4 * x**3 + 3 * x**2 * y**3, rel=1e-15)
    assert jet.fy == pytest.approx(4 * y**3 + 3 * x**3 * y**2, rel=1e-15)
    assert jet.fxx == pytest.approx(12 * x**2 + 6 * x * y**3, rel=1e-15)
    assert jet.fxy == pytest.approx(9 * x**2 * y**2, rel=1e-15)
    assert jet.fyy == pytest.approx(12 * y**2 + 6 * x**3 * y, rel=1e-15)


def test_sinusoidal_jet_at_origin():
    jet = eval_jet(sinusoidal(), (0.0, 0.0))
    assert jet.f == 0.0
    assert jet.fx == 1.0
    assert jet.fy == 0.0
    assert jet.fxx == 0.0
    assert jet.fxy == 0.0
    assert jet.fyy == 0.0


def test_sinusoidal_mixed_and_second_derivatives():
    # f = sin x cos 2y: the mixed slot is -2 cos x sin 2y and the
    # yy slot is -4 sin x cos 2y; easy to mislabel, so pin both.
    x, y = 0.7, 0.3
    jet = eval_jet(sinusoidal(), (x, y))
    assert jet.fxy == pytest.approx(-2.0 * np.cos(x) * np.sin(2 * y), rel=1e-15)
    assert jet.fyy == pytest.approx(-4.0 * np.sin(x) * np.cos(2 * y), rel=1e-15)
    assert jet.fxx == pytest.approx(-np.sin(x) * np.cos(2 * y), rel=1e-15)


def test_quadratic_jet():
    f = quadratic(0.0, 0.0, 0.0, 1.0, 0.0, 0.0)  # x^2
    jet = eval_jet(f, (0.3, -0.8))
    assert jet.fx == pytest.approx(0.6)
    assert jet.fy == 0.0
    assert jet.fxx == 2.0
    assert jet.fxy == 0.0
    assert jet.fyy == 0.0

    g = quadratic(1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
    jet = eval_jet(g, (1.0, 1.0))
    assert jet.f == pytest.approx(1 + 2 + 3 + 4 + 5 + 6)
    assert jet.fx == pytest.approx(2 + 8 + 5)  # c1 + 2 c3 x + c4 y
    assert jet.fy == pytest.approx(3 + 5 + 12)  # c2 + c4 x + 2 c5 y
    assert jet.fxx == 8.0
    assert jet.fxy == 5.0
    assert jet.fyy == 12.0


def test_sample_matches_eval_jet():
    func = power()
    pts = np.array([[0.5, -0.25], [1.0, 1.0], [-2.0, 2.0]])
    table = func.sample(pts)
    assert table.shape == (3, 6)
    for row, pt in zip(table, pts):
        jet = eval_jet(func, pt)
        assert row.tolist() == [jet.f, jet.fx, jet.fy, jet.fxx, jet.fxy, jet.fyy]


def test_domains():
    assert power().domain[0] == (-2.0, 2.0)
    lo, hi = sinusoidal().domain[0]
    assert lo == 0.0
    assert hi == pytest.approx(2.0 * np.pi)


def test_registry():
    assert set(FUNCTIONS) == {"power", "sinusoidal"}
    assert get_function("power").name == "power"
    with pytest.raises(ValueError):
        get_function("cubic")


@pytest.mark.parametrize("name", ["power", "sinusoidal"])
def test_jet_consistent_with_finite_differences(name):
    """Central differences of the f slot recover every derivative slot."""
    func = get_function(name)
    h = 1e-4
    (lox, hix), (loy, hiy) = func.domain
    for frac in (0.2, 0.5, 0.8):
        x = lox + frac * (hix - lox)
        y = loy + (1.0 - frac) * (hiy - loy)
        jet = eval_jet(func, (x, y))
        f = lambda a, b: eval_jet(func, (a, b)).f
        approx = {
            "fx": (f(x + h, y) - f(x - h, y)) / (2 * h),
            "fy": (f(x, y + h) - f(x, y - h)) / (2 * h),
            "fxx": (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h**2,
            "fyy": (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h**2,
            "fxy": (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h))
            / (4 * h**2),
        }
        for slot, est in approx.items():
            exact = getattr(jet, slot)
            assert est == pytest.approx(exact, rel=1e-6, abs=1e-5)
