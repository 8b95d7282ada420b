from __future__ import annotations

import numpy as np
import pytest

from nodederiv import SingularWeightError, WeightKind, weight
from nodederiv.weighting import WEIGHT_LABELS, weights


def test_uniform_is_one_inside_cutoff():
    assert weight(WeightKind.UNIFORM, 0.05, 0.2) == 1.0
    assert weight(WeightKind.UNIFORM, 0.19999, 0.2) == 1.0


def test_mps_values():
    # w = r_cut/d - 1
    assert weight(WeightKind.MPS, 0.1, 0.2) == pytest.approx(1.0)
    assert weight(WeightKind.MPS, 0.05, 0.2) == pytest.approx(3.0)
    assert weight(WeightKind.MPS, 0.2, 0.2) == 0.0  # vanishes at the cutoff


def test_weight_vanishes_beyond_cutoff():
    for kind in WeightKind:
        assert weight(kind, 0.3, 0.2) == 0.0


def test_zero_distance_is_singular():
    with pytest.raises(SingularWeightError):
        weight(WeightKind.MPS, 0.0, 0.2)
    with pytest.raises(SingularWeightError):
        weights(WeightKind.MPS, np.array([0.1, 0.0]), 0.2)


def test_vectorized_matches_scalar():
    d = np.linspace(0.01, 0.25, 40)
    for kind in WeightKind:
        vec = weights(kind, d, 0.2)
        ref = np.array([weight(kind, float(x), 0.2) for x in d])
        assert np.array_equal(vec, ref)


def test_mps_is_monotone_decreasing():
    d = np.linspace(0.01, 0.19, 50)
    w = weights(WeightKind.MPS, d, 0.2)
    assert np.all(np.diff(w) < 0)


def test_labels():
    assert WEIGHT_LABELS[WeightKind.UNIFORM] == "none"
    assert WEIGHT_LABELS[WeightKind.MPS] == "mps"
