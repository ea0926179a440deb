"""Weight systems: minimum-norm and support-enumeration solvers."""

import math

import numpy as np
import pytest

from qsd.errors import WeightSystemInfeasible
from qsd.weights import min_norm_nonneg_weights, subset_support_weights


def trine_directions():
    phis = 2.0 * np.pi * np.arange(3) / 3.0
    return np.column_stack([np.cos(phis), np.sin(phis), np.zeros(3)])


def square_directions():
    return np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])


def test_min_norm_trine_symmetric():
    w = min_norm_nonneg_weights(trine_directions(), total=2.0)
    assert np.allclose(w, 2.0 / 3.0, atol=1e-10)
    assert math.fsum(w) == pytest.approx(2.0, abs=1e-10)


def test_min_norm_square_uniform():
    w = min_norm_nonneg_weights(square_directions(), total=2.0)
    assert np.allclose(w, 0.5, atol=1e-10)


def test_min_norm_antipodal_pair():
    w = min_norm_nonneg_weights(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))
    assert np.allclose(w, 1.0, atol=1e-12)


def test_min_norm_infeasible_half_space():
    directions = np.array([[1.0, 0.0, 0.2], [1.0, 0.1, 0.0], [1.0, -0.1, 0.1]])
    with pytest.raises(WeightSystemInfeasible) as err:
        min_norm_nonneg_weights(directions, total=2.0)
    assert err.value.directions is not None
    assert np.asarray(err.value.directions).shape == (3, 3)


def test_subset_support_square_flags_nonunique():
    # two distinct minimal supports, (1,0,1,0) and (0,1,0,1), tie on norm;
    # the deterministic enumeration settles on the axis pair {1, 3}
    w, unique = subset_support_weights(square_directions(), total=2.0)
    assert not unique
    assert np.allclose(w, [0.0, 1.0, 0.0, 1.0], atol=1e-10)


def test_subset_support_trine_unique():
    w, unique = subset_support_weights(trine_directions(), total=2.0)
    assert unique
    assert np.allclose(w, 2.0 / 3.0, atol=1e-10)


def test_subset_support_infeasible_returns_none():
    directions = np.array([[1.0, 0.0], [0.9, 0.1]])
    w, unique = subset_support_weights(directions, total=2.0)
    assert w is None and unique


def test_subset_support_respects_total():
    w, _ = subset_support_weights(trine_directions(), total=1.0)
    assert math.fsum(w) == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(trine_directions().T @ w, 0.0, atol=1e-10)


def test_directions_must_be_matrix():
    with pytest.raises(ValueError):
        min_norm_nonneg_weights(np.ones(3), total=2.0)
