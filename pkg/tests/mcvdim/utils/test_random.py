import numpy as np
import pytest

from mcvdim.utils import argmax_random_tie, derive_rng


def test_streams_depend_on_key_only():
    """The same key gives the same stream; other keys differ."""
    a = derive_rng(7, 1, 2).random(5)
    b = derive_rng(7, 1, 2).random(5)
    c = derive_rng(7, 2, 1).random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_negative_key_rejected():
    with pytest.raises(ValueError) as _:
        derive_rng(0, -1)


def test_argmax_unique():
    rng = np.random.default_rng(0)
    assert argmax_random_tie(np.array([1, 5, 3]), rng) == 1


def test_argmax_ties_are_shared():
    """Tied maxima each win about half the time."""
    rng = np.random.default_rng(0)
    values = np.tile([4, 1, 4], (4000, 1))
    winners = argmax_random_tie(values, rng, axis=1)
    assert set(np.unique(winners)) == {0, 2}
    assert 0.45 < np.mean(winners == 0) < 0.55


def test_argmax_empty_axis():
    with pytest.raises(ValueError) as _:
        argmax_random_tie(np.zeros((3, 0)), np.random.default_rng(0))
