import numpy as np
import pytest

from mcvdim.modulation import gray_index_map


def test_gray_neighbours_differ_in_one_bit():
    """Circularly adjacent antennas differ in exactly one label bit."""
    gray = gray_index_map(8)
    idx = np.arange(8)
    assert np.all(gray.hamming_distance(idx, (idx + 1) % 8) == 1)


def test_natural_wraparound_costs_all_bits():
    natural = gray_index_map(8, "natural")
    assert natural.hamming_distance(7, 0) == 3


def test_labels_round_trip():
    for kind in ("natural", "gray"):
        index_map = gray_index_map(16, kind)
        idx = np.arange(16)
        assert np.array_equal(index_map.to_index(index_map.to_bits(idx)), idx)


def test_distance_matrix_symmetric():
    d = gray_index_map(4).distance_matrix()
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0)


def test_bad_sizes():
    with pytest.raises(ValueError) as _:
        gray_index_map(6)
    with pytest.raises(ValueError) as _:
        gray_index_map(8, "johnson")
