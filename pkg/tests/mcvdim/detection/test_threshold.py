import numpy as np
import pytest

from mcvdim.channel import sample_arrivals
from mcvdim.detection import (
    AdaptiveThresholdDetector,
    atd,
    atd_decode,
    calibrate_threshold,
    combine_egc,
    combine_sc,
    ftd,
)
from mcvdim.modulation import SchemeConfig, modulate
from mcvdim.particle import ChannelResponse


def test_ftd_arrays():
    assert ftd(np.array([0, 3, 5]), 3).tolist() == [0, 1, 1]
    with pytest.raises(ValueError) as _:
        ftd(1, -1)


def test_atd_compares_with_previous():
    assert atd(np.array([4, 4]), np.array([3, 4])).tolist() == [1, 0]


def test_atd_decode_first_interval_uses_threshold():
    assert atd_decode([5, 9, 2, 2, 8], gamma=6).tolist() == [0, 1, 0, 0, 1]
    assert atd_decode([[7, 1], [0, 3]], gamma=6).tolist() == [[1, 0], [0, 1]]


def test_stream_detector_matches_batch():
    counts = [5, 9, 2, 2, 8]
    det = AdaptiveThresholdDetector(gamma=6)
    bits = [det.update(c) for c in counts]
    assert bits == atd_decode(counts, 6).tolist()
    assert det.history == [1]
    det.reset()
    assert det.update(7) == 1
    assert det.total_symbols == 6


def test_calibration_separates_levels():
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, 2000)
    counts = np.where(bits == 1, rng.poisson(40, 2000), rng.poisson(5, 2000))
    gamma = calibrate_threshold(counts, bits)
    assert 12 <= gamma <= 28
    assert np.mean(ftd(counts, gamma) != bits) < 0.01


def test_calibration_input_checks():
    with pytest.raises(ValueError) as _:
        calibrate_threshold([1, 2], [1])
    with pytest.raises(ValueError) as _:
        calibrate_threshold([], [])


def test_combiners():
    counts = np.array([[1, 8], [6, 2], [3, 3]])
    assert combine_sc(counts).tolist() == [6, 8]
    assert combine_egc(counts).tolist() == [10, 13]
    with pytest.raises(ValueError) as _:
        combine_egc(np.zeros((0, 2)))


def test_atd_follows_alternating_bits_through_isi():
    """On a slowly decaying channel an alternating 1010... stream keeps the
    counts of its zeros far above the single-burst midpoint, so a threshold
    placed there flags every zero, while comparing neighbouring intervals
    decodes the whole stream."""
    taps = np.array([0.10, 0.09, 0.08, 0.07, 0.06])
    cir = ChannelResponse(taps[None, None, :], t_s=0.25)
    cfg = SchemeConfig("SISO_BCSK", 1, M_tx=20000)
    bits = np.tile([1, 0], 100)
    rng = np.random.default_rng(0)
    counts = sample_arrivals(cir, modulate(cfg, bits), "gaussian", rng).R[0, :, 0]
    gamma = 20000 * taps[0] / 2
    steady = slice(taps.size, None)
    assert np.array_equal(atd_decode(counts, gamma)[steady], bits[steady])
    fixed = ftd(counts, gamma)[steady]
    assert np.all(fixed == 1)
    assert np.array_equal(fixed != bits[steady], bits[steady] == 0)
