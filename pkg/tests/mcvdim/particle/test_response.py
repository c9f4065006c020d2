import numpy as np
import pytest

from mcvdim.datasets import make_reference_response
from mcvdim.exceptions import ChannelDataError
from mcvdim.particle import ChannelResponse, parse_header, shift_fill


def test_text_round_trip_is_exact():
    cir = make_reference_response()
    again = ChannelResponse.from_text(cir.to_text())
    assert np.array_equal(again.h, cir.h)
    assert again.header() == cir.header()
    assert again.to_text() == cir.to_text()


def test_invalid_taps_rejected():
    with pytest.raises(ChannelDataError) as _:
        ChannelResponse(np.full((1, 1, 2), -0.1), 0.5)
    with pytest.raises(ChannelDataError) as _:
        ChannelResponse(np.full((1, 2, 2), 0.3), 0.5)
    with pytest.raises(ChannelDataError) as _:
        ChannelResponse(np.zeros((2, 2)), 0.5)


def test_taps_are_read_only():
    cir = ChannelResponse(np.full((1, 1, 2), 0.1), 0.5)
    with pytest.raises(ValueError) as _:
        cir.h[0, 0, 0] = 0.2


def test_truncate():
    cir = make_reference_response()
    short = cir.truncate(2)
    assert short.L == 2
    assert np.array_equal(short.h, cir.h[:, :, :2])
    with pytest.raises(ValueError) as _:
        cir.truncate(0)


def test_circulant_detection():
    first = np.array([[0.2, 0.1], [0.05, 0.02], [0.01, 0.01]])
    h = shift_fill(first)
    assert np.array_equal(h[1, 2], first[1])
    assert ChannelResponse(h, 0.5).is_circulant()
    h = h.copy()
    h[2, 0, 0] += 0.01
    assert not ChannelResponse(h, 0.5).is_circulant()


def test_malformed_text():
    with pytest.raises(ChannelDataError) as _:
        ChannelResponse.from_text("n_tx = 1\nn_rx = 1\nL = 2\nt_s = 0.5\n0.1 0.2\n")
    with pytest.raises(ChannelDataError) as _:
        ChannelResponse.from_text("n_tx = 1\nn_rx = 1\nL = 2\nt_s = 0.5\n\n0.1\n")
    with pytest.raises(ChannelDataError) as _:
        parse_header("no separator")


def test_parse_header_skips_comments():
    assert parse_header("# note\n\na = 1\n b =  x y \n") == {"a": "1", "b": "x y"}
