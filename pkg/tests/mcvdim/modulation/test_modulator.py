"""Checks on bit-to-emission mapping."""
import numpy as np
import pytest

from mcvdim.exceptions import ChannelDataError
from mcvdim.modulation import SchemeConfig, modulate, symbol_alphabet, symbol_bits


def test_mssk_selects_one_antenna():
    """Bits 011 activate antenna 3 (natural) or antenna 2 (gray)."""
    natural = modulate(SchemeConfig("MSSK", 8), [0, 1, 1])
    assert natural.s[:, 0, 0].tolist() == [0, 0, 0, 450, 0, 0, 0, 0]
    gray = modulate(SchemeConfig("MSSK", 8, mapping="gray"), [0, 1, 1])
    assert gray.s[:, 0, 0].tolist() == [0, 0, 450, 0, 0, 0, 0, 0]
    assert natural.t_s == pytest.approx(0.75)


def test_qmssk_uses_both_types():
    schedule = modulate(SchemeConfig("QMSSK", 8), [0, 0, 1, 1, 1, 0])
    assert schedule.n_types == 2
    assert np.flatnonzero(schedule.s[:, 0, 0]).tolist() == [1]
    assert np.flatnonzero(schedule.s[:, 0, 1]).tolist() == [6]


def test_msm_leading_bit_selects_type():
    schedule = modulate(SchemeConfig("MSM", 8), [1, 1, 0, 1, 0, 0, 1, 0])
    assert schedule.s[5, 0, 1] == 600
    assert schedule.s[2, 1, 0] == 600
    assert schedule.s.sum() == 1200


def test_bcsk_family():
    rc = modulate(SchemeConfig("RC_BCSK", 8), [1, 0, 1])
    assert rc.s[:, :, 0].T.tolist() == [[38] * 8, [0] * 8, [38] * 8]
    smux = modulate(SchemeConfig("SMUX_BCSK", 4), [1, 0, 0, 1])
    assert smux.s[:, 0, 0].tolist() == [300, 0, 0, 300]
    dmosk = modulate(SchemeConfig("SISO_DMOSK", 1), [0, 1])
    assert dmosk.s[0, 0].tolist() == [0, 300]
    smux2 = modulate(SchemeConfig("SMUX_BCSK", 2, beta=2), [0, 1, 1, 0])
    assert smux2.s[:, 0].tolist() == [[0, 300], [300, 0]]


def test_padding_warns():
    with pytest.warns(UserWarning) as _:
        schedule = modulate(SchemeConfig("MSSK", 8), [1, 1, 1, 1])
    assert schedule.n_intervals == 2
    assert schedule.n_padding_bits == 2


def test_bad_bits():
    with pytest.raises(ChannelDataError) as _:
        modulate(SchemeConfig("MSSK", 8), [0, 2, 1])
    with pytest.raises(ValueError) as _:
        modulate(SchemeConfig("MSSK", 8), [0, 1, 1, 0], n_symbols=1)


def test_alphabet_sizes():
    for scheme, n_tx, size in [
        ("MSSK", 8, 8), ("QMSSK", 4, 16), ("MSM", 8, 16), ("SISO_DMOSK", 1, 4),
    ]:
        alphabet = symbol_alphabet(SchemeConfig(scheme, n_tx))
        assert alphabet.n_symbols == size
        assert alphabet.emissions.shape[0] == size


def test_alphabet_numbering():
    """QMSSK symbol a * n + b is antenna a on type A and b on type B; MSM
    symbol m * n + a is antenna a on type m."""
    qmssk = symbol_alphabet(SchemeConfig("QMSSK", 4))
    assert qmssk.emissions[1 * 4 + 3, 1, 0] > 0
    assert qmssk.emissions[1 * 4 + 3, 3, 1] > 0
    msm = symbol_alphabet(SchemeConfig("MSM", 4))
    assert np.flatnonzero(msm.emissions[4 + 2, :, 1]).tolist() == [2]
    assert not msm.emissions[4 + 2, :, 0].any()


def test_error_weights():
    alphabet = symbol_alphabet(SchemeConfig("MSSK", 8, mapping="gray"))
    weights = alphabet.error_weights()
    assert np.all(np.diag(weights) == 0)
    assert weights[0, 1] == pytest.approx(1 / 3)
    assert weights[0, 7] == pytest.approx(1 / 3)
    assert alphabet.bit_errors(0, 5).item() == 3


def test_symbol_bits_match_modulation():
    cfg = SchemeConfig("MSM", 4, mapping="gray")
    table = symbol_bits(cfg)
    alphabet = symbol_alphabet(cfg)
    for symbol, bits in enumerate(table):
        s = modulate(cfg, bits).s[:, 0, :]
        assert np.array_equal(s, alphabet.emissions[symbol])
