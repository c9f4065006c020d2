"""Checks on likelihood-based detection with the reference channel."""
import itertools

import numpy as np
import pytest
from scipy.stats import norm

from mcvdim.channel import sample_arrivals
from mcvdim.datasets import make_reference_response
from mcvdim.detection import (
    DetectorState,
    SymbolMLDetector,
    branch_cost,
    ml_sequence_detect,
    symbol_ml,
    tap_contributions,
)
from mcvdim.exceptions import InfeasibleError
from mcvdim.modulation import SchemeConfig, modulate, symbol_alphabet

# 4500 molecules per burst: decisions are error free for all practical purposes
STRONG = SchemeConfig("MSSK", 8, M_tx=3000)


def _stream(cfg, K, seed):
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, K * cfg.index_bits)
    # natural labels: the symbol index is the value of its bits
    sent = bits.reshape(K, -1) @ (1 << np.arange(cfg.index_bits)[::-1])
    cir = make_reference_response()
    R = sample_arrivals(cir, modulate(cfg, bits, K), "gaussian", rng).R
    return cir, R, sent


def test_branch_cost_degenerate_variance():
    cost = branch_cost([3.0, 3.0, 4.0], [3.0, 3.0, 3.0], [1.0, 0.0, 0.0])
    assert cost.tolist() == [0.0, 0.0, np.inf]


def test_branch_cost_literal_form():
    """The un-squared residual can reward counts below the mean."""
    squared = float(branch_cost(1.0, 3.0, 1.0))
    literal = float(branch_cost(1.0, 3.0, 1.0, squared_residual=False))
    assert squared == pytest.approx(4.0)
    assert literal == pytest.approx(-2.0)


def test_tap_contributions_shape():
    alphabet = symbol_alphabet(STRONG)
    mean, var = tap_contributions(make_reference_response(), alphabet.emissions)
    assert mean.shape == var.shape == (8, 5, 8, 1)
    assert mean[0, 0, 0, 0] == pytest.approx(4500 * 0.1042)
    assert mean[3, 0, 3, 0] == pytest.approx(mean[0, 0, 0, 0])


def test_symbol_ml_decodes_strong_signal():
    cir, R, sent = _stream(STRONG, 60, seed=0)
    det = SymbolMLDetector(cir, symbol_alphabet(STRONG).emissions)
    decided = det.decode(R)
    assert np.array_equal(decided, sent)
    assert det.total_symbols == 60
    assert len(det.state.history) == cir.L - 1


def test_symbol_ml_function_uses_history():
    """Feeding back the right symbols matters once ISI dominates."""
    cir, R, sent = _stream(STRONG, 10, seed=1)
    emissions = symbol_alphabet(STRONG).emissions
    state = DetectorState(cir)
    decided = [symbol_ml(R[:, k, :], state, emissions) for k in range(10)]
    assert decided == sent.tolist()
    assert list(state.history) == sent[-4:].tolist()


def test_symbol_ml_needs_channel():
    with pytest.raises(ValueError) as _:
        symbol_ml(np.zeros((8, 1)), DetectorState(), np.zeros((8, 8, 1)))


def test_literal_form_warns():
    with pytest.warns(UserWarning) as _:
        SymbolMLDetector(
            make_reference_response(), symbol_alphabet(STRONG).emissions,
            squared_residual=False,
        )


def test_sequence_detection_exhaustive_and_trellis():
    cfg = SchemeConfig("MSSK", 8, M_tx=300)
    cir, R, sent = _stream(cfg, 3, seed=3)
    emissions = symbol_alphabet(cfg).emissions
    exhaustive = ml_sequence_detect(R, cir, emissions)
    # a trellis whose states hold the whole window is exact
    trellis = ml_sequence_detect(R, cir, emissions, viterbi_memory=4)
    assert np.array_equal(exhaustive, trellis)


def test_trellis_decodes_strong_signal():
    cir, R, sent = _stream(STRONG, 80, seed=4)
    emissions = symbol_alphabet(STRONG).emissions
    decided = ml_sequence_detect(R, cir, emissions, viterbi_memory=2)
    assert np.array_equal(decided, sent)
    short = ml_sequence_detect(R[:, :4], cir, emissions, L=3)
    assert np.array_equal(short, sent[:4])


def test_enumeration_guard():
    cir = make_reference_response()
    emissions = symbol_alphabet(STRONG).emissions
    with pytest.raises(InfeasibleError) as err:
        ml_sequence_detect(np.zeros((8, 10, 1)), cir, emissions)
    assert err.value.required == 8**10
    with pytest.raises(InfeasibleError) as _:
        ml_sequence_detect(
            np.zeros((8, 10, 1)), cir, emissions, viterbi_memory=5, max_sequences=1000
        )


def test_sequence_input_checks():
    cir = make_reference_response()
    emissions = symbol_alphabet(STRONG).emissions
    with pytest.raises(ValueError) as _:
        ml_sequence_detect(np.zeros((4, 3, 1)), cir, emissions)
    with pytest.raises(ValueError) as _:
        ml_sequence_detect(np.zeros((8, 3, 1)), cir, emissions, L=9)
    with pytest.raises(ValueError) as _:
        ml_sequence_detect(np.zeros((8, 3, 1)), cir, emissions, viterbi_memory=0)


# two antennas, two receivers, two taps; receivers mirror each other
SMALL_TAPS = np.array(
    [
        [[0.30, 0.10], [0.05, 0.02]],
        [[0.05, 0.02], [0.30, 0.10]],
    ]
)


def _log_likelihoods(R, h, emissions):
    """Gaussian log-likelihood of every symbol sequence of the window, each
    interval scored with scipy's normal density."""
    K = R.shape[1]
    out = {}
    for seq in itertools.product(range(emissions.shape[0]), repeat=K):
        total = 0.0
        for z in range(K):
            mu = np.zeros(R.shape[::2])
            var = np.zeros(R.shape[::2])
            for n in range(min(h.shape[2], z + 1)):
                e = emissions[seq[z - n]]
                mu += np.einsum("ij,im->jm", h[:, :, n], e)
                var += np.einsum("ij,im->jm", h[:, :, n] * (1 - h[:, :, n]), e)
            total += norm.logpdf(R[:, z, :], mu, np.sqrt(var)).sum()
        out[seq] = total
    return out


def test_sequence_detection_maximises_likelihood():
    """Over a grid of counts up to 20 on a 2x2 channel with two taps, the
    decided pair of symbols always has the largest likelihood."""
    emissions = symbol_alphabet(SchemeConfig("MSSK", 2, M_tx=40)).emissions
    grid = range(0, 21, 2)
    for counts in itertools.product(grid, repeat=4):
        R = np.array(counts, dtype=float).reshape(2, 2, 1)
        decided = ml_sequence_detect(R, SMALL_TAPS, emissions)
        scores = _log_likelihoods(R, SMALL_TAPS, emissions)
        assert scores[tuple(decided)] == pytest.approx(
            max(scores.values()), abs=1e-9
        )


@pytest.mark.parametrize(
    "cfg, step",
    [
        (SchemeConfig("MSSK", 2, M_tx=40), 1),
        (SchemeConfig("MSM", 2, M_tx=40), 4),
    ],
)
def test_one_tap_sequence_equals_symbol_decision(cfg, step):
    """A one-interval window with one tap is the symbol-by-symbol decision
    with nothing decided before it."""
    emissions = symbol_alphabet(cfg).emissions
    shape = (2, 1, cfg.beta)
    for counts in itertools.product(range(0, 21, step), repeat=2 * cfg.beta):
        R = np.array(counts, dtype=float).reshape(shape)
        window = ml_sequence_detect(R, SMALL_TAPS, emissions, L=1)
        single = symbol_ml(R[:, 0, :], DetectorState(SMALL_TAPS), emissions)
        assert window.tolist() == [single]
