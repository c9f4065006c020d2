"""Likelihood-based detectors under the Gaussian arrival model.

Both detectors score a hypothesis by the cost

    sum over receivers and types of  ln(var) + (R - mean)**2 / var

which is minus twice the Gaussian log-likelihood up to a constant. A term
with zero variance costs nothing when the count equals its mean and is
infinitely expensive otherwise.
"""
import logging
import warnings
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from mcvdim.channel import channel_taps
from mcvdim.detector import SymbolDetector
from mcvdim.exceptions import InfeasibleError
from mcvdim.utils import argmax_random_tie

logger = logging.getLogger(__name__)

#: default bound on enumerated sequences or trellis transitions
MAX_SEQUENCES = 10**7


def branch_cost(counts, mean, var, squared_residual=True):
    """Elementwise Gaussian cost of observing ``counts`` under ``(mean, var)``.

    Args:
        counts, mean, var (numpy.ndarray): broadcastable arrays.
        squared_residual (bool, optional): use ``(R - mean)**2``; ``False``
            selects the un-squared residual ``(R - mean)``. Defaults to True.

    Returns:
        numpy.ndarray
    """
    counts = np.asarray(counts, dtype=float)
    mean = np.asarray(mean, dtype=float)
    var = np.asarray(var, dtype=float)
    resid = counts - mean
    if squared_residual:
        resid = resid**2
    positive = var > 0
    safe = np.where(positive, var, 1.0)
    cost = np.log(safe) + resid / safe
    degenerate = np.where(counts == mean, 0.0, np.inf)
    return np.where(positive, cost, degenerate)


def tap_contributions(cir, emissions):
    """Mean and variance contributed by each symbol at each delay.

    Args:
        cir (ChannelResponse or numpy.ndarray): taps ``(n_tx, n_rx, L)``.
        emissions (numpy.ndarray): ``(n_symbols, n_tx, n_types)``.

    Returns:
        tuple: two ``(n_symbols, L, n_rx, n_types)`` arrays.
    """
    h = channel_taps(cir)
    e = np.asarray(emissions, dtype=float)
    mean = np.einsum("ijn,sim->snjm", h, e)
    var = np.einsum("ijn,sim->snjm", h * (1 - h), e)
    return mean, var


def _decide(cost, rng, axis=-1):
    if rng is None:
        return np.argmin(cost, axis=axis)
    return argmax_random_tie(-np.asarray(cost), rng, axis=axis)


def _literal_form_warning(squared_residual):
    if not squared_residual:
        warnings.warn(
            "Using the un-squared residual; the cost is no longer a likelihood."
        )


@dataclass
class DetectorState:
    """State carried by a decision-feedback detector across intervals.

    Attributes:
        cir (ChannelResponse, optional): channel used to predict arrivals.
        history (collections.deque): last ``L - 1`` decided symbols, oldest
            first. Empty means no emissions before the stream start.
        threshold (float, optional): threshold for count-based detectors.
    """

    cir: object = None
    history: deque = field(default_factory=deque)
    threshold: float = None

    def __post_init__(self):
        memory = 0 if self.cir is None else channel_taps(self.cir).shape[2] - 1
        self.history = deque(self.history, maxlen=memory)


def _past_moments(mean_taps, var_taps, history):
    shape = mean_taps.shape[2:]
    mu = np.zeros(shape)
    var = np.zeros(shape)
    for n, symbol in enumerate(reversed(history), start=1):
        mu += mean_taps[symbol, n]
        var += var_taps[symbol, n]
    return mu, var


def symbol_ml(counts, state, emissions, rng=None, squared_residual=True,
              _taps=None):
    """Symbol-by-symbol maximum likelihood decision with decision feedback.

    The arrivals expected from earlier symbols are predicted from the
    decisions in ``state.history``; each hypothesis adds its own first-tap
    arrivals, and the hypothesis with the largest Gaussian log-likelihood
    summed over receivers wins. The decision is appended to the history.

    Args:
        counts (array-like): ``(n_rx, n_types)`` arrivals of the interval.
        state (DetectorState): channel and decision history.
        emissions (numpy.ndarray): ``(n_symbols, n_tx, n_types)`` alphabet.
        rng (numpy.random.Generator, optional): tie-break stream. Without it
            ties go to the lowest symbol index.
        squared_residual (bool, optional): see :func:`branch_cost`.

    Raises:
        ValueError: if ``state`` holds no channel response.

    Returns:
        int: decided symbol.
    """
    if state.cir is None:
        raise ValueError("Symbol-by-symbol ML detection needs a channel response.")
    mean_taps, var_taps = (
        tap_contributions(state.cir, emissions) if _taps is None else _taps
    )
    counts = np.asarray(counts, dtype=float).reshape(mean_taps.shape[2:])
    mu_past, var_past = _past_moments(mean_taps, var_taps, state.history)
    mu = mu_past + mean_taps[:, 0]
    var = var_past + var_taps[:, 0]
    cost = branch_cost(counts, mu, var, squared_residual).sum(axis=(1, 2))
    decision = int(_decide(cost, rng))
    state.history.append(decision)
    return decision


class SymbolMLDetector(SymbolDetector):
    """Stream decoder wrapping :func:`symbol_ml`.

    Attributes:
        state (DetectorState): channel and decision history.
    """

    def __init__(self, cir, emissions, rng=None, squared_residual=True):
        self.state = DetectorState(cir)
        super().__init__(memory=self.state.history.maxlen)
        self.emissions = np.asarray(emissions)
        self.rng = rng
        self.squared_residual = squared_residual
        _literal_form_warning(squared_residual)
        self._taps = tap_contributions(cir, self.emissions)

    def update(self, counts):
        """Decide the symbol of one interval.

        Args:
            counts (array-like): ``(n_rx, n_types)`` arrivals.

        Returns:
            int: decided symbol.
        """
        counts = self._validate_counts(counts)
        super().update(counts)
        decision = symbol_ml(
            counts, self.state, self.emissions, self.rng, self.squared_residual,
            _taps=self._taps,
        )
        self._history.append(decision)
        return decision

    def reset(self):
        super().reset()
        self.state.history.clear()

    def decode(self, R):
        """Decide every interval of ``R`` (``(n_rx, K, n_types)``) in order."""
        R = np.asarray(R)
        return np.array([self.update(R[:, k, :]) for k in range(R.shape[1])])


def _sequence_costs(R, seqs, mean_taps, var_taps, squared_residual):
    """Total cost of each candidate sequence ``seqs`` (``(B, K)``), assuming
    nothing was emitted before the window."""
    B, K = seqs.shape
    L = mean_taps.shape[1]
    mu = np.zeros((B, K) + mean_taps.shape[2:])
    var = np.zeros_like(mu)
    for n in range(min(L, K)):
        mu[:, n:] += mean_taps[seqs[:, : K - n], n]
        var[:, n:] += var_taps[seqs[:, : K - n], n]
    # R is (n_rx, K, n_types); move intervals to the front
    obs = np.moveaxis(R, 1, 0)[None]
    return branch_cost(obs, mu, var, squared_residual).sum(axis=(1, 2, 3))


def _exhaustive(R, mean_taps, var_taps, rng, squared_residual, max_sequences,
                block=4096):
    n_symbols = mean_taps.shape[0]
    K = R.shape[1]
    required = n_symbols**K
    if required > max_sequences:
        raise InfeasibleError(required, max_sequences)
    costs = np.empty(required)
    for start in range(0, required, block):
        stop = min(start + block, required)
        seqs = np.stack(
            np.unravel_index(np.arange(start, stop), (n_symbols,) * K), axis=1
        )
        costs[start:stop] = _sequence_costs(
            R, seqs, mean_taps, var_taps, squared_residual
        )
    best = int(_decide(costs, rng))
    return np.array(np.unravel_index(best, (n_symbols,) * K), dtype=np.int64)


def _viterbi(R, mean_taps, var_taps, memory, rng, squared_residual, max_sequences):
    """Truncated trellis search. A state is the last ``memory - 1`` symbols
    of a survivor; arrivals from older symbols are predicted from the
    survivor's own path."""
    n_symbols, L = mean_taps.shape[:2]
    K = R.shape[1]
    n_states = n_symbols ** (memory - 1)
    required = n_states * n_symbols
    if required > max_sequences:
        raise InfeasibleError(required, max_sequences, what="trellis transitions")
    tail = max(L - 1, 0)
    obs = np.moveaxis(np.asarray(R, dtype=float), 1, 0)

    keys = np.zeros(1, dtype=np.int64)
    costs = np.zeros(1)
    # last L - 1 symbols of each survivor, most recent last; -1 before start
    recent = np.full((1, tail), -1, dtype=np.int64)
    parents, choices = [], []
    symbols = np.arange(n_symbols)
    for z in range(K):
        mu = np.zeros((keys.size,) + mean_taps.shape[2:])
        var = np.zeros_like(mu)
        for n in range(1, min(L, z + 1)):
            past = recent[:, tail - n]
            mu += mean_taps[past, n]
            var += var_taps[past, n]
        mu = mu[:, None] + mean_taps[None, :, 0]
        var = var[:, None] + var_taps[None, :, 0]
        step = branch_cost(obs[z], mu, var, squared_residual).sum(axis=(2, 3))
        total = (costs[:, None] + step).ravel()
        new_keys = ((keys[:, None] * n_symbols + symbols[None]) % n_states).ravel()
        candidate = np.arange(total.size)
        order = np.lexsort((candidate, total, new_keys))
        _, first = np.unique(new_keys[order], return_index=True)
        keep = order[first]
        parent, choice = np.divmod(keep, n_symbols)
        parents.append(parent)
        choices.append(choice)
        keys = new_keys[keep]
        costs = total[keep]
        if tail:
            recent = np.concatenate([recent[parent, 1:], choice[:, None]], axis=1)

    end = int(_decide(costs, rng))
    path = np.empty(K, dtype=np.int64)
    for z in range(K - 1, -1, -1):
        path[z] = choices[z][end]
        end = parents[z][end]
    return path


def ml_sequence_detect(
    Q,
    cir,
    emissions,
    L=None,
    viterbi_memory=None,
    squared_residual=True,
    max_sequences=MAX_SEQUENCES,
    rng=None,
):
    """Maximum likelihood sequence detection over a window of intervals.

    Without ``viterbi_memory`` every symbol sequence of the window's length is
    scored exhaustively. With ``viterbi_memory = L_v`` a trellis with
    ``n_symbols ** (L_v - 1)`` states is searched instead, so windows of any
    length can be decoded.

    Args:
        Q (ArrivalMatrix or numpy.ndarray): ``(n_rx, K, n_types)`` arrivals.
        cir (ChannelResponse or numpy.ndarray): channel taps.
        emissions (numpy.ndarray): ``(n_symbols, n_tx, n_types)`` alphabet.
        L (int, optional): channel memory to use; the channel is truncated to
            it. Defaults to the full memory of ``cir``.
        viterbi_memory (int, optional): trellis memory ``L_v >= 1``.
        squared_residual (bool, optional): see :func:`branch_cost`.
        max_sequences (int, optional): enumeration guard. Defaults to 10**7.
        rng (numpy.random.Generator, optional): tie-break stream.

    Raises:
        InfeasibleError: if the enumeration would exceed ``max_sequences``.

    Returns:
        numpy.ndarray: ``(K,)`` decided symbols.
    """
    _literal_form_warning(squared_residual)
    R = np.asarray(getattr(Q, "R", Q), dtype=float)
    h = channel_taps(cir)
    if L is not None:
        if int(L) != L or not 1 <= L <= h.shape[2]:
            raise ValueError(f"L must be in [1, {h.shape[2]}], got {L}.")
        h = h[:, :, : int(L)]
    mean_taps, var_taps = tap_contributions(h, emissions)
    if R.ndim != 3 or (R.shape[0],) + R.shape[2:] != mean_taps.shape[2:]:
        raise ValueError(f"Arrivals of shape {R.shape} do not fit the channel.")
    if viterbi_memory is None:
        return _exhaustive(
            R, mean_taps, var_taps, rng, squared_residual, max_sequences
        )
    if int(viterbi_memory) != viterbi_memory or viterbi_memory < 1:
        raise ValueError(f"viterbi_memory must be >= 1, got {viterbi_memory}.")
    return _viterbi(
        R, mean_taps, var_taps, int(viterbi_memory), rng, squared_residual,
        max_sequences,
    )
