import logging

import numpy as np
from joblib import Parallel, delayed

from mcvdim.channel import channel_taps
from mcvdim.exceptions import InfeasibleError, UnsupportedConfigurationError
from mcvdim.modulation import (
    SchemeConfig,
    emission_size,
    gray_index_map,
    symbol_alphabet,
)
from mcvdim.theory.enumeration import SequenceEnumerator
from mcvdim.theory.gaussian import p_max_vector

logger = logging.getLogger(__name__)

#: default bound on enumerated symbol sequences
MAX_SEQUENCES = 10**7
# sequences per work item; fixed so that sums do not depend on n_jobs
_BLOCK = 512


class _Model:
    """Everything needed to score one symbol sequence under maximum count
    detection. Decision candidates are the entries of the flattened
    ``(n_types, n_rx)`` count vector."""

    def __init__(self, h, emissions, weights, n_antennas):
        e = np.asarray(emissions, dtype=float)
        # (n_symbols, L, n_types, n_rx)
        self.mean = np.einsum("ijn,sim->snmj", h, e)
        self.var = np.einsum("ijn,sim->snmj", h * (1 - h), e)
        self.weights = np.asarray(weights, dtype=float)
        self.n_antennas = n_antennas

    @property
    def n_symbols(self):
        return self.mean.shape[0]

    @property
    def L(self):
        return self.mean.shape[1]

    def p_max(self, seq):
        """Probability of each candidate winning for the last symbol of ``seq``."""
        L = len(seq)
        mu = sum(self.mean[seq[L - 1 - n], n] for n in range(L))
        var = sum(self.var[seq[L - 1 - n], n] for n in range(L))
        return p_max_vector(mu.ravel(), var.ravel())

    def conditional(self, seq):
        return float(self.p_max(seq) @ self.weights[seq[-1]])

    def rotate(self, symbol, r):
        """Symbol obtained by moving the active antenna ``r`` places."""
        n = self.n_antennas
        return symbol // n * n + (symbol % n + r) % n


def _mssk_weights(n, mapping):
    index_map = mapping if hasattr(mapping, "distance_matrix") else gray_index_map(
        n, mapping
    )
    return index_map.distance_matrix() / index_map.n_bits


def _mssk_model(cir, mapping, emission):
    h = channel_taps(cir)
    n = h.shape[0]
    if h.shape[1] != n:
        raise UnsupportedConfigurationError("MSSK needs one receiver per antenna.")
    emissions = np.eye(n)[:, :, None] * emission
    return _Model(h, emissions, _mssk_weights(n, mapping), n)


def conditional_ber(seq, cir, mapping, emission):
    """Bit error probability of the last symbol of an MSSK antenna sequence
    under maximum count detection.

    The arrival moments at every receiver follow from the sequence and the
    channel; each wrong decision is weighted by the Hamming distance of its
    label to the sent label, over the bits per symbol.

    Args:
        seq (array-like): active antennas, oldest first; its length is the
            channel memory used.
        cir (ChannelResponse or numpy.ndarray): channel taps; truncated to
            ``len(seq)``.
        mapping (str or IndexMap): antenna labels.
        emission (float): molecules per active antenna.

    Returns:
        float
    """
    seq = np.asarray(seq, dtype=np.int64).ravel()
    h = channel_taps(cir)
    if not 1 <= seq.size <= h.shape[2]:
        raise ValueError(f"Sequence length must be in [1, {h.shape[2]}].")
    model = _mssk_model(h[:, :, : seq.size], mapping, emission)
    return model.conditional(seq)


def _block_sum(model, enum, start, stop, last_symbols, rotations):
    """Sum of conditional error probabilities over the prefixes of rank
    ``start`` to ``stop - 1``, each completed by every symbol of
    ``last_symbols`` and, when ``rotations`` is set, by every rotation."""
    total = 0.0
    n = model.n_antennas
    for prefix in enum.block(start, stop):
        for last in last_symbols:
            seq = np.append(prefix, last)
            p = model.p_max(seq)
            if not rotations:
                total += p @ model.weights[last]
                continue
            p = p.reshape(-1, n)
            for r in range(n):
                rotated = np.roll(p, r, axis=1).ravel()
                total += rotated @ model.weights[model.rotate(last, r)]
    return total


def _average(model, circulant, n_jobs, max_sequences):
    required = model.n_symbols**model.L
    if required > max_sequences:
        raise InfeasibleError(required, max_sequences)
    n = model.n_antennas
    enum = SequenceEnumerator(model.n_symbols, model.L - 1)
    if circulant:
        # sequences ending in antenna 0; the rest are rotations of them
        last = [m * n for m in range(model.n_symbols // n)]
    else:
        last = list(range(model.n_symbols))
    blocks = [
        (a, min(a + _BLOCK, len(enum))) for a in range(0, len(enum), _BLOCK)
    ]
    logger.info(
        "evaluating %d sequences in %d blocks%s",
        required, len(blocks), " using rotations" if circulant else "",
    )
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_block_sum)(model, enum, a, b, last, circulant) for a, b in blocks
    )
    # fixed-order reduction
    return float(np.sum(parts)) / required


def _is_circulant(h):
    n = h.shape[0]
    return h.shape[1] == n and all(
        np.array_equal(h[i], np.roll(h[0], i, axis=0)) for i in range(1, n)
    )


def theoretical_ber_mssk(
    cir, L, mapping, emission, n_jobs=1, max_sequences=MAX_SEQUENCES
):
    """Bit error probability of MSSK with maximum count detection, averaged
    over all ``n_tx ** L`` equiprobable antenna sequences.

    Args:
        cir (ChannelResponse or numpy.ndarray): channel taps; truncated to
            ``L``.
        L (int): channel memory to account for.
        mapping (str or IndexMap): antenna labels.
        emission (float): molecules per active antenna.
        n_jobs (int, optional): joblib workers. Defaults to 1.
        max_sequences (int, optional): enumeration guard. Defaults to 10**7.

    Raises:
        InfeasibleError: if ``n_tx ** L`` exceeds ``max_sequences``.

    Returns:
        float
    """
    h = _truncated(cir, L)
    model = _mssk_model(h, mapping, emission)
    return _average(model, _is_circulant(h), n_jobs, max_sequences)


def _truncated(cir, L):
    h = channel_taps(cir)
    if int(L) != L or not 1 <= L <= h.shape[2]:
        raise ValueError(f"L must be in [1, {h.shape[2]}], got {L}.")
    return h[:, :, : int(L)]


def theoretical_ber(cfg, cir, L=None, n_jobs=1, max_sequences=MAX_SEQUENCES):
    """Bit error probability of an index scheme under maximum count detection.

    MSSK averages over ``n_tx ** L`` sequences. QMSSK runs two independent
    MSSK streams over orthogonal molecule types, so its error probability is
    that of MSSK with the same emission. MSM averages over ``(2 n_tx) ** L``
    (type, antenna) sequences; the detector picks the largest of all
    ``2 n_tx`` counts.

    Args:
        cfg (SchemeConfig): scheme, budget and mapping.
        cir (ChannelResponse or numpy.ndarray): channel taps.
        L (int, optional): channel memory. Defaults to the full memory of
            ``cir``.
        n_jobs (int, optional): joblib workers. Defaults to 1.
        max_sequences (int, optional): enumeration guard.

    Raises:
        UnsupportedConfigurationError: for schemes outside the index family.
        InfeasibleError: if the enumeration exceeds ``max_sequences``.

    Returns:
        float
    """
    if not isinstance(cfg, SchemeConfig) or not cfg.is_index_scheme:
        raise UnsupportedConfigurationError(
            "Theoretical BER is available for MSSK, QMSSK and MSM."
        )
    h = channel_taps(cir)
    L = h.shape[2] if L is None else L
    if cfg.scheme in ("MSSK", "QMSSK"):
        return theoretical_ber_mssk(
            cir, L, cfg.mapping, emission_size(cfg), n_jobs, max_sequences
        )
    h = _truncated(cir, L)
    alphabet = symbol_alphabet(cfg)
    model = _Model(h, alphabet.emissions, alphabet.error_weights(), cfg.n_tx)
    return _average(model, _is_circulant(h), n_jobs, max_sequences)
