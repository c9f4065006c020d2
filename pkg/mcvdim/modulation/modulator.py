import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from mcvdim.channel import TransmissionSchedule
from mcvdim.exceptions import ChannelDataError
from mcvdim.modulation.mapping import gray_index_map
from mcvdim.modulation.schemes import SchemeConfig, derive_params


def emission_size(cfg):
    """Molecules an active antenna releases, rounded half to even (RC with
    ``M_tx = 300`` and 8 antennas sends 38 per antenna)."""
    return int(np.rint(derive_params(cfg)[1]))


def _check_bits(bits):
    bits = np.asarray(bits).ravel()
    if bits.size and not np.isin(bits, (0, 1)).all():
        raise ChannelDataError("Bit sequences may only contain 0 and 1.")
    return bits.astype(np.int64)


def modulate(cfg, bits, n_symbols=None):
    """Map information bits to the emissions of every transmit antenna.

    The bit stream is cut into groups of ``bits_per_symbol`` bits, one per
    symbol interval:

    * SISO BCSK: antenna 0 sends a burst of type A on bit 1, nothing on 0.
    * SISO D-MoSK: first bit on type A, second bit on type B, antenna 0.
    * RC: every antenna sends ``M_tx / n_tx`` on bit 1; with two types the
      two bits of a symbol go to types A and B.
    * SMUX: bit ``i`` of a symbol drives antenna ``i``; with two types bits
      ``2i`` and ``2i + 1`` drive types A and B of antenna ``i``.
    * MSSK: the group selects the single active antenna.
    * QMSSK: the first half selects the type-A antenna, the second half the
      type-B antenna.
    * MSM: the leading bit selects the type (0 is A), the rest the antenna.

    Args:
        cfg (SchemeConfig): scheme and budget.
        bits (array-like): information bits.
        n_symbols (int, optional): symbols to produce. Defaults to enough
            symbols to hold every bit. Missing bits are zero-padded with a
            warning and reported as ``n_padding_bits``.

    Raises:
        ChannelDataError: if ``bits`` holds anything but 0 and 1.
        ValueError: if more bits are given than ``n_symbols`` can carry.

    Returns:
        TransmissionSchedule
    """
    t_s, _, bps = derive_params(cfg)
    bits = _check_bits(bits)
    if n_symbols is None:
        n_symbols = -(-bits.size // bps)
    needed = int(n_symbols) * bps
    if bits.size > needed:
        raise ValueError(f"{bits.size} bits do not fit into {n_symbols} symbols.")
    padding = needed - bits.size
    if padding:
        warnings.warn(f"Padding the bit stream with {padding} zero bits.")
        bits = np.concatenate([bits, np.zeros(padding, dtype=np.int64)])
    b = bits.reshape(int(n_symbols), bps)
    K = b.shape[0]
    E = emission_size(cfg)
    s = np.zeros((cfg.n_tx, K, cfg.beta), dtype=np.int64)
    k = np.arange(K)

    if cfg.scheme in ("SISO_BCSK", "SISO_DMOSK"):
        s[0] = b * E
    elif cfg.scheme == "RC_BCSK":
        s[:] = (b * E)[None]
    elif cfg.scheme == "SMUX_BCSK":
        s[:] = (b * E).reshape(K, cfg.n_tx, cfg.beta).transpose(1, 0, 2)
    else:
        index_map = gray_index_map(cfg.n_tx, cfg.mapping)
        l = cfg.index_bits
        if cfg.scheme == "MSSK":
            s[index_map.to_index(b), k, 0] = E
        elif cfg.scheme == "QMSSK":
            s[index_map.to_index(b[:, :l]), k, 0] = E
            s[index_map.to_index(b[:, l:]), k, 1] = E
        else:
            s[index_map.to_index(b[:, 1:]), k, b[:, 0]] = E
    return TransmissionSchedule(s, t_s, padding)


@dataclass(frozen=True, eq=False)
class SymbolAlphabet:
    """Every distinct symbol a scheme can send.

    Index schemes number their symbols by antenna: MSSK symbol ``a`` is
    antenna ``a``; QMSSK symbol ``a * n + b`` is antenna ``a`` on type A and
    ``b`` on type B; MSM symbol ``m * n + a`` is antenna ``a`` on type ``m``.
    The BCSK family numbers symbols by the binary value of their bits.

    Attributes:
        emissions (numpy.ndarray): ``(n_symbols, n_tx, n_types)`` molecules.
        bits (numpy.ndarray): ``(n_symbols, bits_per_symbol)`` labels.
    """

    emissions: np.ndarray
    bits: np.ndarray

    @property
    def n_symbols(self):
        return self.emissions.shape[0]

    @property
    def bits_per_symbol(self):
        return self.bits.shape[1]

    def bit_errors(self, sent, decided):
        """Label bits in which ``decided`` differs from ``sent``."""
        return (self.bits[np.asarray(sent)] != self.bits[np.asarray(decided)]).sum(
            axis=-1
        )

    def error_weights(self):
        """``(n_symbols, n_symbols)`` fraction of bits wrong when deciding
        column symbol for the row symbol."""
        idx = np.arange(self.n_symbols)
        return self.bit_errors(idx[:, None], idx[None, :]) / self.bits_per_symbol


def symbol_bits(cfg):
    """``(n_symbols, bits_per_symbol)`` label table in alphabet order."""
    _, _, bps = derive_params(cfg)
    if not cfg.is_index_scheme:
        return np.array(list(itertools.product((0, 1), repeat=bps)), dtype=np.int64)
    table = gray_index_map(cfg.n_tx, cfg.mapping).table
    n = cfg.n_tx
    if cfg.scheme == "MSSK":
        return table
    if cfg.scheme == "QMSSK":
        return np.hstack([np.repeat(table, n, axis=0), np.tile(table, (n, 1))])
    types = np.repeat(np.arange(2), n)[:, None]
    return np.hstack([types, np.tile(table, (2, 1))])


def symbol_alphabet(cfg):
    """The :class:`SymbolAlphabet` of ``cfg``."""
    if not isinstance(cfg, SchemeConfig):
        raise TypeError("symbol_alphabet expects a SchemeConfig.")
    bits = symbol_bits(cfg)
    schedule = modulate(cfg, bits.ravel(), bits.shape[0])
    emissions = np.ascontiguousarray(schedule.s.transpose(1, 0, 2))
    bits.setflags(write=False)
    emissions.setflags(write=False)
    return SymbolAlphabet(emissions, bits)
