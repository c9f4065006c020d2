import numpy as np

from mcvdim.exceptions import UnsupportedConfigurationError
from mcvdim.utils import argmax_random_tie


def mcd_mssk(counts, rng):
    """Maximum count detection: the antenna (axis 0) with the most arrivals.
    Ties are broken uniformly at random.

    Args:
        counts (array-like): ``(n_rx, ...)`` arrivals.
        rng (numpy.random.Generator): stream for tie-breaking.

    Returns:
        int or numpy.ndarray: decided antenna index.
    """
    counts = np.asarray(counts)
    if counts.ndim == 0 or counts.shape[0] < 2:
        raise ValueError("Maximum count detection needs at least two antennas.")
    return argmax_random_tie(counts, rng, axis=0)


def mcd_msm(counts_a, counts_b, rng):
    """Maximum count detection for spatial modulation with two molecule types.

    The antenna is the one holding the largest count of either type; the type
    is the one with the larger count at that antenna, type A on a tie.

    Args:
        counts_a (array-like): ``(n_rx, ...)`` arrivals of type A.
        counts_b (array-like): ``(n_rx, ...)`` arrivals of type B.
        rng (numpy.random.Generator): stream for tie-breaking.

    Returns:
        tuple: ``(type, antenna)``, type 0 for A and 1 for B.
    """
    a = np.asarray(counts_a)
    b = np.asarray(counts_b)
    if a.shape != b.shape:
        raise ValueError("Both molecule types need counts for the same antennas.")
    antenna = mcd_mssk(np.maximum(a, b), rng)
    pick = np.expand_dims(antenna, 0)
    kind = (np.take_along_axis(b, pick, 0) > np.take_along_axis(a, pick, 0))[0]
    if np.ndim(kind) == 0:
        return int(kind), int(antenna)
    return kind.astype(int), antenna


def decode_max_count(cfg, counts, rng):
    """Maximum count decisions of an index scheme, as alphabet symbols.

    Args:
        cfg (SchemeConfig): MSSK, QMSSK or MSM configuration.
        counts (numpy.ndarray): ``(n_rx, ..., n_types)`` arrivals.
        rng (numpy.random.Generator): stream for tie-breaking.

    Returns:
        numpy.ndarray: symbol indices in the numbering of
        :func:`~mcvdim.modulation.symbol_alphabet`.
    """
    counts = np.asarray(counts)
    n = cfg.n_tx
    if cfg.scheme == "MSSK":
        return mcd_mssk(counts[..., 0], rng)
    if cfg.scheme == "QMSSK":
        return mcd_mssk(counts[..., 0], rng) * n + mcd_mssk(counts[..., 1], rng)
    if cfg.scheme == "MSM":
        kind, antenna = mcd_msm(counts[..., 0], counts[..., 1], rng)
        return kind * n + antenna
    raise UnsupportedConfigurationError(
        f"Maximum count detection does not apply to {cfg.scheme}."
    )
