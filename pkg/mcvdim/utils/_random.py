"""Random streams keyed by position rather than by draw order.

Work that is split into chunks (molecules, trials, sweep points, blocks of
symbols) draws from a stream derived from ``(seed, *key)``. The result of a
chunk therefore does not depend on which worker ran it or on how many workers
there were.
"""
import numpy as np


def derive_seed(seed, *key):
    """Build the ``SeedSequence`` for the chunk identified by ``key``.

    Args:
        seed (int or None): root entropy of the run. ``None`` draws fresh
            entropy from the OS, making the run non-reproducible.
        *key (int): position of the chunk, e.g. ``(point_index, block_index)``.

    Returns:
        numpy.random.SeedSequence
    """
    key = tuple(int(k) for k in key)
    if any(k < 0 for k in key):
        raise ValueError("Stream keys must be non-negative integers.")
    return np.random.SeedSequence(entropy=seed, spawn_key=key)


def derive_rng(seed, *key):
    """``numpy.random.Generator`` for the chunk identified by ``key``."""
    return np.random.default_rng(derive_seed(seed, *key))


def argmax_random_tie(values, rng, axis=-1):
    """Index of the maximum along ``axis``; ties are broken uniformly at
    random using ``rng``.

    Args:
        values (numpy.ndarray): scores, any shape.
        rng (numpy.random.Generator): stream consumed for the tie-break.
        axis (int, optional): axis to reduce. Defaults to -1.

    Returns:
        numpy.ndarray or int: indices with ``axis`` removed.
    """
    values = np.asarray(values)
    if values.shape[axis] == 0:
        raise ValueError("Cannot take the argmax of an empty axis.")
    is_max = values == values.max(axis=axis, keepdims=True)
    # one uniform draw per entry; only the maximal entries compete
    keys = np.where(is_max, rng.random(values.shape), -1.0)
    return keys.argmax(axis=axis)
