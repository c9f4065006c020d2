import numpy as np


def _counts(counts):
    counts = np.asarray(counts)
    if counts.ndim == 0 or counts.shape[0] == 0:
        raise ValueError("Combining needs the counts of at least one antenna.")
    return counts


def combine_sc(counts):
    """Selection combining: the largest count over antennas (axis 0).

    >>> int(combine_sc([5, 9, 2]))
    9
    """
    return _counts(counts).max(axis=0)


def combine_egc(counts):
    """Equal gain combining: the sum of counts over antennas (axis 0).

    >>> int(combine_egc([5, 9, 2]))
    16
    """
    return _counts(counts).sum(axis=0)


COMBINERS = {"sc": combine_sc, "egc": combine_egc}
