import numpy as np

from mcvdim.detector import SymbolDetector


def ftd(count, gamma):
    """Fixed threshold decision: bit 1 when ``count >= gamma``.

    >>> ftd(0, 1), ftd(4, 4)
    (0, 1)
    """
    if np.any(np.asarray(gamma) < 0):
        raise ValueError("The threshold must be non-negative.")
    out = (np.asarray(count) >= gamma).astype(int)
    return int(out) if out.ndim == 0 else out


def atd(count_k, count_prev):
    """Adaptive threshold decision: bit 1 when the count rose since the
    previous interval.

    >>> atd(10, 3), atd(3, 10)
    (1, 0)
    """
    out = (np.asarray(count_k) > np.asarray(count_prev)).astype(int)
    return int(out) if out.ndim == 0 else out


def atd_decode(counts, gamma):
    """Adaptive threshold decisions for a whole stream of combined counts.
    The first interval has no predecessor and falls back to :func:`ftd`.

    Args:
        counts (array-like): combined counts, one per interval (last axis).
        gamma (float): fallback threshold.

    Returns:
        numpy.ndarray: bits.
    """
    counts = np.asarray(counts)
    bits = np.empty(counts.shape, dtype=int)
    if counts.shape[-1] == 0:
        return bits
    bits[..., 0] = ftd(counts[..., 0], gamma)
    bits[..., 1:] = atd(counts[..., 1:], counts[..., :-1])
    return bits


def calibrate_threshold(counts, bits):
    """Threshold minimising the fixed-threshold bit errors on a calibration
    run. The smallest minimiser is returned.

    >>> calibrate_threshold([0, 1, 5, 7], [0, 0, 1, 1])
    2

    Args:
        counts (array-like): combined counts of the calibration symbols.
        bits (array-like): bits that were sent.

    Returns:
        int: threshold ``gamma``.
    """
    counts = np.asarray(counts, dtype=np.int64).ravel()
    bits = np.asarray(bits).ravel()
    if counts.shape != bits.shape or counts.size == 0:
        raise ValueError("Need one sent bit per calibration count.")
    top = int(counts.max()) + 1
    ones = np.bincount(counts[bits == 1], minlength=top + 1)
    zeros = np.bincount(counts[bits == 0], minlength=top + 1)
    # gamma = g misses ones below g and flags zeros at or above g
    missed = np.concatenate([[0], np.cumsum(ones)[:-1]])
    false = zeros[::-1].cumsum()[::-1]
    return int(np.argmin(missed + false))


class AdaptiveThresholdDetector(SymbolDetector):
    """Stream decoder for the adaptive threshold rule.

    Each combined count is compared with the count of the previous interval;
    the first interval after a reset is compared with the fixed threshold
    ``gamma`` instead.

    Attributes:
        gamma (float): fallback threshold.
    """

    def __init__(self, gamma=0):
        super().__init__(memory=1)
        if gamma < 0:
            raise ValueError("The threshold must be non-negative.")
        self.gamma = gamma
        self._previous = None

    def update(self, counts):
        """Decide the bit of one interval.

        Args:
            counts (float): combined count of the interval.

        Returns:
            int: decided bit.
        """
        count = float(self._validate_counts(counts))
        super().update(counts)
        if self._previous is None:
            bit = ftd(count, self.gamma)
        else:
            bit = atd(count, self._previous)
        self._previous = count
        self._history.append(bit)
        return bit

    def reset(self):
        super().reset()
        self._previous = None
