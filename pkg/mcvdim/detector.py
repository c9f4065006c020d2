from abc import ABC, abstractmethod
from collections import deque

import numpy as np


class SymbolDetector(ABC):
    """
    Abstract base class for detectors that decide one symbol interval at a
    time and may feed their own decisions back into later ones.
    Minimally implements the bookkeeping common to all stream based
    detectors.
    """

    def __init__(self, memory=0, *args, **kwargs):
        self._total_symbols = 0
        self._symbols_since_reset = 0
        self._history = deque(maxlen=max(int(memory), 0))
        self._input_shape = None

    @abstractmethod
    def update(self, counts):
        """
        Update detector with the arrival counts of one symbol interval and
        return its decision.

        Args:
            counts (numpy.ndarray): arrivals of the current interval.
        """
        self.total_symbols += 1
        self.symbols_since_reset += 1

    @abstractmethod
    def reset(self, *args, **kwargs):
        """
        Forget earlier decisions, as at the start of a new stream.
        """
        self.symbols_since_reset = 0
        self._history.clear()

    def _validate_counts(self, counts):
        """Validate that ``counts`` holds non-negative arrivals shaped like
        earlier input. If there is no earlier input, store the shape.

        Args:
            counts (array-like): arrivals of one interval.

        Raises:
            ValueError: if counts are negative or their shape changed.
        """
        ary = np.asarray(counts, dtype=float)
        if ary.size and ary.min() < 0:
            raise ValueError("Arrival counts must be non-negative.")
        if self._input_shape is None:
            self._input_shape = ary.shape
        elif ary.shape != self._input_shape:
            raise ValueError(
                f"Counts of shape {ary.shape} do not match prior input "
                f"{self._input_shape}."
            )
        return ary

    @property
    def total_symbols(self):
        """Total number of intervals the detector has been updated with.

        Returns:
            int
        """
        return self._total_symbols

    @total_symbols.setter
    def total_symbols(self, value):
        self._total_symbols = value

    @property
    def symbols_since_reset(self):
        """Number of intervals since the last reset.

        Returns:
            int
        """
        return self._symbols_since_reset

    @symbols_since_reset.setter
    def symbols_since_reset(self, value):
        self._symbols_since_reset = value

    @property
    def history(self):
        """Most recent decisions, oldest first, at most ``memory`` long."""
        return list(self._history)
