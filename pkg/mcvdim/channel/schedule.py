from dataclasses import dataclass

import numpy as np

from mcvdim.exceptions import ChannelDataError


def _count_array(values, name):
    arr = np.asarray(values)
    if arr.ndim != 3:
        raise ChannelDataError(
            f"{name} must be a 3-D array, got {arr.ndim} dimensions."
        )
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr != np.rint(arr))):
        raise ChannelDataError(f"{name} must hold integer molecule counts.")
    if arr.size and arr.min() < 0:
        raise ChannelDataError(f"{name} must be non-negative.")
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TransmissionSchedule:
    """Molecules released per transmitter, symbol interval and molecule type.

    Attributes:
        s (numpy.ndarray): read-only ``(n_tx, n_intervals, n_types)`` counts;
            type 0 is molecule A, type 1 molecule B.
        t_s (float): symbol duration, seconds.
        n_padding_bits (int): zero bits appended to fill the last symbol;
            excluded from error counting.
    """

    s: np.ndarray
    t_s: float
    n_padding_bits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "s", _count_array(self.s, "Schedule"))
        if self.s.shape[0] < 1 or self.s.shape[2] < 1:
            raise ChannelDataError("Schedule needs at least one transmitter and type.")

    @property
    def n_tx(self):
        return self.s.shape[0]

    @property
    def n_intervals(self):
        return self.s.shape[1]

    @property
    def n_types(self):
        return self.s.shape[2]


@dataclass(frozen=True, eq=False)
class ArrivalMatrix:
    """Molecules absorbed per receiver, symbol interval and molecule type.

    Attributes:
        R (numpy.ndarray): read-only ``(n_rx, n_intervals, n_types)`` counts.
    """

    R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "R", _count_array(self.R, "Arrival matrix"))

    @property
    def n_rx(self):
        return self.R.shape[0]

    @property
    def n_intervals(self):
        return self.R.shape[1]

    @property
    def n_types(self):
        return self.R.shape[2]
