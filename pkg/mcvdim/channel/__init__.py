"""
The statistical channel replaces the Brownian walk by independent per-tap
arrival events once the channel impulse response is known. A molecule sent
by transmitter ``i`` at interval ``z`` lands at receiver ``j`` in interval
``k`` with probability ``h[i, j, k - z]``; summing these events over the
channel memory gives the arrival counts. Counts can be drawn exactly
(``"binomial"``) or from the Gaussian approximation (``"gaussian"``), which
is accurate in the regimes where the expected counts are in the tens.

Molecule types are treated as orthogonal channels sharing the same taps.
"""

from mcvdim.channel.schedule import ArrivalMatrix, TransmissionSchedule
from mcvdim.channel.statistical import (
    ARRIVAL_MODES,
    arrival_moments,
    channel_taps,
    sample_arrivals,
    schedule_moments,
)
