import numpy as np

from mcvdim.channel.schedule import ArrivalMatrix, TransmissionSchedule
from mcvdim.exceptions import ChannelDataError

ARRIVAL_MODES = ("binomial", "gaussian")


def channel_taps(cir):
    """Tap tensor of ``cir`` (a ChannelResponse or a raw ``(n_tx, n_rx, L)``
    array), checked to hold probabilities.

    Raises:
        ChannelDataError: if any tap lies outside ``[0, 1]``.
    """
    h = np.asarray(getattr(cir, "h", cir), dtype=float)
    if h.ndim != 3:
        raise ChannelDataError("Channel taps must be an (n_tx, n_rx, L) array.")
    if h.size and (not np.all(np.isfinite(h)) or h.min() < 0 or h.max() > 1):
        raise ChannelDataError("Channel taps must lie in [0, 1].")
    return h


def _schedule_counts(h, schedule):
    s = schedule.s if isinstance(schedule, TransmissionSchedule) else schedule
    s = np.asarray(s)
    if s.ndim != 3 or s.shape[0] != h.shape[0]:
        raise ChannelDataError(
            f"Schedule shape {s.shape} does not match {h.shape[0]} transmitters."
        )
    return s


def schedule_moments(cir, schedule):
    """Mean and variance of the arrivals for every receiver, interval and
    molecule type under the independent-Binomial channel model.

    Emissions before the first interval are taken as zero.

    Args:
        cir (ChannelResponse or numpy.ndarray): channel taps.
        schedule (TransmissionSchedule or numpy.ndarray): emissions
            ``(n_tx, K, n_types)``.

    Returns:
        tuple: ``(mean, var)``, each of shape ``(n_rx, K, n_types)``.
    """
    h = channel_taps(cir)
    s = _schedule_counts(h, schedule).astype(float)
    n_tx, n_rx, L = h.shape
    K, n_types = s.shape[1], s.shape[2]
    mean = np.zeros((n_rx, K, n_types))
    var = np.zeros((n_rx, K, n_types))
    for n in range(min(L, K)):
        tap = h[:, :, n]
        mean[:, n:, :] += np.einsum("ij,ikm->jkm", tap, s[:, : K - n, :])
        var[:, n:, :] += np.einsum("ij,ikm->jkm", tap * (1 - tap), s[:, : K - n, :])
    return mean, var


def arrival_moments(cir, schedule, j, k, m=0):
    """Mean and variance of the arrivals at receiver ``j`` in interval ``k``
    for molecule type ``m`` (all 0-based).

    >>> import numpy as np
    >>> h = np.array([[[0.1042]]])
    >>> s = np.array([[[450]]])
    >>> mean, var = arrival_moments(h, s, 0, 0)
    >>> round(mean, 2), round(var, 3)
    (46.89, 42.004)
    """
    h = channel_taps(cir)
    s = _schedule_counts(h, schedule).astype(float)
    L = h.shape[2]
    mean = var = 0.0
    for n in range(min(L, k + 1)):
        tap = h[:, j, n]
        emitted = s[:, k - n, m]
        mean += float(emitted @ tap)
        var += float(emitted @ (tap * (1 - tap)))
    return mean, var


def sample_arrivals(cir, schedule, mode="gaussian", rng=None):
    """Draw arrival counts for a schedule.

    In ``"binomial"`` mode every (emission batch, tap, receiver) triple
    contributes an independent ``Binomial(s, h)`` draw. In ``"gaussian"``
    mode one ``Normal(mean, var)`` draw is taken per receiver, interval and
    type, rounded to the nearest integer and clipped at zero; a zero variance
    returns the mean.

    Args:
        cir (ChannelResponse or numpy.ndarray): channel taps.
        schedule (TransmissionSchedule or numpy.ndarray): emissions.
        mode (str, optional): ``"binomial"`` or ``"gaussian"``. Defaults to
            ``"gaussian"``.
        rng (numpy.random.Generator, optional): random stream. Defaults to a
            freshly seeded generator.

    Returns:
        ArrivalMatrix
    """
    if mode not in ARRIVAL_MODES:
        raise ValueError(f"mode must be one of {ARRIVAL_MODES}, got {mode!r}.")
    rng = np.random.default_rng() if rng is None else rng
    h = channel_taps(cir)
    s = _schedule_counts(h, schedule)
    if mode == "gaussian":
        mean, var = schedule_moments(h, s)
        draws = rng.normal(mean, np.sqrt(var))
        return ArrivalMatrix(np.clip(np.rint(draws), 0, None))

    n_tx, n_rx, L = h.shape
    K, n_types = s.shape[1], s.shape[2]
    R = np.zeros((n_rx, K, n_types), dtype=np.int64)
    for n in range(min(L, K)):
        trials = s[:, None, : K - n, :]
        p = h[:, :, n, None, None]
        R[:, n:, :] += rng.binomial(trials, p).sum(axis=0)
    return ArrivalMatrix(R)
