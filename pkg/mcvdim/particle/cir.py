import logging
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy.special import erfc

from mcvdim.exceptions import GeometryError
from mcvdim.particle.brownian import walk
from mcvdim.particle.response import ChannelResponse, shift_fill
from mcvdim.utils import derive_rng

logger = logging.getLogger(__name__)

FILL_MODES = ("shift", "independent")
#: rough single-worker throughput of the walk, molecule-steps per second
WALK_RATE = 1e7


@dataclass(frozen=True, eq=False)
class ArrivalProfile:
    """Time-resolved first absorptions of one Brownian run.

    The profile keeps the absorption step of every absorbed molecule, so the
    same run can be binned into channel responses for any symbol duration
    that is a whole number of steps and fits inside the simulated horizon.

    Attributes:
        topology (Topology): arrangement the run was made on.
        params (DiffusionParams): diffusion parameters of the run.
        n_steps (int): simulated horizon in steps.
        seed (int or None): root seed of the run.
        fill (str): ``"shift"`` when only transmitter 0 was simulated,
            ``"independent"`` when every transmitter was.
        hit_steps (tuple): per simulated transmitter, absorption steps.
        hit_rx (tuple): per simulated transmitter, absorbing receivers.
        collision_failures (int): failed reflections over the whole run.
    """

    topology: object
    params: object
    n_steps: int
    seed: object
    fill: str
    hit_steps: tuple
    hit_rx: tuple
    collision_failures: int = 0

    @property
    def n_absorbed(self):
        """Absorbed molecules per simulated transmitter."""
        return np.array([steps.size for steps in self.hit_steps])

    @property
    def n_free(self):
        """Molecules per simulated transmitter still diffusing at the horizon."""
        return self.params.n_molecules - self.n_absorbed

    def cumulative_hits(self, rx, t):
        """Fraction of transmitter-0 molecules absorbed by ``rx`` by time ``t``."""
        limit = int(round(t / self.params.dt))
        got = (self.hit_rx[0] == rx) & (self.hit_steps[0] < limit)
        return np.count_nonzero(got) / self.params.n_molecules

    def to_response(self, t_s, L):
        """Bin the run into a :class:`ChannelResponse` with memory ``L``.

        Raises:
            ValueError: if ``t_s`` is not a whole number of steps or
                ``L * t_s`` exceeds the simulated horizon.
        """
        if int(L) != L or L < 1:
            raise ValueError(f"Channel memory must be a positive integer, got {L}.")
        L = int(L)
        sps = self.params.steps_per_symbol(t_s)
        if L * sps > self.n_steps:
            raise ValueError(
                f"{L} symbols of {t_s} s exceed the simulated horizon of "
                f"{self.n_steps * self.params.dt:.6g} s."
            )
        n_rx = self.topology.n_rx
        rows = []
        for steps, rx in zip(self.hit_steps, self.hit_rx):
            bins = steps // sps
            keep = bins < L
            counts = np.bincount(rx[keep] * L + bins[keep], minlength=n_rx * L)
            rows.append(counts.reshape(n_rx, L) / self.params.n_molecules)
        h = shift_fill(rows[0]) if self.fill == "shift" else np.stack(rows)
        meta = response_meta(self.topology, self.params, self.seed, self.fill)
        return ChannelResponse(h, t_s, meta)


def response_meta(topology, params, seed, fill):
    """Metadata recorded with a simulated channel response; together with the
    tensor shape it fingerprints the run."""
    meta = dict(params.header())
    meta.update(
        (k, v) for k, v in topology.header().items() if k not in ("n_tx", "n_rx")
    )
    meta["seed"] = str(seed)
    meta["fill"] = fill
    return meta


def _walk_chunk(topology, params, source, n_molecules, n_steps, seed, chunk, absorbing):
    rng = derive_rng(seed, source, chunk)
    origins = np.repeat(topology.tx_points[source][None, :], n_molecules, axis=0)
    result = walk(
        origins, np.zeros(n_molecules, dtype=np.int64), n_steps, topology, params,
        rng, absorbing,
    )
    absorbed = result.hit_rx >= 0
    logger.debug(
        "transmitter %d chunk %d: %d of %d molecules absorbed",
        source, chunk, absorbed.sum(), n_molecules,
    )
    return (
        result.hit_step[absorbed],
        result.hit_rx[absorbed],
        result.collision_failures,
    )


def simulate_arrival_profile(
    topology,
    params,
    n_steps,
    seed=None,
    fill="shift",
    n_jobs=1,
    chunk_size=20000,
    absorbing=None,
):
    """Release ``params.n_molecules`` molecules from each simulated
    transmitter at time 0 and record their first absorptions.

    Molecules are walked in chunks of ``chunk_size``; chunk ``c`` of
    transmitter ``i`` draws from the stream ``(seed, i, c)`` and chunks are
    concatenated in order, so the profile does not depend on ``n_jobs``.

    Args:
        topology (Topology): antenna arrangement.
        params (DiffusionParams): diffusion parameters.
        n_steps (int): horizon in time steps.
        seed (int, optional): root seed. Defaults to None.
        fill (str, optional): ``"shift"`` simulates transmitter 0 only (UCA
            topologies), ``"independent"`` simulates every transmitter.
            Defaults to ``"shift"``.
        n_jobs (int, optional): joblib workers. Defaults to 1.
        chunk_size (int, optional): molecules per chunk. Defaults to 20000.
        absorbing (array-like, optional): per-receiver absorption flags.

    Raises:
        GeometryError: if shift filling is requested for a non-UCA topology.

    Returns:
        ArrivalProfile
    """
    if fill not in FILL_MODES:
        raise ValueError(f"fill must be one of {FILL_MODES}, got {fill!r}.")
    if fill == "shift" and not topology.is_uca:
        raise GeometryError(
            "Circular-shift filling needs a UCA topology; use fill='independent'."
        )
    if int(chunk_size) != chunk_size or chunk_size < 1:
        raise ValueError("chunk_size must be a positive integer.")
    sources = [0] if fill == "shift" else list(range(topology.n_tx))
    n = params.n_molecules
    sizes = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]
    jobs = [(source, c, size) for source in sources for c, size in enumerate(sizes)]
    work = n * len(sources) * int(n_steps)
    logger.info(
        "walking %d molecules from %d transmitter(s) for %d steps (%.6g s) in "
        "%d chunks: %.3g molecule-steps, about %.0f s on one worker",
        n, len(sources), n_steps, n_steps * params.dt, len(jobs), work,
        work / WALK_RATE,
    )
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_walk_chunk)(
            topology, params, source, size, n_steps, seed, c, absorbing
        )
        for source, c, size in jobs
    )
    hit_steps, hit_rx = [], []
    for k in range(len(sources)):
        mine = parts[k * len(sizes) : (k + 1) * len(sizes)]
        hit_steps.append(np.concatenate([p[0] for p in mine]))
        hit_rx.append(np.concatenate([p[1] for p in mine]))
    failures = sum(p[2] for p in parts)
    return ArrivalProfile(
        topology, params, int(n_steps), seed, fill, tuple(hit_steps), tuple(hit_rx),
        failures,
    )


def simulate_cir(
    topology, params, t_s, L, seed=None, fill="shift", n_jobs=1, chunk_size=20000
):
    """Monte Carlo channel impulse response.

    Molecules are released from transmitter 0 (every transmitter when
    ``fill="independent"``) and walked for ``L * t_s``. First absorptions are
    binned per receiver into ``L`` intervals of width ``t_s`` and divided by
    the number of molecules released.

    Args:
        topology (Topology): antenna arrangement.
        params (DiffusionParams): diffusion parameters.
        t_s (float): symbol duration, seconds.
        L (int): channel memory, symbol intervals.
        seed (int, optional): root seed. Defaults to None.
        fill (str, optional): ``"shift"`` or ``"independent"``.
        n_jobs (int, optional): joblib workers. Defaults to 1.
        chunk_size (int, optional): molecules per chunk.

    Returns:
        ChannelResponse
    """
    if int(L) != L or L < 1:
        raise ValueError(f"Channel memory must be a positive integer, got {L}.")
    n_steps = int(L) * params.steps_per_symbol(t_s)
    profile = simulate_arrival_profile(
        topology, params, n_steps, seed, fill, n_jobs, chunk_size
    )
    return profile.to_response(t_s, L)


def point_to_sphere_hitting_probability(t, D, r_r, d_c):
    """Probability that a molecule released at distance ``d_c`` from the
    centre of a lone absorbing sphere of radius ``r_r`` has been absorbed by
    time ``t``: ``(r_r / d_c) * erfc((d_c - r_r) / sqrt(4 D t))``.

    >>> round(float(point_to_sphere_hitting_probability(1e9, 79.4, 5.0, 15.0)), 3)
    0.333
    """
    t = np.asarray(t, dtype=float)
    return (r_r / d_c) * erfc((d_c - r_r) / np.sqrt(4 * D * t))
