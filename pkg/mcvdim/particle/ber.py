import logging
import time

import numpy as np
from joblib import Parallel, delayed

from mcvdim.detection import decode_max_count
from mcvdim.exceptions import UnsupportedConfigurationError
from mcvdim.modulation import derive_params, symbol_alphabet
from mcvdim.particle.brownian import walk
from mcvdim.utils import derive_rng

logger = logging.getLogger(__name__)


def _trial_chunk(cfg, alphabet, topology, params, L, sps, n_trials, seed, chunk):
    """Bit errors of ``n_trials`` independent trials drawn from stream
    ``(seed, chunk)``."""
    rng = derive_rng(seed, chunk)
    symbols = rng.integers(0, alphabet.n_symbols, size=(n_trials, L))
    # (trial, interval, tx, type) molecule counts
    emitted = alphabet.emissions[symbols]
    trial, interval, tx, kind = np.nonzero(emitted)
    counts = emitted[trial, interval, tx, kind]
    trial, interval, tx, kind = (
        np.repeat(a, counts) for a in (trial, interval, tx, kind)
    )
    result = walk(
        topology.tx_points[tx], interval * sps, L * sps, topology, params, rng
    )
    got = result.hit_rx >= 0
    arrived_in = result.hit_step[got] // sps
    last = arrived_in == L - 1
    n_rx, n_types = topology.n_rx, alphabet.emissions.shape[2]
    flat = np.ravel_multi_index(
        (trial[got][last], result.hit_rx[got][last], kind[got][last]),
        (n_trials, n_rx, n_types),
    )
    R = np.bincount(flat, minlength=n_trials * n_rx * n_types)
    R = R.reshape(n_trials, n_rx, n_types)
    decided = decode_max_count(cfg, np.moveaxis(R, 0, 1), rng)
    errors = int(alphabet.bit_errors(symbols[:, -1], decided).sum())
    return errors, result.collision_failures


def particle_ber(
    cfg, topology, params, L, n_trials, seed=None, n_jobs=1, trials_per_chunk=16
):
    """Bit error rate from a full Brownian simulation of every molecule.

    Each trial draws ``L`` random symbols, releases their molecules at the
    start of their intervals, walks them for ``L * t_s`` and decodes only the
    last symbol with the maximum count detector. The budget (``t_b``,
    ``M_tx``) and the antenna labels are taken from ``cfg``.

    Trials are grouped in chunks of ``trials_per_chunk``; chunk ``c`` draws
    from stream ``(seed, c)``, so the result does not depend on ``n_jobs``.

    Args:
        cfg (SchemeConfig): MSSK, QMSSK or MSM configuration.
        topology (Topology): antenna arrangement.
        params (DiffusionParams): diffusion parameters; ``n_molecules`` is
            not used.
        L (int): symbols per trial.
        n_trials (int): trials to run.
        seed (int, optional): root seed. Defaults to None.
        n_jobs (int, optional): joblib workers. Defaults to 1.
        trials_per_chunk (int, optional): trials per work item.

    Raises:
        ValueError: if ``n_trials < 1`` or ``L < 1``.
        UnsupportedConfigurationError: for schemes outside the index family.

    Returns:
        BerRecord
    """
    # the harness package imports this module
    from mcvdim.harness.records import BerRecord

    if int(n_trials) != n_trials or n_trials < 1:
        raise ValueError(f"n_trials must be a positive integer, got {n_trials}.")
    if int(L) != L or L < 1:
        raise ValueError(f"L must be a positive integer, got {L}.")
    if not cfg.is_index_scheme:
        raise UnsupportedConfigurationError(
            f"The particle engine decodes index schemes only, not {cfg.scheme}."
        )
    if topology.n_tx != cfg.n_tx or topology.n_rx != cfg.n_rx:
        raise UnsupportedConfigurationError(
            "Topology antenna counts do not match the scheme."
        )
    started = time.perf_counter()
    t_s, _, bps = derive_params(cfg)
    sps = params.steps_per_symbol(t_s)
    alphabet = symbol_alphabet(cfg)
    sizes = [
        min(trials_per_chunk, int(n_trials) - start)
        for start in range(0, int(n_trials), trials_per_chunk)
    ]
    logger.info(
        "%s: %d particle trials of %d symbols in %d chunks",
        cfg.label(), n_trials, L, len(sizes),
    )
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_trial_chunk)(
            cfg, alphabet, topology, params, int(L), sps, size, seed, c
        )
        for c, size in enumerate(sizes)
    )
    errors = sum(p[0] for p in parts)
    failures = sum(p[1] for p in parts)
    resolved = {
        "n_tx": cfg.n_tx,
        "r_r": topology.r_r,
        "d_x": topology.d_x,
        "d_yz": topology.d_yz,
        "D": params.D,
        "drift_vx": params.drift_velocity[0],
        "L": int(L),
        "M_tx": cfg.M_tx,
        "t_b": cfg.t_b,
    }
    return BerRecord(
        scheme=cfg.label(),
        detector="mcd",
        mapping=cfg.mapping,
        params=resolved,
        bits=int(n_trials) * bps,
        bit_errors=errors,
        engine="particle",
        note=f"{failures} collision failures" if failures else "",
        wall_time=time.perf_counter() - started,
    )
