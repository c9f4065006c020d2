import logging
import time

from joblib import Parallel, delayed

from mcvdim.channel import sample_arrivals
from mcvdim.detection import (
    COMBINERS,
    SymbolMLDetector,
    atd_decode,
    calibrate_threshold,
    decode_max_count,
    ftd,
    ml_sequence_detect,
)
from mcvdim.exceptions import InfeasibleError
from mcvdim.geometry import build_uca_topology
from mcvdim.harness.cache import MISMATCH, cir_cache_store, read_cache_entry
from mcvdim.harness.records import BerRecord
from mcvdim.modulation import SchemeConfig, derive_params, modulate, symbol_alphabet
from mcvdim.particle import (
    DiffusionParams,
    particle_ber,
    response_meta,
    simulate_arrival_profile,
)
from mcvdim.theory import theoretical_ber
from mcvdim.utils import derive_rng

logger = logging.getLogger(__name__)

INDEX_DETECTORS = ("mcd", "symbol_ml", "sequence_ml", "theory")
COUNT_DETECTORS = ("ftd", "atd")
PARAM_COLUMNS = ("n_tx", "r_r", "d_x", "d_yz", "D", "drift_vx", "L", "M_tx", "t_b")

# leading stream keys; channel responses use two-element keys of their own
_CALIBRATION_STREAM = 1
_LINK_STREAM = 2


def topology_for(spec):
    """UCA topology of a sweep point."""
    return build_uca_topology(spec.n_tx, spec.n_tx, spec.r_r, spec.d_x, spec.d_yz)


def diffusion_for(spec):
    """Diffusion parameters of a sweep point."""
    return DiffusionParams(
        spec.D, spec.dt, (spec.drift_vx, 0.0, 0.0), spec.n_molecules
    )


def _physics_key(spec):
    return (spec.r_r, spec.d_x, spec.d_yz, spec.D, spec.drift_vx)


def scheme_configs(spec):
    """``(SchemeConfig, mapping label)`` of every scheme and mapping of a
    sweep point. Mappings only matter for the index schemes; the others are
    listed once with the label ``"-"``."""
    out = []
    for scheme in spec.schemes:
        index = scheme in ("MSSK", "QMSSK", "MSM")
        beta = spec.baseline_beta if scheme in ("RC_BCSK", "SMUX_BCSK") else None
        for mapping in spec.mappings if index else spec.mappings[:1]:
            cfg = SchemeConfig(
                scheme, spec.n_tx, t_b=spec.t_b, M_tx=spec.M_tx,
                mapping=mapping, beta=beta,
            )
            out.append((cfg, mapping if index else "-"))
    return out


def expected_header(topology, params, seed, t_s, L):
    """Header a channel response simulated with these settings will carry."""
    header = response_meta(topology, params, seed, "shift")
    header.update(
        n_tx=str(topology.n_tx), n_rx=str(topology.n_rx), L=str(L),
        t_s=repr(float(t_s)),
    )
    return header


def prepare_channels(spec, points):
    """Channel responses for every (physical setting, symbol duration) the
    sweep needs, taken from the cache where possible.

    Points that share a physical setting share one Brownian run, binned for
    each symbol duration; sweeping ``M_tx`` therefore simulates once.

    Returns:
        tuple: ``dict`` from ``(physics, t_s)`` to ChannelResponse, and the
        set of physics keys whose cache entry described a different run.
    """
    wanted = {}
    for point in points:
        t_s = {derive_params(cfg)[0] for cfg, _ in scheme_configs(point)}
        entry = wanted.setdefault(_physics_key(point), (point, set()))
        entry[1].update(t_s)

    responses, mismatched = {}, set()
    for key, (point, durations) in wanted.items():
        topology, params = topology_for(point), diffusion_for(point)
        missing = []
        for t_s in sorted(durations):
            if point.cache_dir:
                header = expected_header(topology, params, point.seed, t_s, point.L)
                cir, status = read_cache_entry(point.cache_dir, header)
                if cir is not None:
                    responses[key, t_s] = cir
                    continue
                if status == MISMATCH:
                    mismatched.add(key)
            missing.append(t_s)
        if not missing:
            continue
        horizon = point.L * max(params.steps_per_symbol(t) for t in missing)
        logger.info("simulating channel for %s over %d steps", key, horizon)
        profile = simulate_arrival_profile(
            topology, params, horizon, point.seed, "shift", n_jobs=point.n_jobs
        )
        for t_s in missing:
            cir = profile.to_response(t_s, point.L)
            responses[key, t_s] = cir
            if point.cache_dir:
                cir_cache_store(point.cache_dir, cir)
    return responses, mismatched


def _count_statistic(cfg, combining):
    """Function giving the ``(bits_per_symbol, K)`` counts each bit of a BCSK
    family scheme is decided on."""
    if cfg.scheme in ("SISO_BCSK", "SISO_DMOSK"):
        return lambda R: R[0].T
    if cfg.scheme == "RC_BCSK":
        combine = COMBINERS[combining]
        return lambda R: combine(R).T
    n, beta = cfg.n_tx, cfg.beta
    return lambda R: R.transpose(0, 2, 1).reshape(n * beta, -1)


def _run_block(cfg, cir, decoder, n_symbols, warmup, mode, rng):
    _, _, bps = derive_params(cfg)
    K = warmup + n_symbols
    bits = rng.integers(0, 2, size=K * bps)
    R = sample_arrivals(cir, modulate(cfg, bits, K), mode, rng).R
    decided = decoder(R, rng)
    sent = bits.reshape(K, bps)
    return int((decided[warmup:] != sent[warmup:]).sum()), n_symbols * bps


def _per_type(cfg, decide):
    """Apply an MSSK symbol decision to each type of a QMSSK stream."""
    mssk = SchemeConfig("MSSK", cfg.n_tx, t_b=cfg.t_b, M_tx=cfg.M_tx,
                        mapping=cfg.mapping)
    emissions = symbol_alphabet(mssk).emissions
    n = cfg.n_tx

    def decode(R, rng):
        first = decide(R[..., :1], emissions, rng)
        return first * n + decide(R[..., 1:], emissions, rng)

    return decode


def make_decoder(cfg, detector, cir, spec, calibration_rng=None):
    """Function mapping arrivals ``(n_rx, K, n_types)`` to decided bits
    ``(K, bits_per_symbol)``.

    Count detectors calibrate their threshold on a run of
    ``spec.calibration_symbols`` symbols drawn from ``calibration_rng``.
    """
    if cfg.is_index_scheme:
        alphabet = symbol_alphabet(cfg)
        if detector == "mcd":
            return lambda R, rng: alphabet.bits[decode_max_count(cfg, R, rng)]
        if detector == "symbol_ml":
            def decide(R, emissions, rng):
                return SymbolMLDetector(cir, emissions, rng).decode(R)
        else:
            def decide(R, emissions, rng):
                return ml_sequence_detect(
                    R, cir, emissions, viterbi_memory=spec.viterbi_memory, rng=rng
                )
        if cfg.scheme == "QMSSK":
            symbols = _per_type(cfg, decide)
        else:
            def symbols(R, rng):
                return decide(R, alphabet.emissions, rng)
        return lambda R, rng: alphabet.bits[symbols(R, rng)]

    statistic = _count_statistic(cfg, spec.combining)
    _, _, bps = derive_params(cfg)
    warmup = cir.L
    K = warmup + spec.calibration_symbols
    bits = calibration_rng.integers(0, 2, size=K * bps)
    schedule = modulate(cfg, bits, K)
    R = sample_arrivals(cir, schedule, spec.arrival_mode, calibration_rng).R
    counts = statistic(R)[:, warmup:]
    sent = bits.reshape(K, bps)[warmup:].T
    gamma = calibrate_threshold(counts, sent)
    logger.debug("%s: calibrated threshold %d", cfg.label(), gamma)
    if detector == "ftd":
        return lambda R, rng: ftd(statistic(R), gamma).T
    return lambda R, rng: atd_decode(statistic(R), gamma).T


def simulate_link(cfg, cir, detector, spec, stream, calibration_rng=None):
    """Monte Carlo bit errors of one scheme and detector on the statistical
    channel.

    Blocks of ``spec.block_symbols`` symbols, each preceded by ``L`` warm-up
    symbols that are decoded but not counted, are simulated until
    ``spec.max_bits`` bits were counted or ``spec.target_errors`` errors were
    seen.

    Args:
        cfg (SchemeConfig): scheme and budget.
        cir (ChannelResponse): channel.
        detector (str): detector name.
        spec (SweepSpec): simulation controls.
        stream (callable): ``stream(block)`` returns the generator of a block.
        calibration_rng (numpy.random.Generator, optional): stream for
            threshold calibration of count detectors.

    Returns:
        tuple: ``(bits, bit_errors)``.
    """
    decoder = make_decoder(cfg, detector, cir, spec, calibration_rng)
    bits = errors = block = 0
    while bits < spec.max_bits and errors < spec.target_errors:
        n_symbols = spec.block_symbols
        e, b = _run_block(
            cfg, cir, decoder, n_symbols, cir.L, spec.arrival_mode, stream(block)
        )
        errors += e
        bits += b
        block += 1
    return bits, errors


def _applies(cfg, detector):
    if detector in INDEX_DETECTORS:
        return cfg.is_index_scheme
    return not cfg.is_index_scheme


def _detector_label(cfg, detector, spec):
    if cfg.scheme == "RC_BCSK" and detector in COUNT_DETECTORS:
        return f"{detector}+{spec.combining}"
    return detector


def _run_point(spec, index, point, responses, mismatched):
    key = _physics_key(point)
    resolved = {name: getattr(point, name) for name in PARAM_COLUMNS}
    note = "channel regenerated: cache entry mismatch" if key in mismatched else ""
    records = []
    combos = [
        (cfg, mapping, detector)
        for cfg, mapping in scheme_configs(point)
        for detector in point.detectors
    ]
    for combo, (cfg, mapping, detector) in enumerate(combos):
        started = time.perf_counter()
        label = _detector_label(cfg, detector, point)
        common = dict(
            scheme=cfg.label(), detector=label, mapping=mapping, params=resolved
        )
        if not _applies(cfg, detector):
            records.append(BerRecord(
                **common, skipped=True,
                note=f"{detector} does not apply to {cfg.scheme}",
            ))
            continue
        cir = responses[key, derive_params(cfg)[0]]

        if detector == "theory":
            L = point.theory_memory or point.L
            try:
                value = theoretical_ber(cfg, cir, L)
            except InfeasibleError as exc:
                logger.warning("%s: theory skipped: %s", cfg.label(), exc)
                records.append(BerRecord(
                    **common, engine="theory", skipped=True, note=str(exc)
                ))
                continue
            records.append(BerRecord(
                **common, ber=value, engine="theory", note=note,
                wall_time=time.perf_counter() - started,
            ))
            continue

        if point.engine == "particle":
            if detector != "mcd":
                records.append(BerRecord(
                    **common, engine="particle", skipped=True,
                    note="the particle engine decodes with mcd only",
                ))
                continue
            record = particle_ber(
                cfg, topology_for(point), diffusion_for(point), point.L,
                point.particle_trials, seed=point.seed,
            )
            records.append(BerRecord(
                **common, bits=record.bits, bit_errors=record.bit_errors,
                engine="particle", note=record.note or note,
                wall_time=record.wall_time,
            ))
            continue

        bits, errors = simulate_link(
            cfg, cir, detector, point,
            lambda block: derive_rng(point.seed, _LINK_STREAM, index, combo, block),
            derive_rng(point.seed, _CALIBRATION_STREAM, index, combo),
        )
        record = BerRecord(
            **common, bits=bits, bit_errors=errors, note=note,
            wall_time=time.perf_counter() - started,
        )
        if record.low_confidence:
            logger.warning(
                "%s/%s at %s=%s: only %d error events",
                record.scheme, record.detector, spec.parameter,
                getattr(point, spec.parameter), errors,
            )
        records.append(record)
    logger.info(
        "finished point %s = %s", spec.parameter, getattr(point, spec.parameter)
    )
    return records


def run_sweep(spec):
    """BER of every scheme, mapping and detector at every value of the swept
    parameter.

    Channel responses are prepared first (from the cache or by simulation);
    the points are then evaluated with ``spec.n_jobs`` workers. Point ``p``
    draws from streams keyed by ``(seed, kind, p, combination, block)``, so the
    records do not depend on the number of workers.

    Args:
        spec (SweepSpec): sweep definition.

    Returns:
        list: :class:`BerRecord` in sweep order.
    """
    points = [spec.point(value) for value in spec.values]
    responses, mismatched = prepare_channels(spec, points)
    batches = Parallel(n_jobs=spec.n_jobs)(
        delayed(_run_point)(spec, index, point, responses, mismatched)
        for index, point in enumerate(points)
    )
    return [record for batch in batches for record in batch]
