"""Command-line entry point: ``mcvdim {cir,sweep,theory,particle-ber}``."""
import argparse
import logging
import os
import sys

from mcvdim import cache_env_var
from mcvdim.exceptions import ChecksumError, InfeasibleError
from mcvdim.harness.config import SweepSpec, load_config
from mcvdim.harness.records import BerRecord
from mcvdim.harness.report import emit_csv
from mcvdim.harness.sweep import (
    PARAM_COLUMNS,
    diffusion_for,
    prepare_channels,
    run_sweep,
    topology_for,
)
from mcvdim.modulation import SchemeConfig
from mcvdim.particle import particle_ber
from mcvdim.theory import theoretical_ber

logger = logging.getLogger("mcvdim")

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3

# flag -> SweepSpec field
_OVERRIDES = {
    "r_r": float,
    "d_x": float,
    "d_yz": float,
    "D": float,
    "drift_vx": float,
    "L": int,
    "M_tx": float,
    "t_b": float,
    "n_tx": int,
    "dt": float,
    "n_molecules": int,
    "seed": int,
    "n_jobs": int,
    "cache_dir": str,
}


def _add_common(parser):
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument("-c", "--config", help="key = value configuration file")
    parser.add_argument("-o", "--output", help="output file (default: stdout)")
    for name, kind in _OVERRIDES.items():
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, dest=name, type=kind, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcvdim",
        description="Index modulation over molecular MIMO diffusion channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cir = sub.add_parser("cir", help="simulate (and cache) a channel response")
    _add_common(cir)
    cir.add_argument("--scheme", default="MSSK", help="scheme fixing t_s")

    sweep = sub.add_parser("sweep", help="run a BER sweep and write CSV")
    _add_common(sweep)
    sweep.add_argument("--timing", action="store_true", help="add wall_time")

    theory = sub.add_parser("theory", help="analytical BER of an index scheme")
    _add_common(theory)
    theory.add_argument("--scheme", default="MSSK")
    theory.add_argument("--mapping", default="gray")
    theory.add_argument("--memory", type=int, default=None, help="theory memory")

    particle = sub.add_parser("particle-ber", help="full particle-level BER")
    _add_common(particle)
    particle.add_argument("--scheme", default="MSSK")
    particle.add_argument("--mapping", default="gray")
    particle.add_argument("--trials", type=int, default=None)
    return parser


def resolve_spec(args):
    """SweepSpec from the configuration file and flag overrides."""
    spec = load_config(args.config) if args.config else SweepSpec()
    changes = {
        name: getattr(args, name)
        for name in _OVERRIDES
        if getattr(args, name) is not None
    }
    if "cache_dir" not in changes and spec.cache_dir is None:
        env = os.environ.get(cache_env_var)
        if env:
            changes["cache_dir"] = env
    if getattr(args, "trials", None) is not None:
        changes["particle_trials"] = args.trials
    return spec.replace(**changes)


def _write(args, data):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _scheme(args, spec):
    beta = spec.baseline_beta if args.scheme in ("RC_BCSK", "SMUX_BCSK") else None
    return SchemeConfig(
        args.scheme, spec.n_tx, t_b=spec.t_b, M_tx=spec.M_tx,
        mapping=getattr(args, "mapping", "natural"), beta=beta,
    )


def _channel(spec, cfg):
    """Channel response of ``cfg`` at the physical setting of ``spec``,
    from the cache when possible (and stored there otherwise)."""
    spec = spec.replace(schemes=(cfg.scheme,), mappings=(cfg.mapping,))
    responses, _ = prepare_channels(spec, [spec])
    return next(iter(responses.values()))


def _cmd_cir(args, spec):
    cir = _channel(spec, _scheme(args, spec))
    _write(args, cir.to_text().encode("utf-8"))


def _cmd_sweep(args, spec):
    _write(args, emit_csv(run_sweep(spec), include_timing=args.timing))


def _cmd_theory(args, spec):
    cfg = _scheme(args, spec)
    memory = args.memory or spec.theory_memory or spec.L
    cir = _channel(spec, cfg)
    value = theoretical_ber(cfg, cir, memory, n_jobs=spec.n_jobs)
    params = {name: getattr(spec, name) for name in PARAM_COLUMNS}
    params["L"] = memory
    record = BerRecord(
        cfg.label(), "theory", cfg.mapping, params, ber=value, engine="theory"
    )
    _write(args, emit_csv([record]))


def _cmd_particle(args, spec):
    cfg = _scheme(args, spec)
    record = particle_ber(
        cfg, topology_for(spec), diffusion_for(spec), spec.L,
        spec.particle_trials, seed=spec.seed, n_jobs=spec.n_jobs,
    )
    _write(args, emit_csv([record]))


_COMMANDS = {
    "cir": _cmd_cir,
    "sweep": _cmd_sweep,
    "theory": _cmd_theory,
    "particle-ber": _cmd_particle,
}


def main(argv=None):
    """Run the command line; returns the process exit code."""
    args = build_parser().parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        spec = resolve_spec(args)
        _COMMANDS[args.command](args, spec)
    except InfeasibleError as exc:
        logger.error("%s", exc)
        return EXIT_INFEASIBLE
    except (ChecksumError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_IO
    except ValueError as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    return EXIT_OK
