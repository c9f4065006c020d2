"""Checks on the command line and its exit codes."""
import os

import pytest

from mcvdim.harness.cli import (
    EXIT_CONFIG,
    EXIT_INFEASIBLE,
    EXIT_IO,
    EXIT_OK,
    build_parser,
    main,
    resolve_spec,
)
from mcvdim.particle import ChannelResponse


@pytest.fixture(name="config")
def fixture_config(tmp_path, tiny_text):
    path = tmp_path / "sweep.cfg"
    path.write_text(tiny_text)
    return str(path)


def test_overrides_beat_the_file(config):
    args = build_parser().parse_args(
        ["sweep", "--config", config, "--seed", "3", "--r-r", "4", "--D", "50"]
    )
    spec = resolve_spec(args)
    assert spec.seed == 3
    assert spec.r_r == 4.0
    assert spec.D == 50.0
    assert spec.n_tx == 2


def test_cache_dir_from_environment(config, tmp_path, monkeypatch):
    monkeypatch.setenv("MCVDIM_CACHE_DIR", str(tmp_path / "cirs"))
    spec = resolve_spec(build_parser().parse_args(["sweep", "--config", config]))
    assert spec.cache_dir == str(tmp_path / "cirs")


def test_sweep_writes_csv(config, tmp_path):
    out = tmp_path / "ber.csv"
    code = main(["sweep", "-q", "--config", config, "--output", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0].startswith("scheme,detector,mapping,engine")
    assert len(lines) == 1 + 30


def test_cir_command(config, tmp_path):
    out = tmp_path / "cir.txt"
    cache = tmp_path / "cache"
    code = main([
        "cir", "-q", "--config", config, "--cache-dir", str(cache),
        "--output", str(out),
    ])
    assert code == EXIT_OK
    cir = ChannelResponse.from_text(out.read_text())
    assert cir.h.shape == (2, 2, 2)
    assert cir.t_s == 0.5
    assert len(os.listdir(cache)) == 1


def test_theory_command(config, tmp_path):
    out = tmp_path / "theory.csv"
    code = main(["theory", "-q", "--config", config, "--output", str(out)])
    assert code == EXIT_OK
    header, row = out.read_text().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["detector"] == "theory"
    assert 0 <= float(values["ber"]) <= 0.5


def test_bad_config_exit_code(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = blue\n")
    assert main(["sweep", "-q", "--config", str(path)]) == EXIT_CONFIG


def test_infeasible_exit_code(config, tmp_path):
    """Exhaustive theory over 8 ** 9 sequences exceeds the guard."""
    args = [
        "theory", "-q", "--config", config, "--n-tx", "8", "--L", "9",
        "--t-b", "0.01", "--n-molecules", "50",
        "--output", str(tmp_path / "t.csv"),
    ]
    assert main(args) == EXIT_INFEASIBLE


def test_corrupt_cache_exit_code(config, tmp_path):
    cache = tmp_path / "cache"
    out = str(tmp_path / "cir.txt")
    base = ["cir", "-q", "--config", config, "--cache-dir", str(cache), "--output", out]
    assert main(base) == EXIT_OK
    (entry,) = cache.iterdir()
    text = entry.read_text().splitlines(keepends=True)
    text[-1] = "0.5 0.5\n"
    entry.write_text("".join(text))
    assert main(base) == EXIT_IO
