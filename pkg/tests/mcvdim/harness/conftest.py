import pytest

from mcvdim.harness import parse_config

TINY = """
parameter = M_tx
values = 50, 100
schemes = MSSK, SISO_BCSK
detectors = mcd, symbol_ml, sequence_ml, theory, ftd
n_tx = 2
L = 2
t_b = 0.5
dt = 1e-3
n_molecules = 500
viterbi_memory = 2
max_bits = 2000
block_symbols = 200
calibration_symbols = 500
seed = 7
"""


@pytest.fixture(name="tiny_text")
def fixture_tiny_text():
    """Configuration of a sweep small enough to run in a few seconds."""
    return TINY


@pytest.fixture(name="tiny_spec")
def fixture_tiny_spec():
    return parse_config(TINY)
