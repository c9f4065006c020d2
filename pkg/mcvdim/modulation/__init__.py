"""
Modulation maps information bits to the number of molecules each transmit
antenna releases in each symbol interval.

The concentration shift keying family (SISO BCSK, dual-molecule SISO D-MoSK,
repetition coding and spatial multiplexing) switches bursts on and off.
The index schemes carry information in which antenna is active: molecular
space shift keying (MSSK), its two-molecule quadrature form (QMSSK) and
molecular spatial modulation (MSM), which adds one bit through the molecule
type.

All schemes are normalised to the same bit rate ``1 / t_b`` and the same
average of ``M_tx / 2`` molecules per bit; :func:`derive_params` returns the
resulting symbol duration and emission size.
"""

from mcvdim.modulation.mapping import MAPPINGS, IndexMap, gray_index_map
from mcvdim.modulation.modulator import (
    SymbolAlphabet,
    emission_size,
    modulate,
    symbol_alphabet,
    symbol_bits,
)
from mcvdim.modulation.schemes import (
    BCSK_SCHEMES,
    INDEX_SCHEMES,
    SCHEMES,
    SchemeConfig,
    derive_params,
)
