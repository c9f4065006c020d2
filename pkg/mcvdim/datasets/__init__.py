""" This module contains reference channel data for testing detectors and the
analytical error probability. """

from mcvdim.datasets.reference_data import (
    REFERENCE_T_S,
    fetch_reference_taps,
    make_reference_response,
)
