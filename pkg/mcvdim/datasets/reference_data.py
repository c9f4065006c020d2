""" Published channel coefficients of the default 8x8 uniform circular array. """

import os

import numpy as np
import pandas as pd

from mcvdim.particle import ChannelResponse, shift_fill

#: symbol duration the reference taps were binned with, seconds
REFERENCE_T_S = 0.75


def fetch_reference_taps():
    """Retrieve the first five channel coefficients from transmitter 0 to every
    receiver of the default arrangement (``r_r = 5``, ``d_x = 10``,
    ``d_yz = 10`` micrometres, ``D = 79.4`` um^2/s, ``t_s = 0.75`` s) from the
    datasets directory.

    Receivers ``j`` and ``8 - j`` are equidistant from transmitter 0 and carry
    identical coefficients.

    Returns:
        pd.DataFrame: one row per receiver, indexed by ``rx``, with columns
        ``tap_0`` to ``tap_4``.
    """
    data_path = os.path.join(os.path.dirname(__file__), "reference_taps.csv")
    return pd.read_csv(data_path, index_col="rx")


def make_reference_response(L=5):
    """Shift-filled :class:`~mcvdim.particle.ChannelResponse` built from
    :func:`fetch_reference_taps`, handy as a fixed channel for detectors and
    the analytical error probability.

    Args:
        L (int, optional): taps to keep, at most 5. Defaults to 5.

    Returns:
        ChannelResponse
    """
    taps = fetch_reference_taps().to_numpy(dtype=float)
    if int(L) != L or not 1 <= L <= taps.shape[1]:
        raise ValueError(f"L must be in [1, {taps.shape[1]}], got {L}.")
    h = shift_fill(taps[:, : int(L)])
    meta = {"source": "reference", "r_r": "5.0", "d_x": "10.0", "d_yz": "10.0"}
    return ChannelResponse(np.ascontiguousarray(h), REFERENCE_T_S, meta)
