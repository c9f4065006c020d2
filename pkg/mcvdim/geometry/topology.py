from dataclasses import dataclass

import numpy as np

from mcvdim.exceptions import GeometryError, UnsupportedConfigurationError


@dataclass(frozen=True, eq=False)
class Topology:
    """Immutable antenna arrangement of a molecular MIMO link.

    Antenna ``0`` in this API is antenna 1 in the usual 1-based notation.

    Attributes:
        tx_points (numpy.ndarray): ``(n_tx, 3)`` transmit point coordinates.
        rx_centers (numpy.ndarray): ``(n_rx, 3)`` receiver sphere centres.
        r_r (float): receiver sphere radius.
        d_x (float): closest distance between a transmit point and the
            surface of its paired receiver sphere.
        d_yz (float): closest distance between a receiver sphere and the
            block axis.
        is_uca (bool): ``True`` when built by :func:`build_uca_topology`; only
            then may channel rows be filled by circular shifts.
    """

    tx_points: np.ndarray
    rx_centers: np.ndarray
    r_r: float
    d_x: float
    d_yz: float
    is_uca: bool = False

    def __post_init__(self):
        tx = np.array(self.tx_points, dtype=float)
        rx = np.array(self.rx_centers, dtype=float)
        if tx.ndim != 2 or tx.shape[1] != 3 or tx.shape[0] < 1:
            raise GeometryError("tx_points must be a non-empty (n_tx, 3) array.")
        if rx.ndim != 2 or rx.shape[1] != 3 or rx.shape[0] < 1:
            raise GeometryError("rx_centers must be a non-empty (n_rx, 3) array.")
        if not self.r_r > 0:
            raise GeometryError(f"Receiver radius must be positive, got {self.r_r}.")
        tx.setflags(write=False)
        rx.setflags(write=False)
        object.__setattr__(self, "tx_points", tx)
        object.__setattr__(self, "rx_centers", rx)
        object.__setattr__(self, "r_r", float(self.r_r))
        object.__setattr__(self, "d_x", float(self.d_x))
        object.__setattr__(self, "d_yz", float(self.d_yz))
        self._check_invariants()

    def _check_invariants(self):
        rx = self.rx_centers
        if self.n_rx > 1:
            gaps = np.linalg.norm(rx[:, None, :] - rx[None, :, :], axis=-1)
            gaps = gaps[np.triu_indices(self.n_rx, k=1)]
            if gaps.min() <= 2 * self.r_r:
                raise GeometryError(
                    f"Receiver spheres overlap: closest centres are {gaps.min():.4g} "
                    f"apart, need more than 2 * r_r = {2 * self.r_r:.4g}."
                )
        reach = np.linalg.norm(self.tx_points[:, None, :] - rx[None, :, :], axis=-1)
        if reach.min() <= self.r_r:
            i, j = np.unravel_index(reach.argmin(), reach.shape)
            raise GeometryError(
                f"Transmit point {i} lies inside receiver sphere {j}."
            )

    @classmethod
    def from_coordinates(cls, tx_points, rx_centers, r_r):
        """Arbitrary (non-UCA) arrangement. ``d_x`` and ``d_yz`` are derived
        from the coordinates so that headers stay informative.

        Args:
            tx_points (array-like): ``(n_tx, 3)`` coordinates.
            rx_centers (array-like): ``(n_rx, 3)`` coordinates.
            r_r (float): receiver radius.

        Returns:
            Topology
        """
        tx = np.asarray(tx_points, dtype=float).reshape(-1, 3)
        rx = np.asarray(rx_centers, dtype=float).reshape(-1, 3)
        reach = np.linalg.norm(tx[:, None, :] - rx[None, :, :], axis=-1) - r_r
        if tx.shape[0] == rx.shape[0]:
            d_x = float(np.diagonal(reach).min())
        else:
            d_x = float(reach.min())
        radial = np.linalg.norm(rx[:, 1:], axis=1) - r_r
        d_yz = float(max(radial.min(), 0.0))
        return cls(tx, rx, r_r, d_x, d_yz, is_uca=False)

    @property
    def n_tx(self):
        return self.tx_points.shape[0]

    @property
    def n_rx(self):
        return self.rx_centers.shape[0]

    def header(self):
        """Key/value description used in channel-response cache headers.

        Returns:
            dict: ordered ``str -> str`` pairs.
        """
        out = {
            "n_tx": str(self.n_tx),
            "n_rx": str(self.n_rx),
            "r_r": repr(self.r_r),
            "d_x": repr(self.d_x),
            "d_yz": repr(self.d_yz),
            "is_uca": str(self.is_uca),
        }
        out["tx_points"] = " ".join(repr(float(v)) for v in self.tx_points.ravel())
        out["rx_centers"] = " ".join(repr(float(v)) for v in self.rx_centers.ravel())
        return out


def build_uca_topology(n_tx, n_rx, r_r, d_x, d_yz):
    """Uniform circular array with each transmit point facing its receiver.

    Antenna ``0`` sits on the +y axis; indices increase counter-clockwise
    when looking from the transmitter along +x (from +y towards +z). Receiver
    centres lie on a circle of radius ``d_yz + r_r`` around the x-axis at
    ``x = (d_x + r_r) / 2``; transmit points lie on the same circle at
    ``x = -(d_x + r_r) / 2``. A single antenna pair is placed on the axis.

    Args:
        n_tx (int): transmit antennas; must equal ``n_rx``.
        n_rx (int): receiver antennas.
        r_r (float): receiver radius, micrometres.
        d_x (float): point-to-surface distance of paired antennas.
        d_yz (float): closest distance of a receiver sphere to the axis.

    Raises:
        UnsupportedConfigurationError: if ``n_tx != n_rx``.
        GeometryError: if lengths are not positive or spheres overlap.

    Returns:
        Topology
    """
    if int(n_tx) != n_tx or int(n_rx) != n_rx or n_tx < 1 or n_rx < 1:
        raise UnsupportedConfigurationError(
            "Antenna counts must be positive integers."
        )
    if n_tx != n_rx:
        raise UnsupportedConfigurationError(
            f"A UCA pairs every transmit antenna with a receiver; got n_tx={n_tx}, "
            f"n_rx={n_rx}."
        )
    if not (r_r > 0 and d_x > 0 and d_yz >= 0):
        raise GeometryError("r_r and d_x must be positive and d_yz non-negative.")
    if n_rx > 1 and d_yz == 0:
        raise GeometryError("d_yz must be positive for more than one antenna.")

    n = int(n_rx)
    radius = 0.0 if n == 1 else d_yz + r_r
    angles = 2 * np.pi * np.arange(n) / n
    y = radius * np.cos(angles)
    z = radius * np.sin(angles)
    half = (d_x + r_r) / 2
    rx = np.column_stack([np.full(n, half), y, z])
    tx = np.column_stack([np.full(n, -half), y, z])
    return Topology(tx, rx, r_r, d_x, d_yz, is_uca=True)
