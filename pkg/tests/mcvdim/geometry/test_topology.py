"""Checks on antenna arrangements."""
import numpy as np
import pytest

from mcvdim.exceptions import GeometryError, UnsupportedConfigurationError
from mcvdim.geometry import Topology, build_uca_topology


def test_uca_layout():
    """Receivers sit on a circle of radius d_yz + r_r, facing their points."""
    topo = build_uca_topology(8, 8, r_r=5, d_x=10, d_yz=10)
    assert topo.n_tx == topo.n_rx == 8
    assert topo.is_uca
    radial = np.linalg.norm(topo.rx_centers[:, 1:], axis=1)
    assert np.allclose(radial, 15)
    # transmit point to paired sphere surface is d_x
    gap = np.linalg.norm(topo.tx_points - topo.rx_centers, axis=1) - topo.r_r
    assert np.allclose(gap, 10)
    # antenna 0 on +y, antenna 2 on +z
    assert np.allclose(topo.rx_centers[0, 1:], [15, 0])
    assert np.allclose(topo.rx_centers[2, 1:], [0, 15], atol=1e-12)


def test_uca_closest_to_axis():
    """The closest surface point of every sphere is d_yz from the axis."""
    topo = build_uca_topology(4, 4, r_r=5, d_x=10, d_yz=7)
    radial = np.linalg.norm(topo.rx_centers[:, 1:], axis=1) - topo.r_r
    assert np.allclose(radial, 7)


def test_uca_single_antenna_on_axis():
    topo = build_uca_topology(1, 1, r_r=5, d_x=10, d_yz=0)
    assert np.allclose(topo.rx_centers[0, 1:], 0)


def test_uca_rejects_unequal_counts():
    """A UCA needs as many receivers as transmit antennas."""
    with pytest.raises(UnsupportedConfigurationError) as _:
        build_uca_topology(4, 2, r_r=5, d_x=10, d_yz=10)


def test_uca_rejects_overlap():
    """Eight spheres of radius 5 cannot fit on a circle touching the axis."""
    with pytest.raises(GeometryError) as _:
        build_uca_topology(8, 8, r_r=5, d_x=10, d_yz=1)


def test_uca_rejects_bad_lengths():
    with pytest.raises(GeometryError) as _:
        build_uca_topology(2, 2, r_r=0, d_x=10, d_yz=10)
    with pytest.raises(GeometryError) as _:
        build_uca_topology(2, 2, r_r=5, d_x=-1, d_yz=10)


def test_point_inside_sphere_rejected():
    with pytest.raises(GeometryError) as _:
        Topology.from_coordinates([[0, 0, 0]], [[1, 0, 0]], r_r=2)


def test_from_coordinates_is_not_uca():
    topo = Topology.from_coordinates([[0, 0, 0]], [[10, 0, 0]], r_r=2)
    assert not topo.is_uca
    assert topo.d_x == 8
    assert topo.n_tx == topo.n_rx == 1


def test_topology_is_read_only():
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    with pytest.raises(ValueError) as _:
        topo.rx_centers[0, 0] = 1.0


def test_header_round_values():
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    header = topo.header()
    assert header["n_tx"] == "2"
    assert header["r_r"] == "5.0"
    assert header["is_uca"] == "True"
