"""Checks on Monte Carlo channel responses."""
import logging

import numpy as np
import pytest

from mcvdim.exceptions import GeometryError
from mcvdim.geometry import Topology, build_uca_topology
from mcvdim.particle import (
    DiffusionParams,
    point_to_sphere_hitting_probability,
    simulate_arrival_profile,
    simulate_cir,
)

PARAMS = DiffusionParams(D=79.4, dt=1e-3, n_molecules=2000)


@pytest.fixture(name="lone_sphere_profile", scope="module")
def fixture_lone_sphere_profile():
    """One 3 s run of 40000 molecules against a single sphere 10 um away;
    a fine step keeps the discrete-time absorption bias near 0.004."""
    topo = build_uca_topology(1, 1, r_r=5, d_x=10, d_yz=0)
    params = DiffusionParams(D=79.4, dt=1e-4, n_molecules=40000)
    return simulate_arrival_profile(
        topo, params, n_steps=30000, seed=3, chunk_size=10000, n_jobs=4
    )


@pytest.mark.parametrize("t", [0.75, 1.5, 3.0])
def test_single_sphere_matches_closed_form(lone_sphere_profile, t):
    """Cumulative absorption of a lone sphere follows the erfc law within
    0.01 at every checked time."""
    expected = float(point_to_sphere_hitting_probability(t, 79.4, 5.0, 15.0))
    assert lone_sphere_profile.cumulative_hits(0, t) == pytest.approx(
        expected, abs=0.01
    )


def test_single_sphere_response_total():
    """Summed taps equal the cumulative absorption at L * t_s."""
    topo = build_uca_topology(1, 1, r_r=5, d_x=10, d_yz=0)
    cir = simulate_cir(topo, PARAMS, t_s=0.25, L=2, seed=3)
    expected = point_to_sphere_hitting_probability(0.5, 79.4, 5.0, 15.0)
    assert cir.h.sum() == pytest.approx(expected, abs=0.03)


def test_walk_announces_its_cost(caplog):
    """The step count and a run-time estimate are logged before walking."""
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    with caplog.at_level(logging.INFO, logger="mcvdim.particle.cir"):
        simulate_arrival_profile(topo, PARAMS, n_steps=50, seed=0)
    messages = [r.getMessage() for r in caplog.records]
    assert any("for 50 steps" in m and "on one worker" in m for m in messages)


def test_shift_filled_response_is_circulant():
    topo = build_uca_topology(4, 4, r_r=5, d_x=10, d_yz=10)
    cir = simulate_cir(topo, PARAMS, t_s=0.1, L=3, seed=0)
    assert cir.h.shape == (4, 4, 3)
    assert cir.is_circulant()
    # the facing receiver collects more than the one across the array
    assert cir.h[0, 0].sum() > cir.h[0, 2].sum()
    assert cir.h[0, 1].sum() == pytest.approx(cir.h[0, 3].sum(), abs=0.02)


def test_same_seed_same_taps():
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    a = simulate_cir(topo, PARAMS, t_s=0.1, L=2, seed=11, chunk_size=500)
    b = simulate_cir(topo, PARAMS, t_s=0.1, L=2, seed=11, chunk_size=500)
    assert np.array_equal(a.h, b.h)
    assert a.header() == b.header()


def test_worker_count_does_not_change_taps():
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    params = DiffusionParams(D=79.4, dt=1e-3, n_molecules=600)
    a = simulate_cir(topo, params, t_s=0.05, L=2, seed=5, chunk_size=200)
    b = simulate_cir(topo, params, t_s=0.05, L=2, seed=5, chunk_size=200, n_jobs=2)
    assert np.array_equal(a.h, b.h)


def test_drift_towards_receiver_raises_absorption():
    topo = build_uca_topology(1, 1, r_r=5, d_x=10, d_yz=0)
    still = simulate_cir(topo, PARAMS, t_s=0.25, L=2, seed=1)
    flowing = DiffusionParams(
        D=79.4, dt=1e-3, drift_velocity=(40, 0, 0), n_molecules=2000
    )
    pushed = simulate_cir(topo, flowing, t_s=0.25, L=2, seed=1)
    assert pushed.h.sum() > still.h.sum()


def test_profile_rebinning():
    """One run binned at two symbol durations keeps the absorbed total."""
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    profile = simulate_arrival_profile(topo, PARAMS, n_steps=400, seed=2)
    fine = profile.to_response(0.1, 4)
    coarse = profile.to_response(0.2, 2)
    assert fine.h[0].sum() == pytest.approx(coarse.h[0].sum())
    assert np.allclose(fine.h[0, :, 0] + fine.h[0, :, 1], coarse.h[0, :, 0])
    assert profile.n_absorbed[0] + profile.n_free[0] == PARAMS.n_molecules
    assert profile.cumulative_hits(0, 0.4) + profile.cumulative_hits(1, 0.4) == (
        pytest.approx(fine.h[0].sum())
    )
    with pytest.raises(ValueError) as _:
        profile.to_response(0.1, 5)


def test_meta_records_the_run():
    topo = build_uca_topology(2, 2, r_r=5, d_x=10, d_yz=10)
    cir = simulate_cir(topo, PARAMS, t_s=0.1, L=2, seed=4)
    assert cir.meta["seed"] == "4"
    assert cir.meta["fill"] == "shift"
    assert cir.meta["n_molecules"] == "2000"


def test_shift_fill_needs_uca():
    topo = Topology.from_coordinates([[0, 0, 0]], [[10, 0, 0]], r_r=2)
    with pytest.raises(GeometryError) as _:
        simulate_cir(topo, PARAMS, t_s=0.1, L=2, seed=0)
    cir = simulate_cir(topo, PARAMS, t_s=0.1, L=2, seed=0, fill="independent")
    assert cir.h.shape == (1, 1, 2)


def test_hitting_probability_limits():
    early = float(point_to_sphere_hitting_probability(1e-12, 79.4, 5, 15))
    late = float(point_to_sphere_hitting_probability(1e12, 79.4, 5, 10))
    assert early == pytest.approx(0)
    assert late == pytest.approx(0.5, abs=1e-3)
