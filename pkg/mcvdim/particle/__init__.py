"""
Brownian-motion micro-simulator.

Molecules move in free three-dimensional space by Gaussian steps of variance
``2 D dt`` per axis, optionally carried by a uniform flow. A molecule whose
step ends strictly inside a receiver sphere is absorbed and counted once;
spheres declared non-absorbing reflect it back along the radius. The
transmitter side imposes no obstacles.

Two products are built on the walk: the channel impulse response
(:func:`simulate_cir`), obtained by releasing a large batch from one
transmitter and binning first absorptions into symbol intervals, and a
full particle-level bit error rate (:func:`particle_ber`) in which every
emitted molecule of every trial is walked.
"""

from mcvdim.particle.brownian import (
    Absorbed,
    Moved,
    WalkResult,
    resolve_batch,
    resolve_collision,
    step,
    walk,
)
from mcvdim.particle.cir import (
    ArrivalProfile,
    point_to_sphere_hitting_probability,
    response_meta,
    simulate_arrival_profile,
    simulate_cir,
)
from mcvdim.particle.params import DiffusionParams
from mcvdim.particle.response import ChannelResponse, parse_header, shift_fill
from mcvdim.particle.ber import particle_ber
