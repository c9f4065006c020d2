"""Random-walk kernel: one Gaussian step per molecule, followed by the
absorption and reflection checks against the receiver spheres."""
import logging
from dataclasses import dataclass

import numpy as np

from mcvdim.exceptions import CollisionError

logger = logging.getLogger(__name__)

#: bound on mirror corrections applied to one step of one molecule
MAX_REFLECTIONS = 8


@dataclass(frozen=True)
class Moved:
    """Outcome of a step that left the molecule free at ``position``."""

    position: np.ndarray


@dataclass(frozen=True)
class Absorbed:
    """Outcome of a step that ended inside receiver ``rx_index``."""

    rx_index: int


@dataclass(frozen=True)
class WalkResult:
    """First-absorption record of a batch of molecules.

    Attributes:
        hit_step (numpy.ndarray): step index (0-based, counted from the start
            of the walk) at the end of which each molecule was absorbed, or -1.
        hit_rx (numpy.ndarray): absorbing receiver of each molecule, or -1.
        collision_failures (int): reflections that could not leave a sphere;
            the affected molecules were held at their previous position.
    """

    hit_step: np.ndarray
    hit_rx: np.ndarray
    collision_failures: int = 0

    @property
    def n_absorbed(self):
        return int(np.count_nonzero(self.hit_rx >= 0))


def step(position, params, rng):
    """Advance ``position`` by one time step.

    Each coordinate moves by an independent ``Normal(v * dt, 2 D dt)`` draw.
    Works on a single point of shape ``(3,)`` or a batch of shape ``(n, 3)``.

    Args:
        position (array-like): current coordinates.
        params (DiffusionParams): diffusion coefficient, step and drift.
        rng (numpy.random.Generator): random stream.

    Returns:
        numpy.ndarray: new coordinates, same shape as ``position``.
    """
    position = np.asarray(position, dtype=float)
    noise = rng.normal(0.0, params.step_std, size=position.shape)
    return position + params.step_mean + noise


def _absorbing_mask(n_rx, absorbing):
    if absorbing is None:
        return np.ones(n_rx, dtype=bool)
    mask = np.asarray(absorbing, dtype=bool)
    if mask.shape != (n_rx,):
        raise ValueError(f"absorbing must hold one flag per receiver ({n_rx}).")
    return mask


def _first_crossing(prev, nxt, centers, r_r, inside):
    """Receiver whose surface the segment prev -> nxt crosses first, among
    the spheres flagged in ``inside`` (each row has at least one)."""
    d = nxt - prev
    rel = prev[:, None, :] - centers[None, :, :]
    a = np.einsum("ij,ij->i", d, d)[:, None]
    b = np.einsum("ikj,ij->ik", rel, d)
    c = np.einsum("ikj,ikj->ik", rel, rel) - r_r**2
    disc = np.clip(b**2 - a * c, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (-b - np.sqrt(disc)) / a
    t = np.where(inside, np.nan_to_num(t, nan=0.0), np.inf)
    return t.argmin(axis=1)


def _mirror(points, prev, center, r_r):
    """Reflect ``points`` lying inside the sphere back out along the radius:
    an overshoot of depth ``delta`` ends at radial distance ``r_r + delta``."""
    rel = points - center
    dist = np.linalg.norm(rel, axis=1)
    # a point exactly at the centre has no radial direction; use the arrival side
    fallback = prev - center
    rel = np.where(dist[:, None] > 0, rel, fallback)
    norm = np.linalg.norm(rel, axis=1)
    unit = rel / np.where(norm > 0, norm, 1.0)[:, None]
    return center + unit * (2 * r_r - dist)[:, None]


def resolve_batch(prev, nxt, centers, r_r, absorbing=None):
    """Vectorised absorption/reflection check for one step of many molecules.

    A molecule is absorbed when its new position lies strictly inside an
    absorbing sphere. If it lies inside several, the sphere whose surface the
    segment crosses first wins. Positions inside a non-absorbing sphere are
    mirrored out radially, at most :data:`MAX_REFLECTIONS` times.

    Args:
        prev (numpy.ndarray): ``(n, 3)`` positions before the step, all outside
            every sphere.
        nxt (numpy.ndarray): ``(n, 3)`` positions after the step.
        centers (numpy.ndarray): ``(n_rx, 3)`` sphere centres.
        r_r (float): sphere radius.
        absorbing (array-like, optional): per-receiver absorption flags.
            Defaults to all absorbing.

    Returns:
        tuple: corrected positions ``(n, 3)``, absorbing receiver per molecule
        (-1 when free) and a boolean mask of failed corrections.
    """
    centers = np.asarray(centers, dtype=float)
    absorbing = _absorbing_mask(centers.shape[0], absorbing)
    nxt = np.array(nxt, dtype=float)
    n = nxt.shape[0]
    hit = np.full(n, -1, dtype=np.int64)
    failed = np.zeros(n, dtype=bool)
    if n == 0:
        return nxt, hit, failed

    # only molecules inside the bounding box of all spheres can interact
    lo = centers.min(axis=0) - r_r
    hi = centers.max(axis=0) + r_r
    near = np.flatnonzero(np.all((nxt > lo) & (nxt < hi), axis=1))
    if near.size == 0:
        return nxt, hit, failed

    p0 = prev[near]
    p1 = nxt[near]
    d2 = ((p1[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
    inside = d2 < r_r**2
    absorb_in = inside & absorbing
    n_in = absorb_in.sum(axis=1)
    rows = np.flatnonzero(n_in == 1)
    hit[near[rows]] = absorb_in[rows].argmax(axis=1)
    rows = np.flatnonzero(n_in > 1)
    if rows.size:
        hit[near[rows]] = _first_crossing(
            p0[rows], p1[rows], centers, r_r, absorb_in[rows]
        )

    if absorbing.all():
        return nxt, hit, failed

    reflect = inside & ~absorbing
    pending = np.flatnonzero(reflect.any(axis=1) & (n_in == 0))
    for _ in range(MAX_REFLECTIONS):
        if pending.size == 0:
            break
        sphere = reflect[pending].argmax(axis=1)
        p1[pending] = _mirror(p1[pending], p0[pending], centers[sphere], r_r)
        d2 = ((p1[pending, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
        now_inside = d2 < r_r**2
        caught = now_inside & absorbing
        got = caught.any(axis=1)
        hit[near[pending[got]]] = caught[got].argmax(axis=1)
        reflect[pending] = now_inside & ~absorbing
        pending = pending[~got & reflect[pending].any(axis=1)]

    if pending.size:
        failed[near[pending]] = True
        p1[pending] = p0[pending]
    nxt[near] = p1
    return nxt, hit, failed


def resolve_collision(prev, next, topology, absorbing=None):
    """Interaction of a single molecule's step with the receiver spheres.

    Args:
        prev (array-like): position before the step, outside every sphere.
        next (array-like): position after the step.
        topology (Topology): receiver arrangement.
        absorbing (array-like, optional): per-receiver absorption flags.
            Defaults to all absorbing.

    Raises:
        CollisionError: if the reflection loop could not leave a
            non-absorbing sphere.

    Returns:
        Moved or Absorbed
    """
    prev = np.asarray(prev, dtype=float).reshape(1, 3)
    nxt = np.asarray(next, dtype=float).reshape(1, 3)
    position, hit, failed = resolve_batch(
        prev, nxt, topology.rx_centers, topology.r_r, absorbing
    )
    if failed[0]:
        raise CollisionError(
            f"Position {nxt[0]} could not be moved outside the reflective spheres."
        )
    if hit[0] >= 0:
        return Absorbed(int(hit[0]))
    return Moved(position[0])


def walk(origins, emit_steps, n_steps, topology, params, rng, absorbing=None):
    """Random walk of a batch of molecules until absorption or ``n_steps``.

    A molecule is released at the start of step ``emit_steps[k]`` from
    ``origins[k]``. Absorbed molecules leave the walk; molecules still free
    after ``n_steps`` are discarded.

    Args:
        origins (array-like): ``(n, 3)`` release positions.
        emit_steps (array-like): ``(n,)`` release step of each molecule.
        n_steps (int): length of the walk in steps.
        topology (Topology): receiver arrangement.
        params (DiffusionParams): diffusion parameters.
        rng (numpy.random.Generator): random stream.
        absorbing (array-like, optional): per-receiver absorption flags.

    Returns:
        WalkResult
    """
    pos = np.array(origins, dtype=float).reshape(-1, 3)
    emit_steps = np.asarray(emit_steps, dtype=np.int64).ravel()
    n = pos.shape[0]
    if emit_steps.shape != (n,):
        raise ValueError("emit_steps must hold one entry per origin.")
    hit_step = np.full(n, -1, dtype=np.int64)
    hit_rx = np.full(n, -1, dtype=np.int64)
    failures = 0

    order = np.argsort(emit_steps, kind="stable")
    released = np.searchsorted(emit_steps[order], np.arange(n_steps), side="right")
    active = np.empty(0, dtype=np.int64)
    n_released = 0
    for s in range(int(n_steps)):
        if released[s] > n_released:
            active = np.concatenate([active, order[n_released : released[s]]])
            n_released = released[s]
        if active.size == 0:
            continue
        prev = pos[active]
        moved, rx, failed = resolve_batch(
            prev, step(prev, params, rng), topology.rx_centers, topology.r_r,
            absorbing,
        )
        pos[active] = moved
        failures += int(failed.sum())
        done = rx >= 0
        if done.any():
            hit_step[active[done]] = s
            hit_rx[active[done]] = rx[done]
            active = active[~done]

    if failures:
        logger.warning(
            "%d reflections could not leave a sphere; molecules held in place.",
            failures,
        )
    return WalkResult(hit_step, hit_rx, failures)
