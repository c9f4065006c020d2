from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DiffusionParams:
    """Physical and numerical parameters of the random walk.

    Attributes:
        D (float): diffusion coefficient, um^2/s; 0 gives a drift-only walk.
            Defaults to 79.4.
        dt (float): time step, seconds. Defaults to 1e-4.
        drift_velocity (tuple): uniform flow ``(v_x, v_y, v_z)`` in um/s.
            Defaults to no flow.
        n_molecules (int): molecules released per channel-response run.
            Defaults to 10**6.
    """

    D: float = 79.4
    dt: float = 1e-4
    drift_velocity: tuple = (0.0, 0.0, 0.0)
    n_molecules: int = 10**6

    def __post_init__(self):
        # D == 0 is the drift-only walk: every step moves by exactly v * dt
        if not self.D >= 0:
            raise ValueError(f"D must be non-negative, got {self.D}.")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}.")
        if int(self.n_molecules) != self.n_molecules or self.n_molecules < 1:
            raise ValueError(
                f"n_molecules must be a positive integer, got {self.n_molecules}."
            )
        drift = tuple(float(v) for v in np.ravel(self.drift_velocity))
        if len(drift) != 3:
            raise ValueError("drift_velocity must have three components.")
        object.__setattr__(self, "drift_velocity", drift)
        object.__setattr__(self, "n_molecules", int(self.n_molecules))

    @property
    def step_mean(self):
        """Per-axis mean displacement in one step, ``v * dt``."""
        return np.asarray(self.drift_velocity) * self.dt

    @property
    def step_std(self):
        """Per-axis standard deviation of one step, ``sqrt(2 D dt)``."""
        return float(np.sqrt(2 * self.D * self.dt))

    def steps_per_symbol(self, t_s):
        """Number of whole time steps in a symbol interval.

        Raises:
            ValueError: if ``t_s`` is not an integer multiple of ``dt``.
        """
        ratio = t_s / self.dt
        steps = int(round(ratio))
        if steps < 1 or abs(ratio - steps) > 1e-6 * max(1.0, ratio):
            raise ValueError(
                f"Symbol duration {t_s} s is not a whole number of {self.dt} s steps."
            )
        return steps

    def header(self):
        """Key/value description used in channel-response cache headers."""
        return {
            "D": repr(float(self.D)),
            "dt": repr(float(self.dt)),
            "drift_velocity": " ".join(repr(v) for v in self.drift_velocity),
            "n_molecules": str(self.n_molecules),
        }
