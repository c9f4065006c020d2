"""Errors raised by mcvdim.

Input problems subclass ``ValueError`` so that callers catching the built-in
keep working; failures that happen in the middle of a simulation step subclass
``RuntimeError``.
"""


class UnsupportedConfigurationError(ValueError):
    """A combination of parameters that the library does not model, e.g. a
    uniform circular array with ``n_tx != n_rx`` or a detector that does not
    apply to a modulation scheme."""


class GeometryError(ValueError):
    """The antenna arrangement violates a physical constraint (overlapping
    receiver spheres, a transmit point inside a sphere, ...)."""


class ChannelDataError(ValueError):
    """Channel taps, schedules or arrival counts hold values outside their
    admissible range."""


class ConfigurationError(ValueError):
    """A configuration file or command-line override could not be parsed."""


class ChecksumError(ValueError):
    """A cached channel response does not match its recorded checksum."""


class InfeasibleError(ValueError):
    """An exhaustive enumeration would exceed its guard.

    Attributes:
        required (int): number of items the enumeration would have visited.
        limit (int): the guard that was exceeded.
    """

    def __init__(self, required, limit, what="sequences"):
        self.required = int(required)
        self.limit = int(limit)
        super().__init__(
            f"Enumerating {self.required:.3e} {what} exceeds the limit of "
            f"{self.limit:.3e}."
        )


class CollisionError(RuntimeError):
    """The bounded reflection loop could not move a molecule outside every
    reflective sphere."""
