from dataclasses import dataclass

import numpy as np

from mcvdim.exceptions import UnsupportedConfigurationError
from mcvdim.modulation.mapping import MAPPINGS, is_power_of_two

SCHEMES = (
    "SISO_BCSK",
    "SISO_DMOSK",
    "RC_BCSK",
    "SMUX_BCSK",
    "MSSK",
    "QMSSK",
    "MSM",
)
INDEX_SCHEMES = ("MSSK", "QMSSK", "MSM")
BCSK_SCHEMES = ("SISO_BCSK", "SISO_DMOSK", "RC_BCSK", "SMUX_BCSK")

# molecule types each scheme uses when none is requested
_DEFAULT_BETA = {
    "SISO_BCSK": 1,
    "SISO_DMOSK": 2,
    "RC_BCSK": 1,
    "SMUX_BCSK": 1,
    "MSSK": 1,
    "QMSSK": 2,
    "MSM": 2,
}
# schemes that may run over one or two orthogonal molecule types
_FREE_BETA = ("RC_BCSK", "SMUX_BCSK")


@dataclass(frozen=True)
class SchemeConfig:
    """A modulation scheme together with its bit-rate and energy budget.

    Every scheme transmits one bit per ``t_b`` on average and spends
    ``M_tx / 2`` molecules per bit on average.

    Attributes:
        scheme (str): one of :data:`SCHEMES`.
        n_tx (int): transmit antennas.
        n_rx (int, optional): receiver antennas. Defaults to ``n_tx``.
        t_b (float): bit duration, seconds. Defaults to 0.25.
        M_tx (float): molecule budget, ``M_tx / 2`` per bit. Defaults to 300.
        mapping (str): ``"natural"`` or ``"gray"`` antenna labels.
            Defaults to ``"natural"``.
        beta (int, optional): molecule types. Fixed for every scheme except
            RC and SMUX, which accept 1 or 2.
    """

    scheme: str
    n_tx: int
    n_rx: int = None
    t_b: float = 0.25
    M_tx: float = 300
    mapping: str = "natural"
    beta: int = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise UnsupportedConfigurationError(
                f"Unknown scheme {self.scheme!r}; expected one of {SCHEMES}."
            )
        if int(self.n_tx) != self.n_tx or self.n_tx < 1:
            raise ValueError(f"n_tx must be a positive integer, got {self.n_tx}.")
        if self.n_rx is None:
            object.__setattr__(self, "n_rx", int(self.n_tx))
        if int(self.n_rx) != self.n_rx or self.n_rx < 1:
            raise ValueError(f"n_rx must be a positive integer, got {self.n_rx}.")
        if not self.t_b > 0:
            raise ValueError(f"t_b must be positive, got {self.t_b}.")
        if not self.M_tx >= 0:
            raise ValueError(f"M_tx must be non-negative, got {self.M_tx}.")
        if self.mapping not in MAPPINGS:
            raise ValueError(
                f"mapping must be one of {MAPPINGS}, got {self.mapping!r}."
            )
        default = _DEFAULT_BETA[self.scheme]
        beta = default if self.beta is None else self.beta
        if beta != default and not (self.scheme in _FREE_BETA and beta in (1, 2)):
            raise UnsupportedConfigurationError(
                f"{self.scheme} does not support beta={beta}."
            )
        object.__setattr__(self, "beta", int(beta))
        if self.is_index_scheme:
            if not is_power_of_two(self.n_tx) or self.n_tx < 2:
                raise UnsupportedConfigurationError(
                    f"{self.scheme} needs a power-of-two n_tx >= 2, got {self.n_tx}."
                )
            if self.n_rx != self.n_tx:
                raise UnsupportedConfigurationError(
                    f"{self.scheme} decodes one receiver per transmit antenna."
                )
        if self.scheme in ("SMUX_BCSK", "RC_BCSK") and self.n_rx != self.n_tx:
            raise UnsupportedConfigurationError(
                f"{self.scheme} pairs every transmit antenna with a receiver."
            )

    @property
    def is_index_scheme(self):
        return self.scheme in INDEX_SCHEMES

    @property
    def index_bits(self):
        """Bits carried by the antenna index (0 for the BCSK family)."""
        return int(np.log2(self.n_tx)) if self.is_index_scheme else 0

    def label(self):
        """Short human-readable name, e.g. ``"MSSK-gray"``."""
        name = self.scheme
        if self.is_index_scheme:
            name += f"-{self.mapping}"
        if self.scheme in _FREE_BETA and self.beta == 2:
            name += "-dual"
        return name


def derive_params(cfg):
    """Symbol duration, emission size and bits per symbol of a scheme.

    ``emission`` is the number of molecules an active antenna releases per
    molecule type before rounding to whole molecules.

    >>> derive_params(SchemeConfig("MSSK", 8, t_b=0.25, M_tx=300))
    (0.75, 450.0, 3)

    Args:
        cfg (SchemeConfig): scheme and budget.

    Returns:
        tuple: ``(t_s, emission, bits_per_symbol)``.
    """
    if not isinstance(cfg, SchemeConfig):
        raise TypeError("derive_params expects a SchemeConfig.")
    n = cfg.n_tx
    M = float(cfg.M_tx)
    if cfg.scheme == "SISO_BCSK":
        bits, emission = 1, M
    elif cfg.scheme == "SISO_DMOSK":
        bits, emission = 2, M
    elif cfg.scheme == "RC_BCSK":
        bits, emission = cfg.beta, M / n
    elif cfg.scheme == "SMUX_BCSK":
        bits, emission = cfg.beta * n, M
    elif cfg.scheme == "MSSK":
        bits = cfg.index_bits
        emission = bits / 2 * M
    elif cfg.scheme == "QMSSK":
        bits = 2 * cfg.index_bits
        emission = cfg.index_bits / 2 * M
    else:
        bits = 1 + cfg.index_bits
        emission = bits / 2 * M
    return bits * cfg.t_b, emission, bits
