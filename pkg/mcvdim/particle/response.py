from dataclasses import dataclass, field

import numpy as np

from mcvdim.exceptions import ChannelDataError

# slack for floating-point sums of probabilities
_TOLERANCE = 1e-12
_SHAPE_KEYS = ("n_tx", "n_rx", "L", "t_s")


@dataclass(frozen=True, eq=False)
class ChannelResponse:
    """Finite impulse response of a molecular MIMO channel.

    ``h[i, j, n]`` is the probability that a molecule released by transmit
    antenna ``i`` at the start of a symbol interval is absorbed by receiver
    ``j`` during the ``n``-th interval after release (``n = 0`` is the
    interval of release).

    Attributes:
        h (numpy.ndarray): read-only ``(n_tx, n_rx, L)`` tap tensor.
        t_s (float): symbol duration used for binning, seconds.
        meta (dict): ordered ``str -> str`` description of how the taps were
            produced (diffusion parameters, topology, seed, ...).
    """

    h: np.ndarray
    t_s: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        if h.ndim != 3 or 0 in h.shape:
            raise ChannelDataError("h must be a non-empty (n_tx, n_rx, L) array.")
        if not np.all(np.isfinite(h)) or h.min() < 0 or h.max() > 1:
            raise ChannelDataError("Channel taps must lie in [0, 1].")
        totals = h.sum(axis=(1, 2))
        if totals.max() > 1 + _TOLERANCE:
            raise ChannelDataError(
                f"Total absorption probability of transmitter {totals.argmax()} "
                f"is {totals.max():.6g} > 1."
            )
        if not self.t_s > 0:
            raise ChannelDataError(f"t_s must be positive, got {self.t_s}.")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "t_s", float(self.t_s))
        object.__setattr__(self, "meta", {str(k): str(v) for k, v in self.meta.items()})

    @property
    def n_tx(self):
        return self.h.shape[0]

    @property
    def n_rx(self):
        return self.h.shape[1]

    @property
    def L(self):
        """Channel memory in symbol intervals."""
        return self.h.shape[2]

    def truncate(self, L):
        """Keep only the first ``L`` taps.

        Raises:
            ValueError: if ``L`` is not in ``[1, self.L]``.
        """
        if int(L) != L or not 1 <= L <= self.L:
            raise ValueError(f"Cannot truncate memory {self.L} to {L}.")
        if L == self.L:
            return self
        return ChannelResponse(self.h[:, :, : int(L)], self.t_s, self.meta)

    def is_circulant(self):
        """``True`` when every row is the first row shifted circularly, i.e.
        ``h[i, j] == h[0, (j - i) mod n_rx]`` exactly."""
        if self.n_tx != self.n_rx:
            return False
        base = self.h[0]
        return all(
            np.array_equal(self.h[i], np.roll(base, i, axis=0))
            for i in range(1, self.n_tx)
        )

    def header(self):
        """Ordered key/value header: metadata followed by the tensor shape."""
        out = dict(self.meta)
        out.update(
            n_tx=str(self.n_tx), n_rx=str(self.n_rx), L=str(self.L), t_s=repr(self.t_s)
        )
        return out

    def body(self):
        """Tap values, one ``(i, j)`` subchannel per line, ``repr`` formatted
        so that parsing restores every float exactly."""
        lines = (
            " ".join(repr(float(v)) for v in self.h[i, j])
            for i in range(self.n_tx)
            for j in range(self.n_rx)
        )
        return "\n".join(lines) + "\n"

    def to_text(self):
        """Serialise to ``key = value`` header lines, a blank line, and the
        body in ``(i, j, n)`` row-major order."""
        head = "".join(f"{k} = {v}\n" for k, v in self.header().items())
        return head + "\n" + self.body()

    @classmethod
    def from_text(cls, text):
        """Inverse of :meth:`to_text`.

        Raises:
            ChannelDataError: if the header or body is malformed.
        """
        head, sep, body = text.partition("\n\n")
        if not sep:
            raise ChannelDataError("Missing blank line between header and body.")
        header = parse_header(head)
        try:
            n_tx, n_rx, L = (int(header.pop(k)) for k in ("n_tx", "n_rx", "L"))
            t_s = float(header.pop("t_s"))
        except (KeyError, ValueError) as exc:
            raise ChannelDataError(f"Incomplete channel header: {exc}") from exc
        try:
            values = np.array(body.split(), dtype=float)
        except ValueError as exc:
            raise ChannelDataError(f"Non-numeric channel tap: {exc}") from exc
        if values.size != n_tx * n_rx * L:
            raise ChannelDataError(
                f"Expected {n_tx * n_rx * L} taps, found {values.size}."
            )
        return cls(values.reshape(n_tx, n_rx, L), t_s, header)


def parse_header(text):
    """Parse ``key = value`` lines into an ordered dict. Blank lines and
    lines starting with ``#`` are skipped."""
    header = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ChannelDataError(f"Header line without '=': {line!r}")
        header[key.strip()] = value.strip()
    return header


def shift_fill(first_row):
    """Full UCA tensor from the response of transmitter 0, using
    ``h[i, j] = h[0, (j - i) mod n]``.

    Args:
        first_row (numpy.ndarray): ``(n_rx, L)`` taps of transmitter 0.

    Returns:
        numpy.ndarray: ``(n_rx, n_rx, L)`` taps.
    """
    first_row = np.asarray(first_row, dtype=float)
    n = first_row.shape[0]
    return np.stack([np.roll(first_row, i, axis=0) for i in range(n)])
