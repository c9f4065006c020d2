import math
from dataclasses import dataclass, field

#: two-sided 95% normal quantile
Z_95 = 1.959963984540054
#: fewer error events than this mark an estimate as low confidence
MIN_ERROR_EVENTS = 10


@dataclass(frozen=True)
class BerRecord:
    """Bit error rate estimate of one sweep point.

    Attributes:
        scheme (str): scheme label, e.g. ``"MSSK-gray"``.
        detector (str): detector name, e.g. ``"mcd"`` or ``"theory"``.
        mapping (str): antenna labels, ``"natural"`` or ``"gray"``.
        params (dict): resolved physical and budget parameters.
        bits (int): information bits counted.
        bit_errors (int): erroneous bits among them.
        ber (float, optional): error rate; computed as ``bit_errors / bits``
            when omitted. Analytical records carry it with ``bits = 0``.
        engine (str): ``"statistical"``, ``"particle"`` or ``"theory"``.
        skipped (bool): the point could not be evaluated; see ``note``.
        note (str): free-text remark.
        wall_time (float): seconds spent on the point.
    """

    scheme: str
    detector: str
    mapping: str
    params: dict = field(default_factory=dict)
    bits: int = 0
    bit_errors: int = 0
    ber: float = None
    engine: str = "statistical"
    skipped: bool = False
    note: str = ""
    wall_time: float = 0.0

    def __post_init__(self):
        if self.bits < 0 or not 0 <= self.bit_errors <= self.bits:
            raise ValueError(
                f"Invalid counts: {self.bit_errors} errors in {self.bits} bits."
            )
        if self.ber is None:
            ber = self.bit_errors / self.bits if self.bits else math.nan
            object.__setattr__(self, "ber", ber)
        elif not math.isnan(self.ber) and not 0 <= self.ber <= 1:
            raise ValueError(f"BER must lie in [0, 1], got {self.ber}.")

    @property
    def half_width(self):
        """95% confidence half-width of the normal approximation to the
        binomial proportion; 0 for analytical records."""
        if not self.bits or math.isnan(self.ber):
            return 0.0
        return Z_95 * math.sqrt(self.ber * (1 - self.ber) / self.bits)

    @property
    def low_confidence(self):
        return bool(self.bits) and self.bit_errors < MIN_ERROR_EVENTS

    def as_row(self, include_timing=False):
        """Flat mapping for tabular output."""
        row = {
            "scheme": self.scheme,
            "detector": self.detector,
            "mapping": self.mapping,
            "engine": self.engine,
        }
        row.update(self.params)
        row.update(
            bits=self.bits,
            bit_errors=self.bit_errors,
            ber=self.ber,
            half_width=self.half_width,
            low_confidence=self.low_confidence,
            skipped=self.skipped,
            note=self.note,
        )
        if include_timing:
            row["wall_time"] = self.wall_time
        return row
