import dataclasses
import logging
from dataclasses import dataclass

from mcvdim.exceptions import ConfigurationError
from mcvdim.modulation import MAPPINGS, SCHEMES

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("M_tx", "t_b", "d_yz", "drift_vx")
DETECTORS = ("mcd", "symbol_ml", "sequence_ml", "theory", "ftd", "atd")
ENGINES = ("statistical", "particle")


@dataclass(frozen=True)
class SweepSpec:
    """A BER sweep over one parameter.

    Physical defaults describe an 8x8 uniform circular array: receiver radius
    5 um, 10 um transmitter-to-receiver and receiver-to-axis gaps,
    ``D = 79.4`` um^2/s, channel memory 30 symbols, ``M_tx = 300`` and
    ``t_b = 0.25`` s.

    Attributes:
        parameter (str): swept parameter, one of :data:`SWEEP_PARAMETERS`.
        values (tuple): strictly increasing values of ``parameter``.
        schemes (tuple): scheme names from :data:`~mcvdim.modulation.SCHEMES`.
        detectors (tuple): detector names from :data:`DETECTORS`. Pairs that
            do not apply to a scheme are recorded as skipped.
        mappings (tuple): antenna labelings for the index schemes.
        baseline_beta (int): molecule types of RC and SMUX (1 or 2).
        n_tx (int): antennas per side.
        r_r, d_x, d_yz (float): geometry, micrometres.
        D (float): diffusion coefficient, um^2/s.
        drift_vx (float): flow towards the receiver, um/s.
        L (int): channel memory, symbols.
        M_tx (float): molecule budget.
        t_b (float): bit duration, seconds.
        dt (float): random-walk step, seconds.
        n_molecules (int): molecules per channel response.
        arrival_mode (str): ``"gaussian"`` or ``"binomial"`` arrivals.
        combining (str): ``"egc"`` or ``"sc"`` for repetition coding.
        viterbi_memory (int): trellis memory of sequence detection.
        theory_memory (int, optional): memory of the analytical BER;
            defaults to ``L``.
        engine (str): ``"statistical"`` or ``"particle"``.
        particle_trials (int): trials per point with the particle engine.
        max_bits (int): information bits after which a point stops.
        target_errors (int): bit errors after which a point stops.
        block_symbols (int): symbols decoded per simulated block.
        calibration_symbols (int): symbols used to calibrate thresholds.
        n_jobs (int): joblib workers.
        seed (int): root seed.
        cache_dir (str, optional): channel-response cache directory.
    """

    parameter: str = "M_tx"
    values: tuple = (50, 100, 150, 200, 250, 300, 350, 400, 450, 500)
    schemes: tuple = ("MSSK",)
    detectors: tuple = ("mcd",)
    mappings: tuple = ("natural", "gray")
    baseline_beta: int = 1
    n_tx: int = 8
    r_r: float = 5.0
    d_x: float = 10.0
    d_yz: float = 10.0
    D: float = 79.4
    drift_vx: float = 0.0
    L: int = 30
    M_tx: float = 300.0
    t_b: float = 0.25
    dt: float = 1e-4
    n_molecules: int = 100000
    arrival_mode: str = "gaussian"
    combining: str = "egc"
    viterbi_memory: int = 3
    theory_memory: int = None
    engine: str = "statistical"
    particle_trials: int = 1000
    max_bits: int = 200000
    target_errors: int = 100
    block_symbols: int = 2000
    calibration_symbols: int = 10000
    n_jobs: int = 1
    seed: int = 0
    cache_dir: str = None

    def __post_init__(self):
        for name in ("values", "schemes", "detectors", "mappings"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        self._check_choice("parameter", SWEEP_PARAMETERS)
        self._check_choice("arrival_mode", ("gaussian", "binomial"))
        self._check_choice("combining", ("egc", "sc"))
        self._check_choice("engine", ENGINES)
        for name, allowed in (
            ("schemes", SCHEMES),
            ("detectors", DETECTORS),
            ("mappings", MAPPINGS),
        ):
            values = getattr(self, name)
            if not values:
                raise ConfigurationError(f"{name} must not be empty.")
            unknown = [v for v in values if v not in allowed]
            if unknown:
                raise ConfigurationError(
                    f"Unknown {name}: {unknown}; expected any of {allowed}."
                )
        if not self.values:
            raise ConfigurationError("values must not be empty.")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigurationError("values must be strictly increasing.")
        if self.baseline_beta not in (1, 2):
            raise ConfigurationError("baseline_beta must be 1 or 2.")
        for name in (
            "n_tx", "L", "n_molecules", "viterbi_memory", "particle_trials",
            "max_bits", "target_errors", "block_symbols", "calibration_symbols",
        ):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be at least 1.")
        if self.theory_memory is not None and not 1 <= self.theory_memory <= self.L:
            raise ConfigurationError("theory_memory must lie in [1, L].")

    def _check_choice(self, name, allowed):
        if getattr(self, name) not in allowed:
            raise ConfigurationError(
                f"{name} must be one of {allowed}, got {getattr(self, name)!r}."
            )

    def point(self, value):
        """Parameters of the sweep point where ``parameter`` equals ``value``."""
        return dataclasses.replace(self, **{self.parameter: value})

    def replace(self, **changes):
        """Copy with ``changes`` applied and validated."""
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(SweepSpec)}
_LIST_FIELDS = ("values", "schemes", "detectors", "mappings")
_OPTIONAL_FIELDS = ("theory_memory", "cache_dir")


def _number(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


def _convert(name, text):
    text = text.strip()
    if name in _OPTIONAL_FIELDS and text.lower() in ("", "none"):
        return None
    if name in _LIST_FIELDS:
        items = [item.strip() for item in text.split(",") if item.strip()]
        if name == "values":
            return tuple(_number(item) for item in items)
        return tuple(items)
    if name == "cache_dir" or isinstance(_FIELDS[name].default, str):
        return text
    if name == "theory_memory" or isinstance(_FIELDS[name].default, int):
        number = float(text)
        if not number.is_integer():
            raise ValueError(f"expected an integer, got {text!r}")
        return int(number)
    return float(text)


def parse_config(text, base=None):
    """Parse ``key = value`` lines into a :class:`SweepSpec`.

    Keys are the field names of :class:`SweepSpec`; list fields take
    comma-separated items; ``#`` starts a comment. Fields not mentioned keep
    their value in ``base`` (the defaults when omitted).

    >>> parse_config("parameter = t_b\\nvalues = 0.1, 0.2  # seconds").values
    (0.1, 0.2)

    Raises:
        ConfigurationError: on unknown keys, malformed lines or values.

    Returns:
        SweepSpec
    """
    changes = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigurationError(f"line {number}: expected 'key = value'.")
        if key not in _FIELDS:
            raise ConfigurationError(f"line {number}: unknown key {key!r}.")
        try:
            changes[key] = _convert(key, value)
        except ValueError as exc:
            raise ConfigurationError(f"line {number}: bad value for {key}: {exc}")
    base = SweepSpec() if base is None else base
    return base.replace(**changes)


def load_config(path, base=None):
    """Read a configuration file; see :func:`parse_config`."""
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), base)
