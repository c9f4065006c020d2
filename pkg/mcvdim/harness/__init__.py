"""
Experiment driver.

A :class:`SweepSpec` names one swept parameter (``M_tx``, ``t_b``, ``d_yz``
or ``drift_vx``), its values, and the schemes, mappings and detectors to
compare. :func:`run_sweep` prepares the channel responses (reusing cached
ones), simulates every combination on the statistical channel until enough
bit errors were seen, and returns one :class:`BerRecord` per combination and
value; :func:`emit_csv` turns them into a CSV table.

Configuration files hold ``key = value`` lines with the field names of
:class:`SweepSpec`. The ``mcvdim`` command wraps these pieces.
"""

from mcvdim.harness.cache import (
    cir_cache_lookup,
    cir_cache_store,
    cir_fingerprint,
    read_cache_entry,
)
from mcvdim.harness.config import (
    DETECTORS,
    SWEEP_PARAMETERS,
    SweepSpec,
    load_config,
    parse_config,
)
from mcvdim.harness.records import BerRecord
from mcvdim.harness.report import emit_csv, records_frame
from mcvdim.harness.sweep import (
    make_decoder,
    prepare_channels,
    run_sweep,
    scheme_configs,
    simulate_link,
)
