"""
Receiver-side decision rules.

Count-based binary detectors serve the concentration shift keying family:
the fixed threshold detector (FTD) compares a combined count with a
threshold calibrated offline, and the adaptive threshold detector (ATD)
compares it with the previous interval's count. Counts of several receiver
antennas are merged by selection combining (SC) or equal gain combining
(EGC).

The index schemes are decided by the maximum count detector (MCD), which
picks the antenna with the most arrivals, or by likelihood detectors that
use the channel response: symbol-by-symbol ML with decision feedback, and
ML sequence detection, either exhaustive over a short window or by a
truncated Viterbi search.

Detectors that carry state between intervals derive from
:class:`mcvdim.detector.SymbolDetector`; one instance serves one stream.
"""

from mcvdim.detection.combining import COMBINERS, combine_egc, combine_sc
from mcvdim.detection.max_count import decode_max_count, mcd_msm, mcd_mssk
from mcvdim.detection.metrics import confusion_matrix
from mcvdim.detection.ml import (
    MAX_SEQUENCES,
    DetectorState,
    SymbolMLDetector,
    branch_cost,
    ml_sequence_detect,
    symbol_ml,
    tap_contributions,
)
from mcvdim.detection.threshold import (
    AdaptiveThresholdDetector,
    atd,
    atd_decode,
    calibrate_threshold,
    ftd,
)
