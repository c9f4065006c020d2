import pandas as pd

from mcvdim.harness.sweep import PARAM_COLUMNS

RECORD_COLUMNS = (
    ("scheme", "detector", "mapping", "engine")
    + PARAM_COLUMNS
    + ("bits", "bit_errors", "ber", "half_width", "low_confidence", "skipped", "note")
)


def records_frame(records, include_timing=False):
    """Records as a DataFrame with one row per record, in the given order.

    Args:
        records (list): :class:`BerRecord` objects.
        include_timing (bool, optional): add the ``wall_time`` column.
            Defaults to False.

    Returns:
        pd.DataFrame
    """
    columns = list(RECORD_COLUMNS) + (["wall_time"] if include_timing else [])
    rows = [record.as_row(include_timing) for record in records]
    return pd.DataFrame(rows, columns=columns)


def emit_csv(records, include_timing=False):
    """CSV bytes of ``records``: a header naming every column, then one row
    per record. Floats carry ten significant digits. Without timing the
    output of a seeded sweep is byte-identical across runs.

    >>> emit_csv([]).decode().startswith("scheme,detector,mapping")
    True

    Returns:
        bytes
    """
    frame = records_frame(records, include_timing)
    text = frame.to_csv(index=False, float_format="%.10g", lineterminator="\n")
    return text.encode("utf-8")
