"""On-disk cache of simulated channel responses.

An entry is the text form of a ChannelResponse preceded by a ``checksum``
line holding the SHA-256 of its tap body. The file name is derived from the
header, and a lookup only hits when the stored header matches the requested
one exactly.
"""
import hashlib
import logging
import os
import tempfile

from mcvdim.exceptions import ChannelDataError, ChecksumError
from mcvdim.particle import ChannelResponse

logger = logging.getLogger(__name__)

HIT, MISS, MISMATCH = "hit", "miss", "mismatch"


def cir_fingerprint(header):
    """Stable digest of a ``key = value`` header, independent of key order."""
    canonical = "".join(f"{k} = {header[k]}\n" for k in sorted(header))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _path(cache_dir, header):
    return os.path.join(cache_dir, f"cir-{cir_fingerprint(header)[:32]}.txt")


def _body_checksum(body):
    return hashlib.sha256(body.encode()).hexdigest()


def read_cache_entry(cache_dir, header):
    """Look up ``header`` and report what was found.

    Returns:
        tuple: ``(ChannelResponse or None, status)`` with status ``"hit"``,
        ``"miss"`` or ``"mismatch"`` (an entry with this name exists but
        describes a different run).

    Raises:
        ChecksumError: if the stored taps do not match their checksum.
    """
    path = _path(cache_dir, header)
    if not os.path.exists(path):
        logger.debug("cache miss: %s", path)
        return None, MISS
    with open(path, encoding="utf-8") as fh:
        first, _, rest = fh.read().partition("\n")
    key, _, recorded = first.partition("=")
    if key.strip() != "checksum":
        raise ChecksumError(f"{path} has no checksum line.")
    _, sep, body = rest.partition("\n\n")
    if not sep or _body_checksum(body) != recorded.strip():
        raise ChecksumError(f"{path} does not match its checksum.")
    try:
        cir = ChannelResponse.from_text(rest)
    except ChannelDataError as exc:
        raise ChecksumError(f"{path} is corrupted: {exc}") from exc
    if cir.header() != dict(header):
        logger.warning("cache entry %s was written for different parameters", path)
        return None, MISMATCH
    logger.debug("cache hit: %s", path)
    return cir, HIT


def cir_cache_lookup(cache_dir, header):
    """Cached ChannelResponse whose header equals ``header``, or ``None``.

    Raises:
        ChecksumError: if the stored taps do not match their checksum.
    """
    return read_cache_entry(cache_dir, header)[0]


def cir_cache_store(cache_dir, cir):
    """Write ``cir`` to the cache. The file is written to a temporary name
    and renamed into place, so readers never see a partial entry.

    Returns:
        str: path of the entry.
    """
    os.makedirs(cache_dir, exist_ok=True)
    path = _path(cache_dir, cir.header())
    text = cir.to_text()
    body = text.partition("\n\n")[2]
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".cir-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"checksum = {_body_checksum(body)}\n")
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    logger.info("stored channel response in %s", path)
    return path
