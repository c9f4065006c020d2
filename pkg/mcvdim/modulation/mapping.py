from dataclasses import dataclass

import numpy as np

MAPPINGS = ("natural", "gray")


def is_power_of_two(n):
    return int(n) == n and n >= 1 and (int(n) & (int(n) - 1)) == 0


@dataclass(frozen=True, eq=False)
class IndexMap:
    """Bijection between antenna indices and bit labels.

    Attributes:
        kind (str): ``"natural"`` or ``"gray"``.
        codes (numpy.ndarray): integer label of each index.
    """

    kind: str
    codes: np.ndarray

    @property
    def n(self):
        return self.codes.size

    @property
    def n_bits(self):
        return int(self.n).bit_length() - 1

    @property
    def table(self):
        """``(n, n_bits)`` bit labels, most significant bit first."""
        shifts = np.arange(self.n_bits - 1, -1, -1)
        return (self.codes[:, None] >> shifts) & 1

    def to_bits(self, indices):
        """Bit labels of ``indices``; shape ``indices.shape + (n_bits,)``."""
        return self.table[np.asarray(indices)]

    def to_index(self, bits):
        """Indices whose labels are ``bits`` (last axis, MSB first)."""
        bits = np.asarray(bits, dtype=np.int64)
        weights = 1 << np.arange(self.n_bits - 1, -1, -1)
        values = bits @ weights if self.n_bits else np.zeros(bits.shape[:-1], int)
        inverse = np.empty(self.n, dtype=np.int64)
        inverse[self.codes] = np.arange(self.n)
        return inverse[values]

    def hamming_distance(self, a, b):
        """Number of differing label bits between indices ``a`` and ``b``."""
        return (self.to_bits(a) != self.to_bits(b)).sum(axis=-1)

    def distance_matrix(self):
        """``(n, n)`` pairwise Hamming distances of the labels."""
        idx = np.arange(self.n)
        return self.hamming_distance(idx[:, None], idx[None, :])


def gray_index_map(n, kind="gray"):
    """Index-to-label map for an alphabet of ``n`` antennas.

    The natural map labels index ``i`` with the binary form of ``i``. The Gray
    map uses the reflected Gray code ``i ^ (i >> 1)``, so circularly adjacent
    indices (including ``n - 1`` and ``0``) differ in exactly one bit.

    >>> gray_index_map(8).to_bits(3).tolist()
    [0, 1, 0]
    >>> gray_index_map(8, "natural").to_bits(3).tolist()
    [0, 1, 1]

    Args:
        n (int): alphabet size, a power of two.
        kind (str, optional): ``"gray"`` or ``"natural"``. Defaults to
            ``"gray"``.

    Raises:
        ValueError: if ``n`` is not a power of two or ``kind`` is unknown.

    Returns:
        IndexMap
    """
    if not is_power_of_two(n):
        raise ValueError(f"Alphabet size must be a power of two, got {n}.")
    if kind not in MAPPINGS:
        raise ValueError(f"kind must be one of {MAPPINGS}, got {kind!r}.")
    idx = np.arange(int(n), dtype=np.int64)
    codes = idx ^ (idx >> 1) if kind == "gray" else idx
    codes.setflags(write=False)
    return IndexMap(kind, codes)
