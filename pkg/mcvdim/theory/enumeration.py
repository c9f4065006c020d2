import numpy as np


class SequenceEnumerator:
    """All ``n_symbols ** L`` symbol sequences of length ``L``, in
    lexicographic order with the oldest symbol most significant.

    Sequences are addressed by their rank, so the space can be cut into
    contiguous ranges and visited in blocks.

    >>> enum = SequenceEnumerator(2, 2)
    >>> len(enum), [tuple(s) for s in enum]
    (4, [(0, 0), (0, 1), (1, 0), (1, 1)])
    """

    def __init__(self, n_symbols, L):
        if int(n_symbols) != n_symbols or n_symbols < 1:
            raise ValueError(f"n_symbols must be a positive integer, got {n_symbols}.")
        if int(L) != L or L < 0:
            raise ValueError(f"L must be a non-negative integer, got {L}.")
        self.n_symbols = int(n_symbols)
        self.L = int(L)

    def __len__(self):
        return self.n_symbols**self.L

    def __iter__(self):
        for start, stop in self.ranges(max(1, len(self) // 4096)):
            yield from self.block(start, stop)

    def block(self, start, stop):
        """Sequences of rank ``start`` to ``stop - 1`` as an ``(n, L)`` array."""
        ranks = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((ranks.size, self.L), dtype=np.int64)
        for pos in range(self.L - 1, -1, -1):
            ranks, digits[:, pos] = np.divmod(ranks, self.n_symbols)
        return digits

    def ranges(self, n_parts):
        """Cut the rank space into ``n_parts`` contiguous ``(start, stop)``
        ranges of near-equal size."""
        edges = np.linspace(0, len(self), int(n_parts) + 1).round().astype(np.int64)
        return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
