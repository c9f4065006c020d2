import numpy as np


def confusion_matrix(sent, decided, n_symbols):
    """Count of every (sent, decided) symbol pair.

    >>> confusion_matrix([0, 1, 1], [0, 1, 2], 3).tolist()
    [[1, 0, 0], [0, 1, 1], [0, 0, 0]]
    """
    sent = np.asarray(sent, dtype=np.int64).ravel()
    decided = np.asarray(decided, dtype=np.int64).ravel()
    if sent.shape != decided.shape:
        raise ValueError("Need one decision per sent symbol.")
    flat = np.bincount(sent * n_symbols + decided, minlength=n_symbols**2)
    return flat.reshape(n_symbols, n_symbols)
