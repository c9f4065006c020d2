"""Module for checking behavior of SymbolDetector."""
import numpy as np
import pytest

from mcvdim.detector import SymbolDetector

# override this attribute so that it is instantiable
SymbolDetector.__abstractmethods__ = set()


def test_counters():
    det = SymbolDetector(memory=2)
    det.update(np.zeros(3))
    det.update(np.zeros(3))
    assert det.total_symbols == 2
    assert det.symbols_since_reset == 2
    det.reset()
    assert det.total_symbols == 2
    assert det.symbols_since_reset == 0


def test_history_is_bounded():
    det = SymbolDetector(memory=2)
    for symbol in range(4):
        det._history.append(symbol)
    assert det.history == [2, 3]
    det.reset()
    assert det.history == []


def test_validate_counts_shape():
    det = SymbolDetector()
    det._validate_counts(np.zeros((2, 1)))
    with pytest.raises(ValueError) as _:
        det._validate_counts(np.zeros((3, 1)))


def test_validate_counts_negative():
    det = SymbolDetector()
    with pytest.raises(ValueError) as _:
        det._validate_counts([1, -1])
