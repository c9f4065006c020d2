"""
Analytical bit error probability of the index schemes under maximum count
detection.

Arrivals are modelled as independent Gaussians whose moments follow from the
channel response and the last ``L`` transmitted symbols. For one such symbol
sequence, the probability that each receiver collects the largest count is
an integral of one Gaussian density against the product of the others'
distribution functions; weighting these probabilities by the Hamming
distance of the decided label gives the conditional error probability, and
averaging over all equiprobable sequences gives the error probability.

The enumeration grows as ``n_tx ** L``, so it is guarded; for circulant
channels only the sequences ending in antenna 0 are integrated and the rest
are obtained by rotation.
"""

from mcvdim.theory.ber import (
    MAX_SEQUENCES,
    conditional_ber,
    theoretical_ber,
    theoretical_ber_mssk,
)
from mcvdim.theory.enumeration import SequenceEnumerator
from mcvdim.theory.gaussian import p_max_antenna, p_max_vector, q_function
