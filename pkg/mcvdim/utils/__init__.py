"""Small helpers shared by the simulation engines: deterministic derivation of
independent random streams, and argmax with uniformly random tie-breaking.
"""

from mcvdim.utils._random import derive_rng, derive_seed, argmax_random_tie
