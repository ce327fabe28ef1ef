"""Deterministic random-stream derivation for replicas.

Replica r draws from a generator keyed on (master_seed, r) through numpy's
SeedSequence, so streams are independent and replicas can run in parallel
in any order without coordination. Sequences are reproducible within this
implementation only; statistical results do not depend on the stream choice.
"""

import numpy as np


def replica_stream(master_seed: int, replica: int = 0) -> np.random.Generator:
    """Return the generator for one replica of an experiment."""
    if replica < 0:
        raise ValueError("replica index must be non-negative")
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(replica,))
    return np.random.default_rng(ss)
