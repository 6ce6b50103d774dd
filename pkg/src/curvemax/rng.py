"""Deterministic random streams.

Every stochastic routine in the package draws from a counter-based Philox
generator keyed by (master_seed, stream_id).  Streams with distinct ids are
independent, and the same (seed, id) pair reproduces the same draws on any
platform numpy supports, which is what makes the CLI output byte-identical
across runs.
"""

from __future__ import annotations

import numpy as np

# Fixed stream ids, one per consumer.  New consumers append; never renumber.
STREAM_BALL_VOLUME = 1
STREAM_QUASI_TRIANGLE = 2
STREAM_KERNEL = 3
STREAM_SUP_SEARCH = 4
STREAM_MAXOP = 5
STREAM_CORPUS = 6
STREAM_GRAM = 7


def stream(master_seed: int, stream_id: int) -> np.random.Generator:
    """Return the Philox generator for one (seed, stream) pair."""
    key = np.array([master_seed & 0xFFFFFFFFFFFFFFFF,
                    stream_id & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def substream(master_seed: int, stream_id: int, index: int) -> np.random.Generator:
    """Indexed member of a stream family (e.g. one per dimension in a sweep)."""
    return stream(master_seed, (stream_id << 32) ^ index)
