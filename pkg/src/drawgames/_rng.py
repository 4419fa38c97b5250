"""Named, counter-based random streams derived from one master seed."""
import zlib

import numpy as np


def _key(name):
    if isinstance(name, (int, np.integer)):
        return int(name) & 0xFFFFFFFF
    return zlib.crc32(str(name).encode("utf-8"))


def substream(seed, *names):
    """Return a Philox generator keyed by ``seed`` and a path of names.

    The same (seed, names) always yields the same stream, independent of how
    many other streams were created, so adding instrumentation never shifts
    results.
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [_key(n) for n in names]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def fresh_seed(rng):
    """Draw a 64-bit unsigned seed from ``rng``."""
    return int(rng.integers(0, 2**63 - 1, dtype=np.int64))
