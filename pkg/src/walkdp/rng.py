"""Named, seedable random streams.

All randomness in a run flows from one master seed. Each consumer
(partitioner, batcher, noise, weight init) gets its own generator derived
from the master seed plus a label path, so adding draws to one stream never
perturbs another. Labels are hashed with SHA-256, not Python's ``hash``,
to keep streams stable across processes and platforms.
"""

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _label_entropy(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & _MASK64
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(master_seed: int, *labels) -> np.random.Generator:
    """Generator for the sub-stream identified by ``labels``.

    Same (master_seed, labels) always yields an identical stream;
    different label paths are statistically independent.
    """
    entropy = [int(master_seed) & _MASK64] + [_label_entropy(lab) for lab in labels]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def as_generator(seed) -> np.random.Generator:
    """Coerce an int seed / SeedSequence / Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
