"""Genetic operators over unified permutation genomes.

Genomes are plain Python lists of ints (a permutation of 1..L). All
randomness flows through a NumPy RandomState so that a seed fully
determines a run on every platform.
"""

from __future__ import annotations

import numpy as np

__all__ = ["rng_stream", "random_genome", "order_crossover", "two_opt_mutation"]


def rng_stream(seed) -> np.random.RandomState:
    """Deterministic MT19937 stream from a 64-bit integer seed.

    The seed is split into two 32-bit words and fed to RandomState's
    array seeding, so the stream is identical across platforms and NumPy
    versions. Passing an existing RandomState returns it unchanged; None
    gives an OS-seeded stream.
    """
    if isinstance(seed, np.random.RandomState):
        return seed
    if seed is None:
        return np.random.RandomState()
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    words = np.array([seed & 0xFFFFFFFF, seed >> 32], dtype=np.uint32)
    return np.random.RandomState(words)


def random_genome(rng, length: int) -> list:
    """Uniform random permutation of 1..length (Fisher-Yates)."""
    if length < 1:
        raise ValueError("genome length must be at least 1")
    return (rng.permutation(length) + 1).tolist()


def order_crossover(p1, p2, rng) -> list:
    """Order crossover (OX): keep a slice of p1, fill the rest from p2.

    Two cut points are drawn uniformly from 0..L (they may coincide, giving
    an empty slice). child[a:b] is copied from p1; the remaining positions
    are filled starting at index b, wrapping, with p2's values taken from
    index b onward, wrapping, skipping values already present.
    """
    length = len(p1)
    if len(p2) != length:
        raise ValueError(f"parent lengths differ: {length} vs {len(p2)}")
    cut1 = int(rng.randint(0, length + 1))
    cut2 = int(rng.randint(0, length + 1))
    a, b = (cut1, cut2) if cut1 <= cut2 else (cut2, cut1)

    child = [0] * length
    child[a:b] = p1[a:b]
    taken = set(p1[a:b])
    pos = b % length
    src = b % length
    for _ in range(length):
        v = p2[src]
        src = (src + 1) % length
        if v in taken:
            continue
        child[pos] = v
        pos = (pos + 1) % length
    return child


def two_opt_mutation(p, rng) -> list:
    """Single 2-opt move: reverse one randomly chosen segment p[i..j]."""
    length = len(p)
    if length < 2:
        raise ValueError("mutation needs a genome of length >= 2")
    i = int(rng.randint(0, length))
    j = int(rng.randint(0, length - 1))
    if j >= i:
        j += 1
    if i > j:
        i, j = j, i
    return p[:i] + p[i:j + 1][::-1] + p[j + 1:]
