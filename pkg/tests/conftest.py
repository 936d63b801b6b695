"""Shared deterministic data builders.

Every dataset in the suite comes from a seeded random.Random stream, so the
numbers are identical on every platform and run; no test touches the global
RNG state.
"""

import math
import random


def gauss_stream(seed, n):
    """Standard normal draws via Box-Muller over a seeded uniform stream."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        u1 = rng.random() or 1e-300
        u2 = rng.random()
        r = math.sqrt(-2.0 * math.log(u1))
        out.append(r * math.cos(2.0 * math.pi * u2))
        out.append(r * math.sin(2.0 * math.pi * u2))
    return out[:n]


def lognormal_values(seed, n, mu=1.0, sigma=0.6):
    return [math.exp(mu + sigma * z) for z in gauss_stream(seed, n)]


def normal_values(seed, n, mu, sigma):
    return [mu + sigma * z for z in gauss_stream(seed, n)]


def split_values(values, k, seed):
    """Shuffle once, deal round-robin into k parts; no part is empty."""
    assert 1 <= k <= len(values)
    order = list(range(len(values)))
    random.Random(seed).shuffle(order)
    return [[values[j] for j in order[i::k]] for i in range(k)]
