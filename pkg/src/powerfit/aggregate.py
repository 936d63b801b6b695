"""Exact-merge (n, mean, ssd) statistics and the unstable one-pass baseline.

ssd is the sum of squared deviations from the mean (n times the population
variance). Two partial statistics merge exactly, so shard-local summaries can
be combined in any grouping without revisiting the raw data; the pairwise
queue reduction keeps the merge tree shallow. The one-pass baseline exists
only to demonstrate the cancellation it suffers from.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = ["Aggregate", "EMPTY", "from_values", "merge", "aggregate_queue", "variance_naive_onepass"]


@dataclass(frozen=True)
class Aggregate:
    n: int
    mean: float
    ssd: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("count must be nonnegative")
        if self.n == 0 and (self.mean != 0.0 or self.ssd != 0.0):
            raise DomainError("empty aggregate must be (0, 0, 0)")


EMPTY = Aggregate(0, 0.0, 0.0)


def from_values(values: Sequence[float]) -> Aggregate:
    """Exact two-pass statistics of a batch (empty gives the identity)."""
    n = len(values)
    if n == 0:
        return EMPTY
    mean = math.fsum(values) / n
    ssd = math.fsum((v - mean) ** 2 for v in values)
    return Aggregate(n, mean, ssd)


def merge(a: Aggregate, b: Aggregate) -> Aggregate:
    """Combine two disjoint parts; EMPTY is the identity."""
    if a.n == 0:
        return b
    if b.n == 0:
        return a
    n = a.n + b.n
    delta = b.mean - a.mean
    mean = a.mean + delta * b.n / n
    # delta**2 * a.n * b.n / n, factored so intermediates stay near delta**2
    ssd = a.ssd + b.ssd + delta * (delta * a.n / n) * b.n
    return Aggregate(n, mean, ssd)


def aggregate_queue(parts: Iterable[Aggregate]) -> Aggregate:
    """Pairwise FIFO reduction: pop two, merge, push the result."""
    q = deque(parts)
    if not q:
        raise DomainError("nothing to aggregate")
    while len(q) > 1:
        a = q.popleft()
        b = q.popleft()
        q.append(merge(a, b))
    return q[0]


def variance_naive_onepass(values: Sequence[float]) -> float:
    """(1/n)*sum(x^2) - (1/n^2)*(sum(x))^2 in plain arithmetic.

    Deliberately cancellation-prone; may come out negative. Kept as the
    baseline the exact merge is compared against.
    """
    if len(values) == 0:
        raise DomainError("variance of an empty sequence")
    s = 0.0
    q = 0.0
    for v in values:
        s += v
        q += v * v
    n = len(values)
    return q / n - (s * s) / (n * n)
