"""Signed log-domain scalar arithmetic.

Real numbers are carried as (sign, ln|x|) pairs so that products, powers and
sums of arbitrary magnitude stay representable. Same-sign sums reduce to
log-sum-exp; opposite-sign sums use a log-difference built on expm1. The sign
is an explicit channel rather than the imaginary part of a complex logarithm,
which keeps every operation on the real line and makes cancellation explicit.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, TransformOverflowError

__all__ = [
    "SignedLog",
    "ZERO",
    "LN_MAX",
    "lse",
    "signed_add",
    "signed_mul",
    "log_mean",
    "log_variance",
]

# ln(DBL_MAX); exp() overflows above this.
LN_MAX = math.log(sys.float_info.max)

# Opposite-sign magnitudes whose logs agree within this are treated as exact
# cancellation: the true difference is below double-precision resolution.
_CANCEL_EPS = 1e-15


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as (sign, ln|x|); sign 0 pairs with logmag -inf."""

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError("sign must be -1, 0, or +1")
        if math.isnan(self.logmag):
            raise DomainError("logmag must not be NaN")
        if (self.sign == 0) != (self.logmag == -math.inf):
            raise DomainError("sign 0 and logmag -inf must coincide")

    @classmethod
    def from_float(cls, x: float) -> "SignedLog":
        if math.isnan(x):
            raise DomainError("cannot represent NaN")
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.logmag > LN_MAX:
            raise TransformOverflowError(
                "magnitude exceeds the double-precision range",
                log_magnitude=self.logmag,
                sign=self.sign,
            )
        return self.sign * math.exp(self.logmag)

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.logmag)


ZERO = SignedLog(0, -math.inf)


def lse(terms: Sequence[float]) -> float:
    """ln(sum(exp(t))) shifted by the max so it never overflows.

    Returns -inf when every term is -inf (the empty sum).
    """
    if len(terms) == 0:
        raise DomainError("lse of an empty sequence")
    m = max(terms)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(t - m) for t in terms))


def signed_add(a: SignedLog, b: SignedLog) -> SignedLog:
    if a.sign == 0:
        return b
    if b.sign == 0:
        return a
    if a.logmag >= b.logmag:
        big, small = a, b
    else:
        big, small = b, a
    d = big.logmag - small.logmag
    if a.sign == b.sign:
        return SignedLog(a.sign, big.logmag + math.log1p(math.exp(-d)))
    if d < _CANCEL_EPS:
        return ZERO
    # ln(e^p - e^q) = p + ln(1 - e^{-(p-q)}) with p > q
    return SignedLog(big.sign, big.logmag + math.log(-math.expm1(-d)))


def signed_mul(a: SignedLog, b: SignedLog) -> SignedLog:
    s = a.sign * b.sign
    if s == 0:
        return ZERO
    return SignedLog(s, a.logmag + b.logmag)


def log_mean(values: Sequence[SignedLog]) -> SignedLog:
    """Mean of the represented reals, folded left to right."""
    if len(values) == 0:
        raise DomainError("mean of an empty sequence")
    total = ZERO
    for v in values:
        total = signed_add(total, v)
    if total.sign == 0:
        return ZERO
    return SignedLog(total.sign, total.logmag - math.log(len(values)))


def log_variance(values: Sequence[SignedLog]) -> float:
    """ln of the population variance of the represented reals.

    Constant input gives -inf (zero variance), never an exception; callers
    that need a positive variance must check for it.
    """
    if len(values) < 2:
        raise DomainError("variance needs at least two values")
    neg_mean = -log_mean(values)
    sq = [2.0 * signed_add(v, neg_mean).logmag for v in values]
    return lse(sq) - math.log(len(values))
