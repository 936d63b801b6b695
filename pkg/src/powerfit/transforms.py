"""Box-Cox and Yeo-Johnson transforms, lambda-derivatives, and inverses.

Forward transforms are evaluated through expm1(u * ln(base)) / u so they stay
accurate arbitrarily close to the singular exponents (0 for Box-Cox, 0 and 2
for Yeo-Johnson) instead of losing digits to pow-then-subtract. Values whose
plain-arithmetic form would overflow are assembled in the signed log domain
and only materialized if representable.

The inverse problem (find lambda such that the transform of x equals y) is
solved in closed form with the real branches of the Lambert W function; both
W branches carry a root of the defining equation and one of them is the
spurious lambda = 0 solution, so the candidate is picked by a forward
residual check.
"""

from __future__ import annotations

import enum
import math

from .errors import ConfigurationError, DomainError, TransformOverflowError
from .stablenum import LN_MAX, ZERO, SignedLog, signed_add

__all__ = [
    "TransformKind",
    "boxcox",
    "yeojohnson",
    "boxcox_log",
    "boxcox_value_log",
    "yeojohnson_value_log",
    "boxcox_deriv",
    "lambert_w",
    "inv_boxcox_lambda",
    "inv_yeojohnson_lambda",
]

# -1/e, the left edge of the real Lambert W domain.
_BRANCH_POINT = -math.exp(-1.0)


class TransformKind(enum.Enum):
    BOX_COX = "bc"
    YEO_JOHNSON = "yj"

    @classmethod
    def parse(cls, name: str) -> "TransformKind":
        for kind in cls:
            if name == kind.value or name == kind.name.lower():
                return kind
        raise ConfigurationError(f"unknown transform kind: {name!r}")


def _check_lambda(lmbda: float) -> float:
    lmbda = float(lmbda)
    if not math.isfinite(lmbda):
        raise DomainError("lambda must be finite")
    return lmbda


def _check_x_positive(x: float) -> float:
    x = float(x)
    if not x > 0:
        raise DomainError("Box-Cox requires x > 0")
    return x


def boxcox(lmbda: float, x: float) -> float:
    """(x**lambda - 1)/lambda, with ln(x) at lambda = 0."""
    lmbda = _check_lambda(lmbda)
    x = _check_x_positive(x)
    if lmbda == 0.0:
        return math.log(x)
    t = lmbda * math.log(x)
    if t <= LN_MAX:
        return math.expm1(t) / lmbda
    # x**lambda alone overflows; the quotient may still be representable.
    return boxcox_value_log(lmbda, x).to_float()


def yeojohnson(lmbda: float, x: float) -> float:
    """The four-branch shifted power transform, defined for every real x."""
    lmbda = _check_lambda(lmbda)
    x = float(x)
    if math.isnan(x):
        raise DomainError("x must not be NaN")
    if x >= 0:
        if lmbda == 0.0:
            return math.log1p(x)
        t = lmbda * math.log1p(x)
        if t <= LN_MAX:
            return math.expm1(t) / lmbda
    else:
        u = 2.0 - lmbda
        if u == 0.0:
            return -math.log1p(-x)
        t = u * math.log1p(-x)
        if t <= LN_MAX:
            return -math.expm1(t) / u
    return yeojohnson_value_log(lmbda, x).to_float()


def boxcox_log(lmbda: float, x: float) -> SignedLog:
    """Signed-log of the power part x**lambda (ln(x) itself at lambda = 0)."""
    lmbda = _check_lambda(lmbda)
    x = _check_x_positive(x)
    if lmbda == 0.0:
        return SignedLog.from_float(math.log(x))
    return SignedLog(1, lmbda * math.log(x))


def _power_value_log(u: float, log_base: float) -> SignedLog:
    """Signed-log of (base**u - 1)/u given ln(base), for u != 0."""
    num = signed_add(SignedLog(1, u * log_base), SignedLog(-1, 0.0))
    if num.sign == 0:
        return ZERO
    sign = num.sign if u > 0 else -num.sign
    return SignedLog(sign, num.logmag - math.log(abs(u)))


def boxcox_value_log(lmbda: float, x: float) -> SignedLog:
    """Signed-log of the full Box-Cox value, never overflowing."""
    lmbda = _check_lambda(lmbda)
    x = _check_x_positive(x)
    if lmbda == 0.0:
        return SignedLog.from_float(math.log(x))
    return _power_value_log(lmbda, math.log(x))


def yeojohnson_value_log(lmbda: float, x: float) -> SignedLog:
    """Signed-log of the full Yeo-Johnson value, never overflowing."""
    lmbda = _check_lambda(lmbda)
    x = float(x)
    if math.isnan(x):
        raise DomainError("x must not be NaN")
    if x >= 0:
        if lmbda == 0.0:
            return SignedLog.from_float(math.log1p(x))
        return _power_value_log(lmbda, math.log1p(x))
    u = 2.0 - lmbda
    if u == 0.0:
        return SignedLog.from_float(-math.log1p(-x))
    return -_power_value_log(u, math.log1p(-x))


def boxcox_deriv(k: int, lmbda: float, x: float) -> float:
    """k-th derivative of the Box-Cox value with respect to lambda.

    Recurrence for lambda != 0:
      d^k psi = (x**lambda * ln(x)**k - k * d^(k-1) psi) / lambda
    and ln(x)**(k+1) / (k+1) at lambda = 0.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError("derivative order must be an integer >= 1")
    lmbda = _check_lambda(lmbda)
    x = _check_x_positive(x)
    lx = math.log(x)
    if lmbda == 0.0:
        return lx ** (k + 1) / (k + 1)
    t = lmbda * lx
    if t > LN_MAX:
        # dominant term x**lambda * ln(x)**k / lambda
        mag = t + k * math.log(abs(lx)) - math.log(abs(lmbda)) if lx != 0 else t
        raise TransformOverflowError(
            "derivative overflows the double-precision range", log_magnitude=mag
        )
    xl = math.exp(t)
    d = math.expm1(t) / lmbda
    for i in range(1, k + 1):
        d = (xl * lx**i - i * d) / lmbda
        if not math.isfinite(d):
            raise TransformOverflowError(
                "derivative overflows the double-precision range",
                log_magnitude=t + i * math.log(abs(lx)) - math.log(abs(lmbda)),
            )
    return d


def _halley(z: float, w: float) -> float:
    """Halley refinement of w*e^w = z from a starting point on the branch."""
    for _ in range(50):
        e = math.exp(w)
        f = w * e - z
        if abs(f) <= 1e-12 * abs(z):
            break
        wp1 = w + 1.0
        denom = e * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if abs(step) <= 1e-15 * (1.0 + abs(w)):
            break
    return w


def lambert_w(branch: int, z: float) -> float:
    """Real Lambert W on branch 0 or -1.

    Solves w * e^w = z. Branch 0 covers z >= -1/e; branch -1 additionally
    requires z < 0. Residual tolerance 1e-12 relative, at most 50 Halley
    iterations from a branch-point series or asymptotic start.
    """
    if branch not in (0, -1):
        raise DomainError("branch must be 0 or -1")
    z = float(z)
    if math.isnan(z):
        raise DomainError("z must not be NaN")
    if z < _BRANCH_POINT:
        # tolerate representation slop right at the branch point
        if z < _BRANCH_POINT * (1.0 + 1e-12):
            raise DomainError("z below -1/e has no real Lambert W value")
        z = _BRANCH_POINT
    if z == _BRANCH_POINT:
        return -1.0
    if branch == 0:
        if z == 0.0:
            return 0.0
        if z < _BRANCH_POINT + 1e-3:
            p = math.sqrt(max(0.0, 2.0 * (math.e * z + 1.0)))
            w = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0
        else:
            w = math.log1p(z)
        return _halley(z, w)
    if z >= 0.0:
        raise DomainError("branch -1 requires z < 0")
    if z < _BRANCH_POINT + 1e-3:
        p = math.sqrt(max(0.0, 2.0 * (math.e * z + 1.0)))
        w = -1.0 - p - p * p / 3.0 - 11.0 * p**3 / 72.0
    else:
        lz = math.log(-z)
        w = lz - math.log(-lz)
    return _halley(z, w)


def _log1p_prod(a: float, b: float) -> float:
    """ln(1 + a*b) without overflowing the product."""
    if a == 0.0 or b == 0.0:
        return 0.0
    s = math.copysign(1.0, a) * math.copysign(1.0, b)
    mag = math.log(abs(a)) + math.log(abs(b))
    if s > 0:
        if mag > LN_MAX:
            return mag
        return math.log1p(math.exp(mag))
    if mag >= 0.0:
        # 1 + a*b <= 0: no real log
        return -math.inf
    return math.log1p(-math.exp(mag))


def _forward_residual_ok(u: float, log_base: float, y: float) -> bool:
    """Check (base**u - 1)/u == y to 1e-8 relative, in logs if too large."""
    t = u * log_base
    if t <= LN_MAX:
        val = math.expm1(t) / u if u != 0.0 else log_base
        if math.isfinite(val):
            return abs(val - y) <= 1e-8 * max(1.0, abs(y))
    # compare exponents: u*ln(base) vs ln(1 + u*y)
    rhs = _log1p_prod(u, y)
    return abs(t - rhs) <= 1e-8 * max(1.0, abs(t))


def _solve_power_lambda(log_base: float, y: float) -> float:
    """Solve (base**u - 1)/u = y for u, given ln(base) != 0.

    The substitution w = -(u + 1/y) * ln(base) turns the equation into
    w * e^w = -base**(-1/y) * ln(base) / y, whose two real W branches hold
    the true root and the spurious u = 0 root.
    """
    if y == 0.0:
        raise DomainError("y = 0 is reached by no finite exponent")
    if (log_base > 0) != (y > 0):
        raise DomainError("y has the wrong sign for this x")
    # singular branch: y equals the u -> 0 limit ln(base)
    if abs(y - log_base) <= 1e-12 * max(1.0, abs(y), abs(log_base)):
        return 0.0
    arg = -math.exp(-log_base / y) * log_base / y
    if arg == 0.0:
        # underflow: the root is the exact limit u = -1/y
        return -1.0 / y
    if arg < _BRANCH_POINT:
        if arg < _BRANCH_POINT * (1.0 + 1e-9):
            raise DomainError("no real exponent reproduces y")
        arg = _BRANCH_POINT
    # true root sits on branch -1 exactly when it is on the far side of
    # the singular point from u = 0
    first = -1 if (y - log_base) * log_base > 0 else 0
    for branch in (first, -1 if first == 0 else 0):
        if branch == -1 and arg >= 0.0:
            continue
        w = lambert_w(branch, arg)
        u = -1.0 / y - w / log_base
        if _forward_residual_ok(u, log_base, y):
            return u
    raise DomainError("no real exponent reproduces y")


def inv_boxcox_lambda(x: float, y: float) -> float:
    """The lambda at which the Box-Cox transform of x equals y."""
    x = _check_x_positive(x)
    y = float(y)
    if math.isnan(y):
        raise DomainError("y must not be NaN")
    if x == 1.0:
        raise DomainError("x = 1 maps to 0 for every lambda")
    return _solve_power_lambda(math.log(x), y)


def inv_yeojohnson_lambda(x: float, y: float) -> float:
    """The lambda at which the Yeo-Johnson transform of x equals y."""
    x = float(x)
    y = float(y)
    if math.isnan(x) or math.isnan(y):
        raise DomainError("inputs must not be NaN")
    if x == 0.0:
        raise DomainError("x = 0 maps to 0 for every lambda")
    if x > 0:
        if not y > 0:
            raise DomainError("y must be positive for x > 0")
        return _solve_power_lambda(math.log1p(x), y)
    if not y < 0:
        raise DomainError("y must be negative for x < 0")
    # reflection: the x < 0 branch at lambda equals the x > 0 branch of
    # (-x, -y) at 2 - lambda
    return 2.0 - _solve_power_lambda(math.log1p(-x), -y)
