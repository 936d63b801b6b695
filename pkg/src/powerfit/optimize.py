"""Bounded lambda fitting for the stable NLL engines.

The feasible interval is the user interval intersected, when a transformed-
value bound y_bound is set, with the exact lambda range keeping every
|transformed value| <= y_bound; those endpoints come from the Lambert-W
inverse of the transform at the data extrema, not from trial evaluation.
Minimization is Brent's bounded method (golden section with parabolic
acceleration); at termination the surviving bracket is no wider than
x_tolerance * (1 + |lambda|). The evaluation sequence is deterministic, so
repeated runs over the same data reproduce the same iterates; the federated
driver relies on that for reproducible round traces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConfigurationError, DegenerateDataError, DomainError
from .likelihood import Dataset, nll_boxcox_stable, nll_yeojohnson_stable
from .transforms import (
    TransformKind,
    boxcox,
    inv_boxcox_lambda,
    inv_yeojohnson_lambda,
    yeojohnson,
)

__all__ = [
    "DEFAULT_LAMBDA_INTERVAL",
    "DEFAULT_X_TOLERANCE",
    "DEFAULT_MAX_EVALS",
    "DEFAULT_Y_BOUND",
    "FitOptions",
    "FitResult",
    "lambda_bounds",
    "minimize_scalar_bounded",
    "fit_lambda",
    "transform_data",
]

DEFAULT_LAMBDA_INTERVAL = (-1e5, 1e5)
DEFAULT_X_TOLERANCE = 1e-8
DEFAULT_MAX_EVALS = 500
# default transformed-value cap used where bounding is mandatory
DEFAULT_Y_BOUND = 1e100

_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class FitOptions:
    y_bound: float | None = None
    lambda_interval: tuple[float, float] = DEFAULT_LAMBDA_INTERVAL
    x_tolerance: float = DEFAULT_X_TOLERANCE
    max_evals: int = DEFAULT_MAX_EVALS

    def __post_init__(self):
        lo, hi = self.lambda_interval
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ConfigurationError("lambda_interval must be finite with lo < hi")
        if not (math.isfinite(self.x_tolerance) and self.x_tolerance > 0):
            raise ConfigurationError("x_tolerance must be positive")
        if self.max_evals < 3:
            raise ConfigurationError("max_evals must be at least 3")
        if self.y_bound is not None and not (math.isfinite(self.y_bound) and self.y_bound > 0):
            raise ConfigurationError("y_bound must be positive when set")


@dataclass(frozen=True)
class FitResult:
    lambda_star: float
    nll_at_star: float
    evaluations: int
    bound_active: bool
    interval_used: tuple[float, float]


def _bounds_with_flags(
    x_min: float,
    x_max: float,
    kind: TransformKind,
    y_bound: float,
    interval: tuple[float, float],
) -> tuple[float, float, bool, bool]:
    """Intersect the interval with the |transform| <= y_bound range.

    The boolean flags say whether the returned endpoint is bound-derived
    (as opposed to the plain interval edge).
    """
    if not (math.isfinite(y_bound) and y_bound > 0):
        raise ConfigurationError("y_bound must be positive")
    lo, hi = interval
    lo_derived = hi_derived = False
    if kind is TransformKind.BOX_COX:
        if x_min <= 0:
            raise DomainError("Box-Cox requires strictly positive data")
        if x_max > 1.0:
            cand = inv_boxcox_lambda(x_max, y_bound)
            if cand < hi:
                hi, hi_derived = cand, True
        if x_min < 1.0:
            cand = inv_boxcox_lambda(x_min, -y_bound)
            if cand > lo:
                lo, lo_derived = cand, True
    else:
        if x_max > 0.0:
            cand = inv_yeojohnson_lambda(x_max, y_bound)
            if cand < hi:
                hi, hi_derived = cand, True
        if x_min < 0.0:
            cand = inv_yeojohnson_lambda(x_min, -y_bound)
            if cand > lo:
                lo, lo_derived = cand, True
    return lo, hi, lo_derived, hi_derived


def lambda_bounds(
    data: Dataset,
    kind: TransformKind,
    y_bound: float,
    interval: tuple[float, float] = DEFAULT_LAMBDA_INTERVAL,
) -> tuple[float, float]:
    """The lambda range on which every |transformed value| stays <= y_bound."""
    if data.n == 0:
        raise DomainError("empty dataset has no extrema")
    lo, hi, _, _ = _bounds_with_flags(data.vmin, data.vmax, kind, y_bound, interval)
    return lo, hi


def minimize_scalar_bounded(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    x_tolerance: float = DEFAULT_X_TOLERANCE,
    max_evals: int = DEFAULT_MAX_EVALS,
) -> tuple[float, float, int]:
    """Brent's bounded minimizer; returns (x_best, f_best, evaluations)."""
    if not lo < hi:
        raise ConfigurationError("need lo < hi")
    a, b = lo, hi
    x = w = v = a + _GOLDEN * (b - a)
    fx = fw = fv = func(x)
    evals = 1
    d = e = 0.0
    while evals < max_evals:
        m = 0.5 * (a + b)
        tol1 = 0.25 * x_tolerance * (1.0 + abs(x))
        tol2 = 2.0 * tol1
        # both endpoints within tol2 of x, hence width <= x_tolerance*(1+|x|);
        # a literal width test stalls once steps hit the tol1 floor
        if abs(x - m) <= tol2 - 0.5 * (b - a):
            break
        if abs(e) > tol1:
            # parabola through (v, fv), (w, fw), (x, fx)
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            etemp = e
            e = d
            if abs(p) >= abs(0.5 * q * etemp) or p <= q * (a - x) or p >= q * (b - x):
                e = (b - x) if x < m else (a - x)
                d = _GOLDEN * e
            else:
                d = p / q
                u = x + d
                if (u - a) < tol2 or (b - u) < tol2:
                    d = tol1 if x < m else -tol1
        else:
            e = (b - x) if x < m else (a - x)
            d = _GOLDEN * e
        u = x + (d if abs(d) >= tol1 else (tol1 if d > 0 else -tol1))
        fu = func(u)
        evals += 1
        if fu <= fx:
            if u < x:
                b = x
            else:
                a = x
            v, w, x = w, x, u
            fv, fw, fx = fw, fx, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, w = w, u
                fv, fw = fw, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu
    return x, fx, evals


def _objective(data: Dataset, kind: TransformKind) -> Callable[[float], float]:
    if kind is TransformKind.BOX_COX:
        return lambda lam: nll_boxcox_stable(data, lam).value
    return lambda lam: nll_yeojohnson_stable(data, lam).value


def fit_lambda(data: Dataset, kind: TransformKind, options: FitOptions | None = None) -> FitResult:
    """Minimize the stable NLL over the feasible lambda interval."""
    opts = options if options is not None else FitOptions()
    if data.n < 2:
        raise DomainError("fitting needs at least two values")
    if kind is TransformKind.BOX_COX and data.vmin <= 0:
        raise DomainError("Box-Cox requires strictly positive data")
    if data.vmin == data.vmax:
        raise DegenerateDataError("constant data has zero variance")
    lo, hi = opts.lambda_interval
    lo_derived = hi_derived = False
    if opts.y_bound is not None:
        lo, hi, lo_derived, hi_derived = _bounds_with_flags(
            data.vmin, data.vmax, kind, opts.y_bound, opts.lambda_interval
        )
    if not lo < hi:
        raise ConfigurationError("empty feasible lambda interval")
    objective = _objective(data, kind)
    x, fx, evals = minimize_scalar_bounded(objective, lo, hi, opts.x_tolerance, opts.max_evals)
    bound_active = (
        lo_derived
        and abs(x - lo) <= opts.x_tolerance * (1.0 + abs(lo))
        or hi_derived
        and abs(x - hi) <= opts.x_tolerance * (1.0 + abs(hi))
    )
    return FitResult(x, fx, evals, bound_active, (lo, hi))


def transform_data(data: Dataset, kind: TransformKind, lmbda: float) -> list[float]:
    """Apply the transform elementwise; overflow raises the typed error."""
    fn = boxcox if kind is TransformKind.BOX_COX else yeojohnson
    return [fn(lmbda, v) for v in data.values]
