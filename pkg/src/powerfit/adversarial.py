"""Adversarial dataset generation and overflow prediction.

Datasets of the duplicate-plus-perturbation shape (several copies of a base
value plus one value nudged slightly toward the transform's fixed point)
drive the fitted lambda to huge magnitudes, and the transformed values at
that lambda overflow a chosen float format. The reference grid of such
datasets ships as a JSON fixture with the lambda and extreme-magnitude each
case is expected to produce; custom cases compute both on the fly.

Overflow detection never materializes an extreme value: it compares log
magnitudes against the format's limit, so it cannot itself overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

from .errors import ConfigurationError, DomainError
from .likelihood import Dataset
from .optimize import FitOptions, fit_lambda
from .transforms import TransformKind, boxcox_value_log, yeojohnson_value_log

__all__ = [
    "PrecisionProfile",
    "DOUBLE",
    "QUADRUPLE",
    "OCTUPLE",
    "OverflowSign",
    "AdversarialCase",
    "OverflowReport",
    "build_case_data",
    "gen_adversarial",
    "detect_overflow",
]

_LN10 = math.log(10.0)

# fitted lambda for the reference cases can reach the mid-1e5 range
_CUSTOM_FIT_INTERVAL = (-1e6, 1e6)


@dataclass(frozen=True)
class PrecisionProfile:
    """A float format identified by the log of its largest finite value."""

    name: str
    max_value_log: float

    @property
    def max_value_log10(self) -> float:
        return self.max_value_log / _LN10

    @staticmethod
    def parse(name: str) -> "PrecisionProfile":
        try:
            return _PROFILES[name]
        except KeyError:
            raise ConfigurationError(
                f"unknown precision profile {name!r}; expected one of {sorted(_PROFILES)}"
            ) from None


def _format_log(mantissa: float, exp10: int) -> float:
    return math.log(mantissa) + exp10 * _LN10


DOUBLE = PrecisionProfile("double", _format_log(1.80, 308))
QUADRUPLE = PrecisionProfile("quadruple", _format_log(1.19, 4932))
OCTUPLE = PrecisionProfile("octuple", _format_log(1.61, 78913))

_PROFILES = {p.name: p for p in (DOUBLE, QUADRUPLE, OCTUPLE)}

# perturbation size per profile: smaller nudges push lambda* further out
_PERTURBATION = {"double": 1e-2, "quadruple": 1e-4, "octuple": 1e-5}

_TABLE_BASE = {TransformKind.BOX_COX: {"negative": 0.1, "positive": 10.0},
               TransformKind.YEO_JOHNSON: {"negative": -10.0, "positive": 10.0}}


class OverflowSign(Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"

    @classmethod
    def parse(cls, name: str) -> "OverflowSign":
        try:
            return cls(name)
        except ValueError:
            raise ConfigurationError(
                f"unknown overflow sign {name!r}; expected 'negative' or 'positive'"
            ) from None


@dataclass(frozen=True)
class AdversarialCase:
    transform: TransformKind
    overflow_sign: OverflowSign
    data: tuple[float, ...]
    expected_lambda: float
    expected_extreme_log10: float

    def __post_init__(self):
        if len(self.data) < 2:
            raise ConfigurationError("adversarial data needs at least two values")
        if len(set(self.data)) != 2:
            raise ConfigurationError(
                "adversarial data must be duplicates of a base plus one perturbed value"
            )


@dataclass(frozen=True)
class OverflowReport:
    """Predicted per-element log10 magnitudes of the transformed values."""

    element_log10: tuple[float, ...]
    flagged: tuple[bool, ...]
    threshold_log10: float

    @property
    def any_flagged(self) -> bool:
        return any(self.flagged)


@lru_cache(maxsize=None)
def _fixture_cases() -> dict[tuple[str, str, str], dict]:
    text = resources.files("powerfit").joinpath("data/adversarial_cases.json").read_text()
    payload = json.loads(text)
    return {(row["transform"], row["overflow_sign"], row["profile"]): row
            for row in payload["cases"]}


def _check_base(transform: TransformKind, overflow_sign: OverflowSign, base: float) -> None:
    if transform is TransformKind.BOX_COX:
        if overflow_sign is OverflowSign.NEGATIVE and not 0.0 < base < 1.0:
            raise DomainError("Box-Cox negative overflow needs a base in (0, 1)")
        if overflow_sign is OverflowSign.POSITIVE and not base > 1.0:
            raise DomainError("Box-Cox positive overflow needs a base above 1")
    else:
        if overflow_sign is OverflowSign.NEGATIVE and not base < 0.0:
            raise DomainError("Yeo-Johnson negative overflow needs a negative base")
        if overflow_sign is OverflowSign.POSITIVE and not base > 0.0:
            raise DomainError("Yeo-Johnson positive overflow needs a positive base")


def build_case_data(
    transform: TransformKind,
    overflow_sign: OverflowSign,
    base: float,
    duplicates: int,
    perturbation: float,
) -> tuple[float, ...]:
    """Duplicates of base plus one value nudged toward the fixed point."""
    _check_base(transform, overflow_sign, base)
    if duplicates < 1:
        raise ConfigurationError("duplicates must be at least 1")
    if not 0.0 < perturbation < 1.0:
        raise ConfigurationError("perturbation must be in (0, 1)")
    if transform is TransformKind.BOX_COX and base < 1.0:
        perturbed = base * (1.0 + perturbation)
    else:
        perturbed = base * (1.0 - perturbation)
    return (base,) * duplicates + (perturbed,)


def _extreme_log10(data: tuple[float, ...], transform: TransformKind, lmbda: float) -> float:
    if transform is TransformKind.BOX_COX:
        logs = [boxcox_value_log(lmbda, v).logmag for v in data]
    else:
        logs = [yeojohnson_value_log(lmbda, v).logmag for v in data]
    return max(logs) / _LN10


def gen_adversarial(
    transform: TransformKind,
    overflow_sign: OverflowSign,
    profile: PrecisionProfile,
    base: float | None = None,
    duplicates: int | None = None,
    perturbation: float | None = None,
) -> AdversarialCase:
    """An overflow-inducing case for the given transform, sign, and format.

    With no custom knobs this returns the reference case for the cell,
    expected values straight from the fixture. Supplying any of base,
    duplicates, or perturbation switches to custom generation: the data
    follows the same shape and expected_lambda comes from the stable
    fitter over the interval (-1e6, 1e6).
    """
    custom = not (base is None and duplicates is None and perturbation is None)
    if not custom:
        row = _fixture_cases()[(transform.value, overflow_sign.value, profile.name)]
        return AdversarialCase(
            transform=transform,
            overflow_sign=overflow_sign,
            data=tuple(float(v) for v in row["data"]),
            expected_lambda=float(row["expected_lambda"]),
            expected_extreme_log10=float(row["expected_extreme_log10"]),
        )
    data = build_case_data(
        transform,
        overflow_sign,
        base if base is not None else _TABLE_BASE[transform][overflow_sign.value],
        duplicates if duplicates is not None else 3,
        perturbation if perturbation is not None else _PERTURBATION[profile.name],
    )
    fit = fit_lambda(
        Dataset(data), transform, FitOptions(lambda_interval=_CUSTOM_FIT_INTERVAL)
    )
    return AdversarialCase(
        transform=transform,
        overflow_sign=overflow_sign,
        data=data,
        expected_lambda=fit.lambda_star,
        expected_extreme_log10=_extreme_log10(data, transform, fit.lambda_star),
    )


def detect_overflow(
    data: Dataset,
    transform: TransformKind,
    lmbda: float,
    profile: PrecisionProfile,
) -> OverflowReport:
    """Flag elements whose transformed magnitude exceeds the format's max.

    Works entirely in the log domain, so the prediction is exact in
    magnitude ordering and cannot overflow regardless of lambda.
    """
    if transform is TransformKind.BOX_COX:
        logmags = [boxcox_value_log(lmbda, v).logmag for v in data.values]
    else:
        logmags = [yeojohnson_value_log(lmbda, v).logmag for v in data.values]
    return OverflowReport(
        element_log10=tuple(m / _LN10 for m in logmags),
        flagged=tuple(m > profile.max_value_log for m in logmags),
        threshold_log10=profile.max_value_log10,
    )
