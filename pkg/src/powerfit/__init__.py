"""Numerically stable Box-Cox and Yeo-Johnson power-transform fitting.

The package keeps every magnitude-sensitive computation in the log domain:
transforms and likelihoods stay finite for any lambda a double can hold,
the fitted optimum can be bounded through the transform's inverse, and the
same statistics drive a simulated federated protocol. See the submodules
for the full API; the names re-exported here are the everyday surface.
"""

from .adversarial import (
    AdversarialCase,
    OverflowReport,
    OverflowSign,
    PrecisionProfile,
    detect_overflow,
    gen_adversarial,
)
from .aggregate import Aggregate, aggregate_queue
from .errors import (
    ConfigurationError,
    DegenerateDataError,
    DomainError,
    PowerTransformError,
    TransformOverflowError,
)
from .federated import (
    ClientMessage,
    ClientShard,
    FedFitResult,
    FedProtocol,
    fed_fit,
    setup_round,
)
from .likelihood import (
    Dataset,
    EngineMode,
    NllValue,
    nll_boxcox_baseline,
    nll_boxcox_derivative,
    nll_boxcox_stable,
    nll_curve,
    nll_yeojohnson_stable,
)
from .optimize import (
    FitOptions,
    FitResult,
    fit_lambda,
    lambda_bounds,
    minimize_scalar_bounded,
    transform_data,
)
from .stablenum import SignedLog, log_mean, log_variance, lse, signed_add, signed_mul
from .transforms import (
    TransformKind,
    boxcox,
    boxcox_deriv,
    inv_boxcox_lambda,
    inv_yeojohnson_lambda,
    lambert_w,
    yeojohnson,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialCase",
    "Aggregate",
    "ClientMessage",
    "ClientShard",
    "ConfigurationError",
    "Dataset",
    "DegenerateDataError",
    "DomainError",
    "EngineMode",
    "FedFitResult",
    "FedProtocol",
    "FitOptions",
    "FitResult",
    "NllValue",
    "OverflowReport",
    "OverflowSign",
    "PowerTransformError",
    "PrecisionProfile",
    "SignedLog",
    "TransformKind",
    "TransformOverflowError",
    "aggregate_queue",
    "boxcox",
    "boxcox_deriv",
    "detect_overflow",
    "fed_fit",
    "fit_lambda",
    "gen_adversarial",
    "inv_boxcox_lambda",
    "inv_yeojohnson_lambda",
    "lambda_bounds",
    "lambert_w",
    "log_mean",
    "log_variance",
    "lse",
    "minimize_scalar_bounded",
    "nll_boxcox_baseline",
    "nll_boxcox_derivative",
    "nll_boxcox_stable",
    "nll_curve",
    "nll_yeojohnson_stable",
    "setup_round",
    "signed_add",
    "signed_mul",
    "transform_data",
    "yeojohnson",
]
