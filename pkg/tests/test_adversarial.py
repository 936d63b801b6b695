"""Adversarial generation and log-domain overflow prediction."""

import math

import pytest

from powerfit import (
    AdversarialCase,
    ConfigurationError,
    Dataset,
    DomainError,
    FitOptions,
    OverflowSign,
    PrecisionProfile,
    TransformKind,
    detect_overflow,
    fit_lambda,
    gen_adversarial,
    nll_boxcox_stable,
    nll_yeojohnson_stable,
)
from powerfit.adversarial import DOUBLE, OCTUPLE, QUADRUPLE, build_case_data

BC = TransformKind.BOX_COX
YJ = TransformKind.YEO_JOHNSON
NEG = OverflowSign.NEGATIVE
POS = OverflowSign.POSITIVE

ALL_CELLS = [
    (kind, sign, profile)
    for kind in (BC, YJ)
    for sign in (NEG, POS)
    for profile in (DOUBLE, QUADRUPLE, OCTUPLE)
]


def test_profiles_pin_format_limits():
    # 1.80e308 itself is above the double max, so build its log piecewise
    assert DOUBLE.max_value_log == pytest.approx(
        math.log(1.80) + 308 * math.log(10.0), rel=1e-12
    )
    assert DOUBLE.max_value_log == pytest.approx(709.78, abs=0.01)
    assert DOUBLE.max_value_log10 == pytest.approx(308.2553, abs=1e-3)
    assert QUADRUPLE.max_value_log10 == pytest.approx(4932.0755, abs=1e-3)
    assert OCTUPLE.max_value_log10 == pytest.approx(78913.2068, abs=1e-3)


def test_profile_parse():
    assert PrecisionProfile.parse("double") is DOUBLE
    assert PrecisionProfile.parse("quadruple") is QUADRUPLE
    assert PrecisionProfile.parse("octuple") is OCTUPLE
    with pytest.raises(ConfigurationError):
        PrecisionProfile.parse("half")


def test_overflow_sign_parse():
    assert OverflowSign.parse("negative") is NEG
    assert OverflowSign.parse("positive") is POS
    with pytest.raises(ConfigurationError):
        OverflowSign.parse("both")


def test_reference_case_boxcox_negative_double():
    case = gen_adversarial(BC, NEG, DOUBLE)
    assert case.data == (0.1, 0.1, 0.1, 0.101)
    assert case.expected_lambda == pytest.approx(-361.15, rel=1e-3)
    # extreme value -3.87e+358 in magnitude log10
    assert case.expected_extreme_log10 == pytest.approx(358.0 + math.log10(3.87), abs=0.01)


def test_reference_case_yeojohnson_positive_double():
    case = gen_adversarial(YJ, POS, DOUBLE)
    assert case.data == (10.0, 10.0, 10.0, 9.9)
    assert case.expected_lambda == pytest.approx(393.49, rel=1e-3)
    assert case.expected_extreme_log10 == pytest.approx(407.0 + math.log10(1.51), abs=0.01)


def test_reference_case_boxcox_positive_quadruple():
    case = gen_adversarial(BC, POS, QUADRUPLE)
    assert case.data == (10.0, 10.0, 10.0, 9.999)
    assert case.expected_lambda == pytest.approx(35933.3, rel=1e-3)


def test_custom_case_uses_fitter_as_oracle():
    case = gen_adversarial(BC, POS, DOUBLE, base=10.0, duplicates=5, perturbation=0.2)
    assert case.data == (10.0, 10.0, 10.0, 10.0, 10.0, 8.0)
    refit = fit_lambda(Dataset(case.data), BC, FitOptions(lambda_interval=(-1e6, 1e6)))
    assert case.expected_lambda == refit.lambda_star
    assert case.expected_lambda == pytest.approx(26.45, abs=0.1)


def test_every_reference_cell_refits_and_overflows_its_own_profile():
    for kind, sign, profile in ALL_CELLS:
        case = gen_adversarial(kind, sign, profile)
        refit = fit_lambda(
            Dataset(case.data), kind, FitOptions(lambda_interval=(-1e6, 1e6))
        )
        assert refit.lambda_star == pytest.approx(case.expected_lambda, rel=1e-3)
        nll = (nll_boxcox_stable if kind is BC else nll_yeojohnson_stable)(
            Dataset(case.data), case.expected_lambda
        )
        assert nll.finite
        report = detect_overflow(Dataset(case.data), kind, case.expected_lambda, profile)
        assert report.any_flagged
        # stored lambda and extreme both carry the reference print precision,
        # so their mutual consistency is a small relative wobble in log10
        assert max(report.element_log10) == pytest.approx(
            case.expected_extreme_log10, rel=2e-5
        )


def test_reference_lambda_signs_follow_overflow_sign():
    for kind, sign, profile in ALL_CELLS:
        case = gen_adversarial(kind, sign, profile)
        if sign is NEG:
            assert case.expected_lambda < 0
        else:
            assert case.expected_lambda > 0


def test_build_case_data_nudges_toward_the_fixed_point():
    assert build_case_data(BC, NEG, 0.1, 3, 0.01) == (0.1, 0.1, 0.1, 0.101)
    assert build_case_data(BC, POS, 10.0, 3, 0.01) == (10.0, 10.0, 10.0, 9.9)
    assert build_case_data(YJ, NEG, -10.0, 3, 0.01) == (-10.0, -10.0, -10.0, -9.9)
    assert build_case_data(YJ, POS, 10.0, 2, 0.1) == (10.0, 10.0, 9.0)


def test_build_case_data_base_rules():
    with pytest.raises(DomainError):
        build_case_data(BC, NEG, 2.0, 3, 0.01)
    with pytest.raises(DomainError):
        build_case_data(BC, POS, 0.5, 3, 0.01)
    with pytest.raises(DomainError):
        build_case_data(YJ, NEG, 10.0, 3, 0.01)
    with pytest.raises(DomainError):
        build_case_data(YJ, POS, -10.0, 3, 0.01)


def test_build_case_data_knob_validation():
    with pytest.raises(ConfigurationError):
        build_case_data(BC, POS, 10.0, 0, 0.01)
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(ConfigurationError):
            build_case_data(BC, POS, 10.0, 3, bad)


def test_case_shape_validation():
    with pytest.raises(ConfigurationError):
        AdversarialCase(BC, POS, (10.0,), 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        AdversarialCase(BC, POS, (10.0, 10.0), 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        AdversarialCase(BC, POS, (10.0, 9.9, 9.8), 1.0, 1.0)


def test_detect_flags_double_but_not_quadruple():
    data = Dataset((10.0, 10.0, 10.0, 9.9))
    hot = detect_overflow(data, BC, 357.55, DOUBLE)
    assert hot.any_flagged
    assert max(hot.element_log10) == pytest.approx(355.0, abs=0.1)
    assert hot.threshold_log10 == pytest.approx(308.2553, abs=1e-3)
    cold = detect_overflow(data, BC, 357.55, QUADRUPLE)
    assert not cold.any_flagged
    assert cold.element_log10 == hot.element_log10


def test_detect_fixed_point_never_flags():
    report = detect_overflow(Dataset((1.0,)), BC, 357.55, DOUBLE)
    assert report.element_log10 == (-math.inf,)
    assert not report.any_flagged


def test_detect_stays_in_log_domain_for_any_lambda():
    report = detect_overflow(Dataset((10.0, 0.5)), BC, 1e6, DOUBLE)
    assert all(math.isfinite(m) for m in report.element_log10)
    assert report.flagged == (True, False)
