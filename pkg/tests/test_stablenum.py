"""Signed log-domain arithmetic against plain-arithmetic oracles."""

import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from powerfit import (
    DomainError,
    SignedLog,
    TransformOverflowError,
    log_mean,
    log_variance,
    lse,
    signed_add,
    signed_mul,
)
from powerfit.stablenum import ZERO

LN2 = math.log(2.0)

magnitudes = st.floats(min_value=1e-6, max_value=1e6)
signs = st.sampled_from([-1.0, 1.0])


def sl(x):
    return SignedLog.from_float(x)


def test_lse_of_two_ones_is_ln_two():
    assert lse([0.0, 0.0]) == pytest.approx(LN2, rel=1e-15)


def test_lse_ignores_minus_infinity_terms():
    assert lse([-math.inf, 0.0]) == 0.0


def test_lse_shift_keeps_huge_terms_finite():
    assert lse([1000.0, 1000.0]) == pytest.approx(1000.0 + LN2, rel=1e-15)


def test_lse_all_minus_infinity_is_minus_infinity():
    assert lse([-math.inf, -math.inf]) == -math.inf


def test_lse_rejects_empty_input():
    with pytest.raises(DomainError):
        lse([])


@given(st.lists(st.floats(min_value=-100.0, max_value=100.0), min_size=1, max_size=12))
def test_lse_permutation_invariant_and_dominates_max(terms):
    base = lse(terms)
    assert lse(sorted(terms)) == pytest.approx(base, rel=1e-12)
    assert lse(sorted(terms, reverse=True)) == pytest.approx(base, rel=1e-12)
    assert base >= max(terms)


def test_signed_add_exact_cancellation():
    assert signed_add(SignedLog(1, math.log(3.0)), SignedLog(-1, math.log(3.0))) == ZERO


def test_signed_add_doubles_huge_magnitudes():
    got = signed_add(SignedLog(1, 700.0), SignedLog(1, 700.0))
    assert got.sign == 1
    assert got.logmag == pytest.approx(700.0 + LN2, rel=1e-15)


def test_signed_add_opposite_signs():
    got = signed_add(sl(5.0), sl(-2.0))
    assert got.sign == 1
    assert got.logmag == pytest.approx(math.log(3.0), rel=1e-12)


def test_signed_mul_sign_product():
    got = signed_mul(sl(2.0), sl(-3.0))
    assert got.sign == -1
    assert got.logmag == pytest.approx(math.log(6.0), rel=1e-15)


def test_signed_mul_zero_annihilates():
    assert signed_mul(ZERO, SignedLog(1, 1e6)) == ZERO


def test_signed_mul_adds_logmags():
    assert signed_mul(SignedLog(-1, 400.0), SignedLog(-1, 500.0)) == SignedLog(1, 900.0)


def test_log_mean_small_values():
    got = log_mean([sl(1.0), sl(3.0)])
    assert got.sign == 1
    assert got.logmag == pytest.approx(LN2, rel=1e-15)


def test_log_mean_huge_values():
    got = log_mean([SignedLog(1, 700.0), SignedLog(1, 700.0 + LN2)])
    assert got.sign == 1
    assert got.logmag == pytest.approx(700.0 + math.log(1.5), rel=1e-15)


def test_log_mean_symmetric_cancellation():
    assert log_mean([sl(-2.0), sl(2.0)]) == ZERO


def test_log_mean_rejects_empty_input():
    with pytest.raises(DomainError):
        log_mean([])


def test_log_variance_small_values():
    assert log_variance([sl(1.0), sl(3.0)]) == pytest.approx(0.0, abs=1e-12)


def test_log_variance_huge_values():
    vals = [SignedLog(1, 700.0), SignedLog(1, 700.0 + LN2)]
    assert log_variance(vals) == pytest.approx(1400.0 + math.log(0.25), rel=1e-12)


def test_log_variance_constant_input_is_minus_infinity():
    assert log_variance([sl(5.0)] * 3) == -math.inf


def test_log_variance_needs_two_values():
    with pytest.raises(DomainError):
        log_variance([sl(1.0)])


def test_to_float_overflow_carries_magnitude():
    with pytest.raises(TransformOverflowError) as exc:
        SignedLog(1, 800.0).to_float()
    assert exc.value.log_magnitude == 800.0
    assert exc.value.log10_magnitude == pytest.approx(800.0 / math.log(10.0))
    assert exc.value.sign == 1


def test_invalid_sign_rejected():
    with pytest.raises(DomainError):
        SignedLog(2, 0.0)


def test_sign_zero_pairs_with_minus_infinity():
    with pytest.raises(DomainError):
        SignedLog(0, 1.0)
    with pytest.raises(DomainError):
        SignedLog(1, -math.inf)


def test_nan_rejected():
    with pytest.raises(DomainError):
        SignedLog(1, math.nan)
    with pytest.raises(DomainError):
        SignedLog.from_float(math.nan)


@given(magnitudes, signs)
def test_roundtrip_matches_to_log_precision(m, s):
    x = s * m
    assert SignedLog.from_float(x).to_float() == pytest.approx(x, rel=1e-14)


def test_roundtrip_of_zero_is_exact():
    assert SignedLog.from_float(0.0) == ZERO
    assert ZERO.to_float() == 0.0


@given(magnitudes, signs, magnitudes, signs)
def test_signed_add_matches_plain_arithmetic(ma, sa, mb, sb):
    a, b = sa * ma, sb * mb
    total = a + b
    # keep clear of near-total cancellation, where no log-domain scheme
    # can promise relative accuracy
    assume(abs(total) > 1e-9 * (abs(a) + abs(b)))
    got = signed_add(sl(a), sl(b))
    assert got.sign != 0 and math.isfinite(got.logmag)
    assert got.to_float() == pytest.approx(total, rel=1e-12)


@given(magnitudes, signs, magnitudes, signs)
def test_signed_mul_matches_plain_arithmetic(ma, sa, mb, sb):
    a, b = sa * ma, sb * mb
    got = signed_mul(sl(a), sl(b))
    assert math.isfinite(got.logmag)
    assert got.to_float() == pytest.approx(a * b, rel=1e-12)


@given(st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=2, max_size=16))
def test_log_variance_matches_two_pass(values):
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / n
    # residuals are formed in the log domain, so data clustered tightly
    # around its mean loses relative accuracy; stay in the spread regime
    assume(var >= 1e-6 * (1.0 + mean * mean))
    got = log_variance([sl(v) for v in values])
    assert got == pytest.approx(math.log(var), rel=1e-10, abs=1e-9)
