"""Pairwise variance aggregation against the concatenation oracle."""

import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from powerfit import Aggregate, DomainError, aggregate_queue
from powerfit.aggregate import EMPTY, from_values, merge, variance_naive_onepass
from conftest import lognormal_values, normal_values, split_values

benign_lists = st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=2, max_size=20)


def test_from_values_empty_is_identity():
    assert from_values([]) == EMPTY == Aggregate(0, 0.0, 0.0)


def test_from_values_two_points():
    assert from_values([1.0, 3.0]) == Aggregate(2, 2.0, 2.0)


def test_from_values_constant():
    assert from_values([5.0, 5.0, 5.0]) == Aggregate(3, 5.0, 0.0)


def test_merge_two_singletons():
    got = merge(Aggregate(1, 1.0, 0.0), Aggregate(1, 4.0, 0.0))
    assert got.n == 2
    assert got.mean == pytest.approx(2.5)
    assert got.ssd == pytest.approx((1.0 - 4.0) ** 2 / 2.0)


def test_merge_with_empty_is_identity():
    a = from_values([2.0, 7.0, 11.0])
    assert merge(a, EMPTY) == a
    assert merge(EMPTY, a) == a


def test_aggregate_queue_single_part_is_itself():
    a = from_values([1.0, 2.0])
    assert aggregate_queue([a]) == a


def test_aggregate_queue_rejects_empty():
    with pytest.raises(DomainError):
        aggregate_queue([])


def test_aggregate_queue_four_singletons_matches_two_pass():
    values = [3.0, -1.5, 8.25, 0.5]
    got = aggregate_queue([from_values([v]) for v in values])
    whole = from_values(values)
    assert got.n == whole.n
    assert got.mean == pytest.approx(whole.mean, rel=1e-12)
    assert got.ssd == pytest.approx(whole.ssd, rel=1e-12)


def test_single_point_parts_of_tight_gaussian():
    # mean 1e4, standard deviation 1e-3: the regime where the one-pass
    # formula loses everything to cancellation
    values = normal_values(5, 100, 1e4, 1e-3)
    whole = from_values(values)
    queued = aggregate_queue([from_values([v]) for v in values])
    assert queued.ssd / queued.n == pytest.approx(whole.ssd / whole.n, rel=1e-6)
    naive = variance_naive_onepass(values)
    exact = whole.ssd / whole.n
    assert naive < 0.0 or abs(naive - exact) > 1e-2 * exact


def test_naive_variance_two_points():
    assert variance_naive_onepass([1.0, 3.0]) == pytest.approx(1.0, rel=1e-12)


def test_naive_variance_cancels_on_huge_constants():
    got = variance_naive_onepass([1e8, 1e8])
    assert got <= 0.0
    assert abs(got) < 1.0


def test_naive_variance_rejects_empty():
    with pytest.raises(DomainError):
        variance_naive_onepass([])


def test_negative_count_rejected():
    with pytest.raises(DomainError):
        Aggregate(-1, 0.0, 0.0)
    with pytest.raises(DomainError):
        Aggregate(0, 1.0, 0.0)


def test_queue_matches_two_pass_across_partition_sizes():
    values = lognormal_values(21, 200)
    whole = from_values(values)
    for k in (1, 2, 7, 100):
        parts = [from_values(p) for p in split_values(values, k, seed=k)]
        got = aggregate_queue(parts)
        assert got.n == whole.n
        assert got.mean == pytest.approx(whole.mean, rel=1e-10)
        assert got.ssd == pytest.approx(whole.ssd, rel=1e-10)


@given(benign_lists, st.integers(min_value=1, max_value=19))
def test_merge_matches_concatenation(values, cut):
    assume(cut < len(values))
    left, right = values[:cut], values[cut:]
    whole = from_values(values)
    assume(whole.ssd > 1e-6)
    got = merge(from_values(left), from_values(right))
    assert got.n == whole.n
    assert got.mean == pytest.approx(whole.mean, rel=1e-12, abs=1e-12)
    assert got.ssd == pytest.approx(whole.ssd, rel=1e-12)


@given(benign_lists, benign_lists, benign_lists)
def test_merge_associative_up_to_rounding(xs, ys, zs):
    a, b, c = from_values(xs), from_values(ys), from_values(zs)
    left = merge(merge(a, b), c)
    right = merge(a, merge(b, c))
    assume(left.ssd > 1e-9)
    assert left.n == right.n
    assert right.ssd == pytest.approx(left.ssd, rel=1e-10)


@given(st.lists(benign_lists, min_size=1, max_size=8))
def test_ssd_never_negative_after_any_merge_sequence(parts):
    got = aggregate_queue([from_values(p) for p in parts])
    assert got.ssd >= 0.0
