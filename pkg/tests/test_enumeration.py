from collections import Counter
from fractions import Fraction

import pytest

from gridplans.budget import Budget, BudgetExceeded
from gridplans.enumeration import (
    CutHistogram,
    count_compact_plans,
    count_plans,
    cut_histogram,
    cut_threshold,
    enumerate_plans,
)
from gridplans.grid import GridGraph, Partition, cut_score, serialize_partition, validate_partition

from oracles import brute_force_plans, naive_cut


@pytest.fixture(scope="module")
def oracle():
    return {n: brute_force_plans(n) for n in range(1, 6)}


@pytest.mark.parametrize("n", range(1, 6))
def test_count_matches_brute_force(n, oracle):
    assert count_plans(n) == len(oracle[n])


@pytest.mark.parametrize("n, want", [(1, 1), (2, 2), (3, 10), (4, 117)])
def test_published_small_counts(n, want):
    assert count_plans(n) == want


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_is_exactly_the_oracle_set(n, oracle):
    seen = []
    res = enumerate_plans(n, seen.append)
    assert res.complete
    assert res.count == len(seen) == count_plans(n)
    keys = [p.key() for p in seen]
    assert len(set(keys)) == len(keys)
    assert set(keys) == {p.key() for p in oracle[n]}
    g = GridGraph(n)
    assert all(validate_partition(g, p).ok for p in seen)


def test_n2_visits_the_two_domino_plans():
    seen = []
    enumerate_plans(2, seen.append)
    assert [p.labels for p in seen] == [((0, 0), (1, 1)), ((0, 1), (0, 1))]


@pytest.mark.parametrize("n", [3, 4])
def test_enumeration_order_is_lexicographic(n):
    seen = []
    enumerate_plans(n, seen.append)
    flats = [p.flat() for p in seen]
    assert all(p == p.canonical() for p in seen)
    assert flats == sorted(flats)
    # and therefore also lexicographic in the serialized text
    texts = [serialize_partition(p) for p in seen]
    assert texts == sorted(texts)


def test_visitor_can_stop_early():
    seen = []
    res = enumerate_plans(4, lambda p: seen.append(p) or len(seen) < 5)
    assert not res.complete
    assert res.count == len(seen) == 5


@pytest.mark.parametrize("n", range(2, 6))
def test_histogram_matches_oracle(n, oracle):
    want = Counter(naive_cut(p.labels) for p in oracle[n])
    hist = cut_histogram(n)
    assert dict(hist) == dict(want)
    assert hist.total == count_plans(n)
    assert min(hist) >= n - 1
    assert max(hist) == n * (n - 1)


def test_histogram_examples():
    assert cut_histogram(2) == {2: 2}
    h4 = cut_histogram(4)
    assert max(h4) == 12
    assert h4.total == 117
    # an 11-cut plan exists at n = 4
    assert min(h4) <= 11 <= max(h4) and h4.get(11, 0) > 0


def test_histogram_csv_round_trip():
    h = cut_histogram(4)
    text = h.to_csv()
    assert text.splitlines()[0] == "cut,count"
    assert CutHistogram.from_csv(text) == h


@pytest.mark.parametrize("n, eps, want", [(4, 0.036, 0), (2, 0.5, 2)])
def test_compact_examples(n, eps, want):
    assert count_compact_plans(n, eps) == want


def test_compact_partial_sum():
    h = cut_histogram(4)
    assert count_compact_plans(4, 1.0, hist=h) == sum(v for c, v in h.items() if c <= 16) == 117
    assert count_compact_plans(4, 0.5, hist=h) == sum(v for c, v in h.items() if c <= 8)


def test_threshold_uses_decimal_eps():
    # 0.29 * 100 is 28.999999999999996 in binary floating point.
    assert cut_threshold(10, 0.29) == 29
    assert cut_threshold(10, Fraction(29, 100)) == 29
    assert cut_threshold(4, 0.036) == 0


def test_compact_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        count_compact_plans(3, 0)


@pytest.mark.parametrize("n", [4, 5])
def test_parallel_equals_serial(n):
    assert count_plans(n, threads=3) == count_plans(n)
    assert cut_histogram(n, threads=2) == cut_histogram(n)


def test_budget_aborts_cleanly():
    with pytest.raises(BudgetExceeded):
        count_plans(6, budget=Budget(max_states=1000))
    with pytest.raises(BudgetExceeded):
        count_plans(7, budget=Budget(max_seconds=0.5))


def test_bad_n():
    with pytest.raises(ValueError):
        count_plans(0)


@pytest.mark.slow
def test_n6_histogram_support():
    h = cut_histogram(6)
    assert h.total == 451206
    assert min(h) >= 5 and max(h) == 30


def test_plans_are_label_free():
    # Counting treats plans as set partitions: relabeled copies are one plan.
    p = Partition.from_rows([[1, 0], [1, 0]])
    assert p.key() == Partition.from_rows([[0, 1], [0, 1]]).key()
    assert cut_score(p) == 2
