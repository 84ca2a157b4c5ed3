from collections import Counter

import pytest

from gridplans.enumeration import all_plans, count_plans, cut_threshold
from gridplans.grid import GridGraph, cut_score, validate_partition
from gridplans.sampler import (
    EXACT_UNIFORM_MAX_N,
    sample_batch,
    sample_uniform_batch,
    sample_uniform_exact,
    tree_cut_sample,
)

from oracles import tree_cut_distribution

scipy_stats = pytest.importorskip("scipy.stats")


def test_tree_cut_n2_matches_pair_oracle():
    law = tree_cut_distribution(2)
    stats = sample_batch(2, 2024, 10_000)
    assert stats.accepted == 10_000
    freq = Counter(p.key() for p in stats.plans)
    assert set(freq) == set(law)
    for key, p in law.items():
        assert abs(freq[key] / stats.accepted - p) <= 0.02


def test_tree_cut_n3_matches_pair_oracle():
    # 192 trees x C(8, 2) cuts; not uniform over the 10 plans.
    law = tree_cut_distribution(3)
    assert len(law) == 10
    assert len(set(round(p, 12) for p in law.values())) > 1
    stats = sample_batch(3, 99, 4000)
    freq = Counter(p.key() for p in stats.plans)
    keys = sorted(law)
    observed = [freq[k] for k in keys]
    expected = [law[k] * stats.accepted for k in keys]
    assert scipy_stats.chisquare(observed, expected).pvalue > 1e-3


@pytest.mark.parametrize("n", [2, 3])
def test_accepted_samples_validate(n):
    g = GridGraph(n)
    hits = 0
    for s in range(600):
        plan = tree_cut_sample(n, (5, s))
        if plan is not None:
            hits += 1
            rep = validate_partition(g, plan)
            assert rep.ok and rep.district_sizes == [n] * n
    assert hits > 0


def test_tree_cut_deterministic():
    outcomes = [tree_cut_sample(3, (1, s)) for s in range(300)]
    again = [tree_cut_sample(3, (1, s)) for s in range(300)]
    assert outcomes == again
    assert any(o is None for o in outcomes) and any(o is not None for o in outcomes)


def test_tree_cut_needs_two():
    with pytest.raises(ValueError):
        tree_cut_sample(1, 0)


def test_batch_n2():
    stats = sample_batch(2, 3, 100)
    assert stats.accepted == 100 == len(stats.cut_scores)
    assert stats.accepted <= stats.attempts
    assert set(stats.cut_scores) == {2}
    assert stats.complete


def test_batch_n4_scores_and_threshold():
    stats = sample_batch(4, 8, 10, threads=2)
    assert all(3 <= c <= 12 for c in stats.cut_scores)
    assert all(validate_partition(GridGraph(4), p).ok for p in stats.plans)
    # eps n^2 for eps = 0.036 is below the smallest possible cut
    assert all(c > cut_threshold(4, 0.036) for c in stats.cut_scores)
    assert stats.mean_cut > 0.036 * 16


def test_batch_independent_of_threads():
    a = sample_batch(3, 17, 30, threads=1, block=16)
    b = sample_batch(3, 17, 30, threads=3, block=16)
    assert (a.attempts, a.cut_scores, a.plans) == (b.attempts, b.cut_scores, b.plans)


def test_batch_attempt_cap():
    stats = sample_batch(4, 1, 1000, max_attempts=50)
    assert not stats.complete
    assert stats.attempts == 50
    assert stats.accepted < 1000


def test_batch_csv():
    stats = sample_batch(2, 3, 5)
    lines = stats.to_csv().splitlines()
    assert lines[0] == "attempts,accepted,mean_cut,min_cut,max_cut"
    assert lines[1].split(",")[1:] == ["5", "2.0", "2", "2"]


def test_batch_rejects_zero_target():
    with pytest.raises(ValueError):
        sample_batch(2, 0, 0)


def test_exact_uniform_n3_chi_squared():
    draws = sample_uniform_batch(3, 31, 50_000)
    counts = Counter(p.key() for p in draws)
    assert len(counts) == count_plans(3) == 10
    assert all(abs(c / 50_000 - 0.1) <= 0.01 for c in counts.values())
    assert scipy_stats.chisquare(list(counts.values())).pvalue > 1e-3


def test_exact_uniform_is_indexed_by_enumeration_order():
    plans = all_plans(4)
    for s in range(20):
        p = sample_uniform_exact(4, s)
        assert p in plans
        assert validate_partition(GridGraph(4), p).ok


def test_exact_uniform_n2_halves():
    draws = sample_uniform_batch(2, 5, 4000)
    share = sum(p.labels == ((0, 0), (1, 1)) for p in draws) / 4000
    assert abs(share - 0.5) < 0.03


def test_exact_uniform_limit():
    with pytest.raises(ValueError):
        sample_uniform_exact(EXACT_UNIFORM_MAX_N + 1, 0)


def test_cut_scores_consistent():
    stats = sample_batch(3, 4, 20)
    assert stats.cut_scores == [cut_score(p) for p in stats.plans]
