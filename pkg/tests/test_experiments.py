from fractions import Fraction

import pytest

from teachlab import experiments
from teachlab.budget import InconclusiveSearchError
from teachlab.classical import td_min
from teachlab.concepts import ConceptClass, InstanceSet
from teachlab.rng import splitmix64
from teachlab.tournaments import all_tournaments, class1, class2, linear_tournament, random_tournament
from tests import random_class


def test_trial_seed_is_splitmix():
    assert experiments.trial_seed(77, 3) == splitmix64(77, 3)
    assert len({experiments.trial_seed(77, i) for i in range(100)}) == 100


def test_threshold_k():
    k_prime, k = experiments.threshold_k(2 ** 20)
    assert k_prime == pytest.approx(7.2154, abs=1e-3)
    assert k == 7
    assert experiments.threshold_k(16)[0] < 0
    with pytest.raises(ValueError):
        experiments.threshold_k(1)


def test_threshold_k_eventually_increasing():
    values = [experiments.threshold_k(2 ** e)[0] for e in range(10, 31)]
    assert values == sorted(values)


def test_claim_check_small_n_is_vacuous():
    row = experiments.claim_check(16)
    assert row.vacuous
    assert row.first is None
    assert row.second is None


def test_claim_check_large_n():
    row = experiments.claim_check(2 ** 30)
    assert not row.vacuous
    assert row.first and row.second
    assert row.sufficient
    assert row.corollary_sufficient and row.corollary_second


def test_claim_grid():
    grid = experiments.claim_grid(16)
    assert grid == [2, 3, 4, 5, 6, 7, 8, 10, 11, 13, 16]


def test_claim_scan():
    rows, n0 = experiments.claim_scan(2 ** 40)
    assert n0 is not None
    assert rows[-1].n == 2 ** 40
    for row in rows:
        if row.n >= n0:
            assert row.first and row.second
        if row.sufficient:
            assert row.second


def test_min_pattern_counts_characterizes_td_min():
    for seed in range(40):
        n = 3 + seed % 10
        k = random_class(seed, n, 4 + seed % 12)
        value = td_min(k)
        for s in range(0, n + 1):
            min_nonzero, min_all = experiments.min_pattern_counts(k, s)
            assert (min_nonzero >= 2) == (value > s)
            if min_all >= 2:
                assert value > s


def test_min_pattern_counts_wide_patterns():
    k = ConceptClass.from_masks(40, [0, (1 << 40) - 1])
    assert experiments.min_pattern_counts(k, 40) == (1, 0)
    assert experiments.min_pattern_counts(k, 39) == (1, 0)


def test_min_pattern_counts_every_pattern_present():
    k = ConceptClass.from_masks(2, [0, 1, 2, 3])
    assert experiments.min_pattern_counts(k, 2) == (1, 1)
    assert experiments.min_pattern_counts(k, 1) == (2, 2)


def test_min_pattern_counts_bad_size():
    with pytest.raises(ValueError):
        experiments.min_pattern_counts(random_class(1, 3, 4), 4)


def test_td_min_by_patterns_matches_search():
    for seed in range(30):
        n = 2 + seed % 7
        k = random_class(seed, n, 1 + seed % 14)
        assert experiments.td_min_by_patterns(k) == td_min(k)


def test_td_min_by_patterns_on_tournament_classes():
    for seed in range(5):
        k = class1(random_tournament(12, seed))
        assert experiments.td_min_by_patterns(k) == td_min(k)


def test_pattern_count():
    g = random_tournament(6, 8)
    assert experiments.pattern_count(g, InstanceSet.empty(6), []) == 6
    s = InstanceSet.from_members(6, [2, 5])
    total = sum(experiments.pattern_count(g, s, [a, b]) for a in (0, 1) for b in (0, 1))
    assert total == 6
    with pytest.raises(ValueError):
        experiments.pattern_count(g, s, [1])


def test_pattern_count_linear():
    g = linear_tournament(4)
    # class1 of the linear tournament is {1..4}, {2..4}, {3, 4}, {4}
    assert experiments.pattern_count(g, InstanceSet.from_members(4, [1]), [1]) == 1
    assert experiments.pattern_count(g, InstanceSet.from_members(4, [4]), [1]) == 4


def test_run_trials_records():
    records = experiments.run_trials(8, 4, seed=2024)
    assert [r.trial for r in records] == [0, 1, 2, 3]
    for r in records:
        assert r.nctd == 1
        assert r.rtd is not None
        assert r.td_min == td_min(class1(random_tournament(8, r.seed)))


def test_run_trials_two_players():
    for r in experiments.run_trials(2, 6, seed=5):
        assert r.td_min == 1
        assert r.nctd == 1


def test_run_trials_parallel_is_identical():
    assert experiments.run_trials(9, 4, seed=3, jobs=2) == experiments.run_trials(9, 4, seed=3)


def test_run_tdmin_experiment_reproducible():
    cfg = experiments.ExperimentConfig(n=10, trials=5, seed=11)
    records, summary = experiments.run_tdmin_experiment(cfg)
    again, summary_again = experiments.run_tdmin_experiment(cfg)
    assert records == again
    assert summary == summary_again
    assert summary.trials == 5
    assert summary.td_min_min <= summary.td_min_mean <= summary.td_min_max
    assert sum(int(part.split(':')[1]) for part in summary.distribution.split()) == 5


def test_run_tdmin_experiment_too_large_is_inconclusive():
    with pytest.raises(InconclusiveSearchError):
        experiments.run_tdmin_experiment(experiments.ExperimentConfig(n=65, trials=1, seed=0))


def test_experiment_config_validation():
    with pytest.raises(ValueError):
        experiments.ExperimentConfig(n=1, trials=1, seed=0)
    with pytest.raises(ValueError):
        experiments.ExperimentConfig(n=4, trials=0, seed=0)


def test_fraction_at_most():
    records = experiments.run_trials(6, 5, seed=1)
    assert experiments.fraction_at_most(records, 6) == 1
    assert experiments.fraction_at_most(records, 0) == 0


def test_td_min_mean_grows():
    means = [experiments.summarize(n, experiments.run_trials(n, 20, seed=9)).td_min_mean for n in (8, 32)]
    assert means[0] <= means[1]


@pytest.mark.slow
def test_td_min_mean_nondecreasing_at_scale():
    means = [
        experiments.summarize(n, experiments.run_trials(n, 200, seed=9, jobs=4)).td_min_mean for n in (16, 32, 64)
    ]
    assert means == sorted(means)


def test_tau_estimate_vacuous():
    estimate = experiments.tau_estimate(16, 100, seed=1)
    assert estimate.vacuous
    assert estimate.fraction == 0
    assert estimate.threshold < 1


def test_tau_estimate_with_override():
    estimate = experiments.tau_estimate(16, 20, seed=3, k=2)
    assert not estimate.vacuous
    assert estimate.fraction == Fraction(estimate.hits, 20)
    assert estimate.ci_low <= float(estimate.fraction) <= estimate.ci_high
    assert experiments.tau_estimate(16, 20, seed=3, k=2) == estimate


def test_run_tau_experiment_uses_k_override():
    cfg = experiments.ExperimentConfig(n=16, trials=20, seed=3, k_override=2)
    assert experiments.run_tau_experiment(cfg) == experiments.tau_estimate(16, 20, seed=3, k=2)
    assert experiments.run_tau_experiment(experiments.ExperimentConfig(n=16, trials=20, seed=3)).vacuous


def test_tau_estimate_too_large_is_inconclusive():
    with pytest.raises(InconclusiveSearchError):
        experiments.tau_estimate(65, 1, seed=0, k=1)


def test_verify_dim1_small():
    report = experiments.verify_dim1(2)
    # both tournaments on two players induce the full cube
    assert report.passing == report.tournament_classes == 1
    assert report.verified


def test_verify_dim1_three():
    report = experiments.verify_dim1(3)
    assert report.candidates == 28
    assert report.complement_closed == 4
    assert report.passing == report.tournament_classes == 4


def test_verify_dim1_three_without_prefilter():
    assert experiments.verify_dim1(3, prefilter=False).passing == 4


def test_verify_dim1_four():
    report = experiments.verify_dim1(4)
    expected = {frozenset(class2(g).masks) for g in all_tournaments(4)}
    assert report.passing == report.tournament_classes == len(expected)
    assert report.complement_closed == 70


def test_verify_dim1_limit():
    with pytest.raises(ValueError):
        experiments.verify_dim1(5)


def test_max_class_search_dimension_one():
    for n in range(1, 4):
        report, witnesses = experiments.max_class_search(n, 1)
        assert report.value == 2 * n
        assert report.greedy_lower <= report.value
        for w in witnesses:
            assert any(w.same_concepts(class2(g)) for g in all_tournaments(n))


def test_max_class_search_dimension_zero():
    report, witnesses = experiments.max_class_search(3, 0)
    assert report.value == 1


def test_max_class_search_four_two():
    report, witnesses = experiments.max_class_search(4, 2)
    assert report.start == 16
    assert report.greedy_lower <= report.value <= 21
    assert len(witnesses) == report.witnesses


def test_max_class_search_limits():
    with pytest.raises(ValueError):
        experiments.max_class_search(5, 1)
    with pytest.raises(ValueError):
        experiments.max_class_search(4, 3)


def test_canonical_form_is_permutation_invariant():
    tables = experiments._permutation_tables(3)
    assert experiments.canonical_form([1], tables) == experiments.canonical_form([4], tables)
    assert experiments.canonical_form([0, 3], tables) != experiments.canonical_form([0, 1], tables)
