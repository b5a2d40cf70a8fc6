"""Desk-scale experiments on random tournaments, the gap theorem's arithmetic and small exhaustive searches."""
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations, islice, permutations
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from teachlab import fields, models
from teachlab.bounds import ksz_bound
from teachlab.budget import Budget, BudgetExceededError, InconclusiveSearchError
from teachlab.classical import rtd, td_min
from teachlab.concepts import ConceptClass, InstanceSet, colex_combinations, full_mask
from teachlab.rng import splitmix64
from teachlab.teachers import find_teacher, nctd
from teachlab.tournaments import Tournament, all_tournaments, canonical_teacher, class1, class2, random_tournament

logger = logging.getLogger(__name__)

TDMIN_MAX_N = 64
TRIAL_RTD_MAX_N = 10
PATTERN_BATCH = 1 << 15
PATTERN_MAX_SIZE = 62
VERIFY_DIM1_MAX_N = 4
MAXCLASS_MAX_N = 4
MAXCLASS_MAX_D = 2
CLAIM_GRID_STEPS = 4
TDMIN_CSV_COLUMNS = ('trial', 'seed', 'n', 'td_min', 'nctd')


class VerificationError(Exception):
    """A property that must hold mathematically failed on a computed instance."""
    pass


class ExperimentConfig(models.Model):
    n = fields.IntegerField(required=True, min_value=2)
    trials = fields.IntegerField(required=True, min_value=1)
    seed = fields.IntegerField(required=True, min_value=0, max_value=(1 << 64) - 1)
    k_override = fields.IntegerField()
    budget_seconds = fields.FloatField(min_value=0)


class TrialRecord(models.Model):
    trial = fields.IntegerField(required=True, min_value=0)
    seed = fields.IntegerField(required=True)
    n = fields.IntegerField(required=True)
    td_min = fields.IntegerField(required=True, min_value=0)
    nctd = fields.IntegerField(required=True, min_value=0)
    rtd = fields.IntegerField(min_value=0)


class TdminSummary(models.Model):
    n = fields.IntegerField(required=True)
    trials = fields.IntegerField(required=True)
    td_min_min = fields.IntegerField(required=True)
    td_min_mean = fields.FloatField(required=True)
    td_min_max = fields.IntegerField(required=True)
    distribution = fields.CharField(required=True)


class TauEstimate(models.Model):
    n = fields.IntegerField(required=True)
    trials = fields.IntegerField(required=True)
    seed = fields.IntegerField(required=True)
    threshold = fields.IntegerField(required=True)
    vacuous = fields.BooleanField(required=True)
    hits = fields.IntegerField(required=True, min_value=0)
    fraction = fields.RationalField(required=True)
    ci_low = fields.FloatField()
    ci_high = fields.FloatField()


class ClaimRow(models.Model):
    n = fields.IntegerField(required=True, min_value=2)
    k_prime = fields.FloatField(required=True)
    k = fields.IntegerField(required=True)
    vacuous = fields.BooleanField(required=True)
    first = fields.BooleanField()
    second = fields.BooleanField()
    sufficient = fields.BooleanField()
    corollary_k = fields.IntegerField()
    corollary_first = fields.BooleanField()
    corollary_second = fields.BooleanField()
    corollary_sufficient = fields.BooleanField()


class Dim1Report(models.Model):
    n = fields.IntegerField(required=True, min_value=1)
    candidates = fields.IntegerField(required=True)
    complement_closed = fields.IntegerField(required=True)
    passing = fields.IntegerField(required=True)
    tournament_classes = fields.IntegerField(required=True)
    verified = fields.BooleanField(required=True)


class MaxClassReport(models.Model):
    n = fields.IntegerField(required=True, min_value=1)
    d = fields.IntegerField(required=True, min_value=0)
    value = fields.IntegerField(required=True)
    start = fields.IntegerField(required=True)
    greedy_lower = fields.IntegerField(required=True)
    witnesses = fields.IntegerField(required=True)


def trial_seed(master: int, index: int) -> int:
    return splitmix64(master, index)


def threshold_k(n: int, offset: int = 4) -> Tuple[float, int]:
    """k' = log(n) - 2 log log(2n) - offset (base 2) and k = floor(k')."""
    if n < 2:
        raise ValueError(f'Threshold needs n >= 2, got {n}.')
    k_prime = math.log2(n) - 2 * math.log2(math.log2(2 * n)) - offset
    return k_prime, math.floor(k_prime)


def _ln_union_bound(n: int, k: int) -> float:
    """ln(binomial(n, k) * 2^k), exact integers until the final logarithm."""
    return math.log(comb(n, k) << k)


def claim_check(n: int) -> ClaimRow:
    """Evaluate both inequalities of the gap claim and of its tau-corollary variant at n."""
    k_prime, k = threshold_k(n)
    row = dict(n=n, k_prime=k_prime, k=k, vacuous=k < 1)
    log2n = math.log2(2 * n)
    if k >= 1:
        row['first'] = n - k >= 1 << (k + 2)
        row['second'] = _ln_union_bound(n, k) < Fraction(n - k, 1 << (k + 3))
        row['sufficient'] = k * log2n - Fraction(n, 1 << (k + 4)) < 0
    _, corollary_k = threshold_k(n, offset=5)
    if corollary_k >= 1:
        row['corollary_k'] = corollary_k
        row['corollary_first'] = n >= 1 << (corollary_k + 3)
        row['corollary_second'] = (
            _ln_union_bound(n, corollary_k) - Fraction(n, 1 << (corollary_k + 4)) < -log2n * math.log(2 * n)
        )
        row['corollary_sufficient'] = corollary_k * log2n - Fraction(n, 1 << (corollary_k + 4)) < -log2n ** 2
    return ClaimRow(**row)


def claim_grid(max_n: int) -> List[int]:
    """n = round(2^(q/4)) for q >= 4, deduplicated, up to max_n."""
    grid = []
    q = CLAIM_GRID_STEPS
    while True:
        n = round(2 ** (q / CLAIM_GRID_STEPS))
        if n > max_n:
            return grid
        if not grid or grid[-1] != n:
            grid.append(n)
        q += 1


def claim_scan(max_n: int) -> Tuple[List[ClaimRow], Optional[int]]:
    """Claim rows on the grid, and the smallest grid n from which both inequalities hold at every larger grid point.

    Raises VerificationError if a sufficient condition holds where its inequality fails.
    """
    rows = [claim_check(n) for n in claim_grid(max_n)]
    for row in rows:
        if row.sufficient and not row.second:
            raise VerificationError(f'n={row.n}: sufficient condition holds but the second inequality fails.')
        if row.corollary_sufficient and not row.corollary_second:
            raise VerificationError(f'n={row.n}: corollary sufficient condition holds but its inequality fails.')
    n0 = None
    for row in reversed(rows):
        if row.vacuous or not (row.first and row.second):
            break
        n0 = row.n
    logger.info(f'Claim scan over {len(rows)} grid points, empirical n0={n0}')
    return rows, n0


def _label_matrix(k: ConceptClass) -> np.ndarray:
    """Concepts as rows of 0/1 labels, instance x in column x - 1."""
    return np.array([[m >> x & 1 for x in range(k.n)] for m in k.masks], dtype=np.int64).reshape(len(k), k.n)


def _pattern_codes(matrix: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """codes[c, j] = labels of concept c on instance set combos[j], read as a binary number."""
    codes = np.zeros((matrix.shape[0], combos.shape[0]), dtype=np.int64)
    for position in range(combos.shape[1]):
        codes |= matrix[:, combos[:, position]] << position
    return codes


def _combo_batches(n: int, s: int) -> Iterator[np.ndarray]:
    source = combinations(range(n), s)
    while True:
        batch = list(islice(source, PATTERN_BATCH))
        if not batch:
            return
        yield np.array(batch, dtype=np.int64).reshape(len(batch), s)


def min_pattern_counts(k: ConceptClass, s: int) -> Tuple[int, int]:
    """Over all s-subsets S and patterns b: the fewest concepts matching a pattern that occurs, and the fewest overall.

    td_min(k) > s exactly when the first value is >= 2; the second value >= 2 only implies it.
    """
    if not 0 <= s <= min(k.n, PATTERN_MAX_SIZE):
        raise ValueError(f'Pattern size {s} outside [0, {min(k.n, PATTERN_MAX_SIZE)}].')
    if s == 0:
        return len(k), len(k)
    matrix = _label_matrix(k)
    patterns = 1 << s
    min_nonzero = min_all = len(k)
    for combos in _combo_batches(k.n, s):
        # Codes are below 2^s; counted one column at a time.
        for column in _pattern_codes(matrix, combos).T:
            _, counts = np.unique(column, return_counts=True)
            fewest = int(counts.min())
            min_nonzero = min(min_nonzero, fewest)
            min_all = min(min_all, fewest if len(counts) == patterns else 0)
    return min_nonzero, min_all


def td_min_by_patterns(k: ConceptClass, budget: Budget = None) -> int:
    """TD_min by iterative deepening over s: stop at the first s where some concept's pattern on some s-set is unique."""
    budget = budget or Budget.get_budget()
    if len(k) == 1:
        return 0
    matrix = _label_matrix(k)
    for s in range(1, min(k.n, PATTERN_MAX_SIZE) + 1):
        for combos in _combo_batches(k.n, s):
            budget.tick(combos.shape[0])
            codes = np.sort(_pattern_codes(matrix, combos), axis=0)
            differs = codes[1:] != codes[:-1]
            unique = np.ones(codes.shape, dtype=bool)
            unique[1:] &= differs
            unique[:-1] &= differs
            if unique.any():
                return s
    return td_min(k, budget)


def pattern_count(g: Tournament, s: InstanceSet, b: Sequence[int]) -> int:
    """Concepts of C^1[G] labeling the members of s (ascending) with the bits b."""
    members = s.members()
    if len(members) != len(b):
        raise ValueError(f'Pattern of length {len(b)} given for an instance set of size {len(members)}.')
    if s.n != g.n:
        raise ValueError(f'Instance set over [{s.n}] used with a tournament on {g.n} players.')
    wanted = sum(1 << (x - 1) for x, bit in zip(members, b) if int(bit))
    return sum(1 for m in class1(g).masks if m & s.mask == wanted)


def _class1_nctd(g: Tournament) -> int:
    teacher = canonical_teacher(g)
    d, _ = nctd(class1(g), hint=teacher.restrict(class1(g)))
    return d


def _run_trial(args: Tuple[int, int, int]) -> TrialRecord:
    n, index, seed = args
    g = random_tournament(n, seed)
    k = class1(g)
    observed = _class1_nctd(g)
    class2_nctd, _ = nctd(class2(g), hint=canonical_teacher(g))
    if observed != 1 or class2_nctd != 1:
        raise VerificationError(f'Trial {index}: NCTD of the tournament classes is {observed}/{class2_nctd}, not 1.')
    return TrialRecord(
        trial=index, seed=seed, n=n, td_min=td_min_by_patterns(k), nctd=observed,
        rtd=rtd(k) if n <= TRIAL_RTD_MAX_N else None,
    )


def run_trials(n: int, trials: int, seed: int, jobs: int = 1) -> List[TrialRecord]:
    tasks = [(n, i, trial_seed(seed, i)) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(_run_trial, tasks))
    return [_run_trial(task) for task in tasks]


def summarize(n: int, records: Sequence[TrialRecord]) -> TdminSummary:
    values = np.array([r.td_min for r in records], dtype=np.int64)
    distribution = Counter(int(v) for v in values)
    return TdminSummary(
        n=n, trials=len(records), td_min_min=int(values.min()), td_min_mean=float(values.mean()),
        td_min_max=int(values.max()), distribution=' '.join(f'{v}:{distribution[v]}' for v in sorted(distribution)),
    )


def fraction_at_most(records: Sequence[TrialRecord], threshold: int) -> Fraction:
    return Fraction(sum(1 for r in records if r.td_min <= threshold), len(records))


def run_tdmin_experiment(cfg: ExperimentConfig, jobs: int = 1, max_n: int = TDMIN_MAX_N) -> Tuple[List[TrialRecord], TdminSummary]:
    """Sample cfg.trials tournaments, recording TD_min and NCTD of C^1[G] for each, in trial order."""
    _check_size(cfg.n, max_n)
    if cfg.budget_seconds:
        Budget.set_budget(cfg.budget_seconds)
    logger.info(f'TD_min experiment n={cfg.n} trials={cfg.trials} seed={cfg.seed}')
    records = run_trials(cfg.n, cfg.trials, cfg.seed, jobs)
    return records, summarize(cfg.n, records)


def run_tau_experiment(cfg: ExperimentConfig, jobs: int = 1, max_n: int = TDMIN_MAX_N) -> TauEstimate:
    """tau_estimate driven by a config; `k_override` replaces the derived threshold."""
    if cfg.budget_seconds:
        Budget.set_budget(cfg.budget_seconds)
    return tau_estimate(cfg.n, cfg.trials, cfg.seed, k=cfg.k_override, jobs=jobs, max_n=max_n)


def _check_size(n: int, max_n: int):
    if n > max_n:
        raise InconclusiveSearchError(f'Exact TD_min experiments are limited to n <= {max_n}, got {n}.')


def tau_estimate(n: int, trials: int, seed: int, k: int = None, jobs: int = 1, max_n: int = TDMIN_MAX_N) -> TauEstimate:
    """Fraction of sampled tournaments with td_min(C^1[G]) <= threshold, with a 95% Clopper-Pearson interval."""
    threshold = threshold_k(n, offset=5)[1] if k is None else k
    if threshold < 1:
        logger.info(f'Threshold {threshold} < 1 at n={n}: the fraction is 0 without sampling')
        return TauEstimate(n=n, trials=trials, seed=seed, threshold=threshold, vacuous=True, hits=0, fraction=Fraction(0))
    _check_size(n, max_n)
    records = run_trials(n, trials, seed, jobs)
    hits = sum(1 for r in records if r.td_min <= threshold)
    interval = stats.binomtest(hits, trials).proportion_ci(confidence_level=0.95, method='exact')
    return TauEstimate(
        n=n, trials=trials, seed=seed, threshold=threshold, vacuous=False, hits=hits,
        fraction=Fraction(hits, trials), ci_low=float(interval.low), ci_high=float(interval.high),
    )


def _is_complement_closed(masks: Sequence[int], full: int) -> bool:
    present = set(masks)
    return all(full & ~m in present for m in masks)


def verify_dim1(n: int, prefilter: bool = True, max_n: int = VERIFY_DIM1_MAX_N) -> Dim1Report:
    """Check that the classes of 2n concepts over [n] with NCTD 1 are exactly the C^2[G].

    Candidates are the 2n-subsets of the 2^n concepts in colex order; with `prefilter`
    only complement-closed candidates reach the teacher search. Distinct tournaments can
    induce the same class (for n <= 3 a tournament and its reversal always do), so classes
    are compared as sets, not counted per tournament.
    """
    if not 1 <= n <= max_n:
        raise ValueError(f'verify_dim1 enumerates binomial(2^n, 2n) classes; n must lie in [1, {max_n}].')
    full = full_mask(n)
    budget = Budget.get_budget()
    candidates = closed = 0
    passing = set()
    for combo in colex_combinations(1 << n, 2 * n):
        candidates += 1
        if _is_complement_closed(combo, full):
            closed += 1
        elif prefilter:
            continue
        k = ConceptClass.from_masks(n, combo)
        if find_teacher(k, 1, budget) is not None:
            passing.add(frozenset(combo))
    expected = {frozenset(class2(g).masks) for g in all_tournaments(n)}
    for masks in passing:
        if not _is_complement_closed(masks, full):
            raise VerificationError(f'Class {sorted(masks)} has NCTD 1 but is not closed under complement.')
    if passing != expected:
        raise VerificationError(
            f'n={n}: {len(passing)} classes have NCTD 1, {len(expected)} tournament classes, '
            f'{len(passing ^ expected)} disagree.'
        )
    logger.info(f'verify_dim1 n={n}: {candidates} candidates, {len(passing)} classes with NCTD 1')
    return Dim1Report(
        n=n, candidates=candidates, complement_closed=closed, passing=len(passing), tournament_classes=len(expected),
        verified=True,
    )


def _permutation_tables(n: int) -> List[List[int]]:
    tables = []
    for image in permutations(range(n)):
        table = []
        for m in range(1 << n):
            table.append(sum(1 << image[x] for x in range(n) if m >> x & 1))
        tables.append(table)
    return tables


def canonical_form(masks: Sequence[int], tables: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Least sorted mask tuple over all domain permutations."""
    return min(tuple(sorted(table[m] for m in masks)) for table in tables)


def greedy_max_class(n: int, d: int, budget: Budget = None) -> ConceptClass:
    """Add concepts in mask order, keeping each one that leaves an order-d teacher in place."""
    budget = budget or Budget.get_budget()
    kept: List[int] = []
    for m in range(1 << n):
        trial = ConceptClass.from_masks(n, kept + [m])
        if len(trial) == 1 or find_teacher(trial, d, budget) is not None:
            kept.append(m)
    return ConceptClass.from_masks(n, kept)


def max_class_search(n: int, d: int, budget: Budget = None, max_n: int = MAXCLASS_MAX_N,
                     max_d: int = MAXCLASS_MAX_D) -> Tuple[MaxClassReport, List[ConceptClass]]:
    """M_NC(n, d) and every maximum class up to domain permutation.

    Sizes are tried from min(2^d binomial(n, d), 2^n) downward; a subclass of a class with
    NCTD <= d has NCTD <= d, so the first size with a passing class is the maximum.
    """
    if not 1 <= n <= max_n or not 0 <= d <= min(n, max_d):
        raise ValueError(f'max_class_search is limited to n <= {max_n}, d <= {max_d} (got n={n}, d={d}).')
    budget = budget or Budget.get_budget()
    greedy = greedy_max_class(n, d, budget)
    start = min(ksz_bound(n, d), 1 << n)
    tables = _permutation_tables(n)
    try:
        for size in range(start, len(greedy) - 1, -1):
            forms = sorted({canonical_form(combo, tables) for combo in colex_combinations(1 << n, size)})
            logger.info(f'M_NC({n},{d}): testing {len(forms)} classes of size {size}')
            witnesses = []
            for form in forms:
                k = ConceptClass.from_masks(n, form)
                if len(k) == 1 or find_teacher(k, d, budget, symmetry_breaking=True) is not None:
                    witnesses.append(k)
            if witnesses:
                report = MaxClassReport(
                    n=n, d=d, value=size, start=start, greedy_lower=len(greedy), witnesses=len(witnesses),
                )
                return report, witnesses
            budget.check()
    except BudgetExceededError as e:
        raise InconclusiveSearchError(
            f'M_NC({n},{d}) search stopped: {e}', lower=len(greedy), upper=size, witness=greedy,
        )
    raise AssertionError('the greedy class is itself a witness')
