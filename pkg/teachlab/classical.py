"""Goldman-Kearns teaching dimension, TD_min and the recursive teaching dimension.

A teaching set for C is a hitting set of the difference sets {C xor C'}; all
searches below work on those difference masks directly.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from teachlab.budget import Budget
from teachlab.concepts import Concept, ConceptClass, InstanceSet, full_mask

logger = logging.getLogger(__name__)

RTD_BRUTEFORCE_CAP = 14
AGREEMENT_TABLE_MAX_N = 12


class ClassTooLargeError(ValueError):
    pass


def _reduced_difference_sets(masks: Sequence[int], i: int) -> List[int]:
    """Difference sets of concept i against every other concept; supersets dropped, sorted by size."""
    target = masks[i]
    unique = sorted({target ^ m for j, m in enumerate(masks) if j != i}, key=lambda s: (s.bit_count(), s))
    kept: List[int] = []
    for s in unique:
        if not any(k & s == k for k in kept):
            kept.append(s)
    return kept


def _packing_bound(sets: Sequence[int]) -> int:
    # Pairwise disjoint sets each need their own hitting element.
    used = 0
    count = 0
    for s in sets:
        if not s & used:
            used |= s
            count += 1
    return count


def _greedy_hitting_set(sets: Sequence[int], n: int) -> int:
    unhit = list(sets)
    chosen = 0
    while unhit:
        best = max(range(n), key=lambda x: (sum(1 for s in unhit if s >> x & 1), -x))
        chosen |= 1 << best
        unhit = [s for s in unhit if not s >> best & 1]
    return chosen


def _hitting_set_within(sets: Sequence[int], limit: int, budget: Budget) -> Optional[int]:
    """Some hitting set of size <= limit, or None. Branches on the smallest unhit set."""
    def search(unhit: List[int], chosen: int, left: int) -> Optional[int]:
        budget.tick()
        if not unhit:
            return chosen
        if left == 0 or _packing_bound(unhit) > left:
            return None
        pivot = unhit[0]
        while pivot:
            low = pivot & -pivot
            pivot ^= low
            result = search([s for s in unhit if not s & low], chosen | low, left - 1)
            if result is not None:
                return result
        return None

    return search(list(sets), 0, limit)


def _lex_first_hitting_set(sets: Sequence[int], n: int, size: int, budget: Budget) -> int:
    """The lexicographically smallest hitting set with `size` elements (`size` must be feasible)."""
    full = full_mask(n)

    def search(unhit: List[int], start: int, left: int, chosen: int) -> Optional[int]:
        budget.tick()
        if left == 0:
            return chosen if not unhit else None
        allowed = full & ~((1 << start) - 1)
        restricted = [s & allowed for s in unhit]
        if any(r == 0 for r in restricted) or _packing_bound(restricted) > left:
            return None
        for x in range(start, n - left + 1):
            bit = 1 << x
            result = search([s for s in unhit if not s & bit], x + 1, left - 1, chosen | bit)
            if result is not None:
                return result
        return None

    witness = search(list(sets), 0, size, 0)
    assert witness is not None, f'no hitting set of size {size}'
    return witness


def _minimum_hitting_size(sets: Sequence[int], n: int, budget: Budget) -> int:
    if not sets:
        return 0
    upper = _greedy_hitting_set(sets, n).bit_count()
    for size in range(_packing_bound(sets), upper):
        if _hitting_set_within(sets, size, budget) is not None:
            return size
    return upper


def _td_task(args: Tuple[int, Tuple[int, ...], int]) -> Tuple[int, int]:
    n, masks, i = args
    budget = Budget.get_budget()
    sets = _reduced_difference_sets(masks, i)
    size = _minimum_hitting_size(sets, n, budget)
    return size, _lex_first_hitting_set(sets, n, size, budget)


class TeachingReport:
    """Minimal teaching-set sizes and one lexicographically smallest witness per concept, in class order."""

    def __init__(self, k: ConceptClass, sizes: Sequence[int], witnesses: Sequence[InstanceSet]):
        self.k = k
        self.sizes = tuple(sizes)
        self.witnesses = tuple(witnesses)

    def size_of(self, c: Concept) -> int:
        return self.sizes[self.k.index_of(c)]

    def witness_of(self, c: Concept) -> InstanceSet:
        return self.witnesses[self.k.index_of(c)]

    @property
    def td_min(self) -> int:
        return min(self.sizes)

    @property
    def td_max(self) -> int:
        return max(self.sizes)

    def rows(self) -> List[Tuple[int, int, str]]:
        return [(i, size, ' '.join(map(str, w.members()))) for i, (size, w) in enumerate(zip(self.sizes, self.witnesses))]


def is_teaching_set(k: ConceptClass, c: Concept, s: InstanceSet) -> bool:
    i = k.index_of(c)
    if s.n != k.n:
        raise ValueError(f'Instance set over [{s.n}] used with a class over [{k.n}].')
    return all((c.mask ^ m) & s.mask for j, m in enumerate(k.masks) if j != i)


def td_of(k: ConceptClass, c: Concept, budget: Budget = None) -> Tuple[int, InstanceSet]:
    budget = budget or Budget.get_budget()
    sets = _reduced_difference_sets(k.masks, k.index_of(c))
    size = _minimum_hitting_size(sets, k.n, budget)
    return size, InstanceSet(k.n, _lex_first_hitting_set(sets, k.n, size, budget))


def teaching_report(k: ConceptClass, jobs: int = 1) -> TeachingReport:
    tasks = [(k.n, k.masks, i) for i in range(len(k))]
    if jobs > 1 and len(k) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_td_task, tasks))
    else:
        results = [_td_task(task) for task in tasks]
    return TeachingReport(k, [size for size, _ in results], [InstanceSet(k.n, w) for _, w in results])


def td_sizes(k: ConceptClass, budget: Budget = None) -> List[int]:
    budget = budget or Budget.get_budget()
    return [_minimum_hitting_size(_reduced_difference_sets(k.masks, i), k.n, budget) for i in range(len(k))]


def td_min(k: ConceptClass, budget: Budget = None) -> int:
    """Iterative deepening: the first size s at which any concept has a teaching set of size s."""
    if not len(k):
        raise ValueError('TD_min of an empty class is undefined.')
    budget = budget or Budget.get_budget()
    families = [_reduced_difference_sets(k.masks, i) for i in range(len(k))]
    start = min(_packing_bound(sets) for sets in families)
    for size in range(start, k.n + 1):
        logger.debug(f'TD_min trying size {size}')
        if any(_hitting_set_within(sets, size, budget) is not None for sets in families):
            return size
    raise AssertionError('the full domain always teaches a duplicate-free class')


def td_max(k: ConceptClass, budget: Budget = None) -> int:
    if not len(k):
        raise ValueError('TD of an empty class is undefined.')
    return max(td_sizes(k, budget))


def rtd_layers(k: ConceptClass, budget: Budget = None) -> List[Tuple[int, ConceptClass]]:
    """The recursion's peeled layers: (TD_min of the remainder, its easiest-to-teach concepts)."""
    layers = []
    remaining = k
    while len(remaining):
        sizes = td_sizes(remaining, budget)
        level = min(sizes)
        easiest = [i for i, size in enumerate(sizes) if size == level]
        layers.append((level, remaining.subclass(easiest)))
        logger.info(f'RTD layer {len(layers)}: TD_min={level}, peeled {len(easiest)} of {len(remaining)}')
        remaining = remaining.without(easiest)
    return layers


def rtd(k: ConceptClass, budget: Budget = None) -> int:
    return max((level for level, _ in rtd_layers(k, budget)), default=0)


def rtd_bruteforce(k: ConceptClass, cap: int = RTD_BRUTEFORCE_CAP) -> int:
    """max over all nonempty subclasses of TD_min, by enumeration."""
    if len(k) > cap:
        raise ClassTooLargeError(f'Brute-force RTD enumerates 2^{len(k)} subclasses; the cap is {cap} concepts.')
    if not len(k):
        return 0
    budget = Budget.get_budget()
    count = len(k)
    n = k.n
    if n > AGREEMENT_TABLE_MAX_N:
        return max(
            td_min(k.subclass(i for i in range(count) if members >> i & 1), budget)
            for members in range(1, 1 << count)
        )
    subsets_by_size = [[sum(1 << x for x in combo) for combo in combinations(range(n), size)] for size in range(n + 1)]
    # agree[i][S]: concepts of the whole class agreeing with concept i on instance set S.
    agree = [dict() for _ in range(count)]
    for i, mi in enumerate(k.masks):
        for layer in subsets_by_size:
            for s in layer:
                agree[i][s] = sum(1 << j for j, mj in enumerate(k.masks) if not (mi ^ mj) & s)

    def subclass_td_min(members: int) -> int:
        indices = [i for i in range(count) if members >> i & 1]
        for size, layer in enumerate(subsets_by_size):
            for s in layer:
                budget.tick()
                for i in indices:
                    if agree[i][s] & members == 1 << i:
                        return size
        raise AssertionError('the full domain always teaches a duplicate-free class')

    return max(subclass_td_min(members) for members in range(1, 1 << count))
