"""Johnson graphs J(n, k), wide and narrow cliques, and the extremal numbers H_t(n, k).

k-subsets of [n] are int masks (instance i is bit i - 1). Sorting masks
numerically is colex order, which every enumeration here uses.
"""
import enum
import logging
from collections import Counter
from fractions import Fraction
from functools import reduce
from math import comb
from operator import and_, or_
from typing import Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from teachlab.budget import Budget, BudgetExceededError, InconclusiveSearchError
from teachlab.concepts import InstanceSet, full_mask, k_subsets, mask_of, members_of

logger = logging.getLogger(__name__)

EXACT_LIMIT = 1000


class FamilyError(ValueError):
    pass


class NotACliqueError(ValueError):
    pass


class KSetFamily:
    """A set of distinct k-subsets of [n], kept in colex order."""

    def __init__(self, n: int, k: int, members: Iterable[int] = ()):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise FamilyError(f'Domain size must be a positive integer, got {n!r}.')
        if not 0 <= k <= n:
            raise FamilyError(f'Subset size {k} outside [0, {n}].')
        masks = sorted(set(members))
        for m in masks:
            if m < 0 or m >> n or m.bit_count() != k:
                raise FamilyError(f'{set(members_of(m))} is not a {k}-subset of [{n}].')
        self.n = n
        self.k = k
        self.masks: Tuple[int, ...] = tuple(masks)

    @classmethod
    def from_members(cls, n: int, k: int, member_lists: Iterable[Iterable[int]]) -> 'KSetFamily':
        return cls(n, k, [mask_of(members) for members in member_lists])

    @classmethod
    def from_instance_sets(cls, n: int, k: int, sets: Iterable[InstanceSet]) -> 'KSetFamily':
        return cls(n, k, [s.mask for s in sets])

    def member_lists(self) -> List[Tuple[int, ...]]:
        return [members_of(m) for m in self.masks]

    def __len__(self):
        return len(self.masks)

    def __iter__(self) -> Iterator[InstanceSet]:
        return (InstanceSet(self.n, m) for m in self.masks)

    def __contains__(self, s: InstanceSet) -> bool:
        return s.n == self.n and s.mask in self.masks

    def __eq__(self, other):
        if isinstance(other, KSetFamily):
            return (self.n, self.k, self.masks) == (other.n, other.k, other.masks)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.k, self.masks))

    def __repr__(self):
        return f'<KSetFamily n={self.n} k={self.k} {self.member_lists()}>'


class CliqueClass(enum.Enum):
    WIDE = 'wide'
    NARROW = 'narrow'
    BOTH = 'both'
    NEITHER = 'neither'


def _size_of(s) -> int:
    return len(s) if isinstance(s, InstanceSet) else s.bit_count()


def _mask(s) -> int:
    return s.mask if isinstance(s, InstanceSet) else s


def johnson_adjacent(a, b) -> bool:
    """|a ∩ b| = k - 1 for two k-subsets, given as InstanceSets or masks."""
    if _size_of(a) != _size_of(b):
        raise FamilyError(f'Vertices of a Johnson graph need equal sizes, got {_size_of(a)} and {_size_of(b)}.')
    return (_mask(a) & _mask(b)).bit_count() == _size_of(a) - 1


def classify_clique(ks) -> CliqueClass:
    masks = sorted({_mask(s) for s in ks})
    sizes = {m.bit_count() for m in masks}
    if len(sizes) > 1:
        raise FamilyError(f'Clique members have different sizes {sorted(sizes)}.')
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not johnson_adjacent(masks[i], masks[j]):
                raise NotACliqueError(f'{set(members_of(masks[i]))} and {set(members_of(masks[j]))} are not adjacent.')
    if len(masks) <= 1:
        return CliqueClass.NEITHER
    k = sizes.pop()
    wide = reduce(and_, masks).bit_count() == k - 1
    narrow = reduce(or_, masks).bit_count() == k + 1
    if wide and narrow:
        return CliqueClass.BOTH
    return CliqueClass.WIDE if wide else CliqueClass.NARROW


def _k_subsets_of(mask: int) -> List[int]:
    result = []
    rest = mask
    while rest:
        low = rest & -rest
        result.append(mask ^ low)
        rest ^= low
    return sorted(result)


def narrow_cliques(n: int, k: int) -> Iterator[KSetFamily]:
    """The maximal narrow cliques P_k(D), one per (k+1)-subset D, in colex order of D."""
    if k + 1 > n:
        raise FamilyError(f'Narrow cliques need k + 1 <= n, got k={k}, n={n}.')
    for d in k_subsets(n, k + 1, colex=True):
        yield KSetFamily(n, k, _k_subsets_of(d))


def narrow_clique_counts(f: KSetFamily) -> Counter:
    """|f ∩ P_k(D)| for every (k+1)-subset D that meets f."""
    counts = Counter()
    full = full_mask(f.n)
    for m in f.masks:
        outside = full & ~m
        while outside:
            low = outside & -outside
            counts[m | low] += 1
            outside ^= low
    return counts


def is_narrow_clique_free(f: KSetFamily, t: int) -> bool:
    """No (k+1)-subset of [n] contains more than t members."""
    return all(count <= t for count in narrow_clique_counts(f).values())


def counting_upper_bound(n: int, k: int, t: int) -> int:
    """floor(t * binomial(n, k) / (k + 1)): each member lies in n - k sets D, each D holds at most t members."""
    if k == n:
        return 1
    return min(comb(n, k), t * comb(n, k + 1) // (n - k))


def greedy_family(n: int, k: int, t: int) -> KSetFamily:
    """Take k-subsets in colex order while no (k+1)-subset exceeds t members."""
    counts = Counter()
    full = full_mask(n)
    chosen = []
    for m in k_subsets(n, k, colex=True):
        supersets = []
        outside = full & ~m
        while outside:
            low = outside & -outside
            supersets.append(m | low)
            outside ^= low
        if all(counts[d] < t for d in supersets):
            chosen.append(m)
            for d in supersets:
                counts[d] += 1
    return KSetFamily(n, k, chosen)


def _check_parameters(n: int, k: int, t: int):
    if not 1 <= t <= k <= n:
        raise ValueError(f'Need 1 <= t <= k <= n, got n={n}, k={k}, t={t}.')


def h_max(n: int, k: int, t: int, limit: int = EXACT_LIMIT, budget: Budget = None) -> Tuple[int, KSetFamily]:
    """H_t(n, k) and the colex-least family attaining it.

    Branch and bound over the k-subsets in colex order, trying inclusion first. The
    bound adds to the current size floor(sum_D min(t - count_D, free_D) / (n - k)),
    free_D being the undecided members of D.
    """
    _check_parameters(n, k, t)
    if k == n:
        return 1, KSetFamily(n, k, [full_mask(n)])
    upper = counting_upper_bound(n, k, t)
    if comb(n, k) > limit:
        greedy = greedy_family(n, k, t)
        raise InconclusiveSearchError(
            f'binomial({n},{k}) = {comb(n, k)} exceeds the exact limit {limit}.',
            lower=len(greedy), upper=upper, witness=greedy,
        )
    budget = budget or Budget.get_budget()

    vertices = list(k_subsets(n, k, colex=True))
    d_index = {d: r for r, d in enumerate(k_subsets(n, k + 1, colex=True))}
    full = full_mask(n)
    supersets = []
    for m in vertices:
        outside = full & ~m
        row = []
        while outside:
            low = outside & -outside
            row.append(d_index[m | low])
            outside ^= low
        supersets.append(row)

    count = [0] * len(d_index)
    free = [k + 1] * len(d_index)
    slack = t * len(d_index)
    spread = n - k
    total = len(vertices)
    decisions: List[int] = []
    size = 0
    best_size = -1
    best: List[int] = []

    def decide(v: int, include: bool, sign: int):
        nonlocal slack, size
        for d in supersets[v]:
            before = min(t - count[d], free[d])
            free[d] -= sign
            if include:
                count[d] += sign
            slack += min(t - count[d], free[d]) - before
        if include:
            size += sign

    logger.info(f'Exact H_{t}({n},{k}) search over {total} sets, counting bound {upper}')
    try:
        while True:
            budget.tick()
            v = len(decisions)
            descend = False
            if v == total:
                if size > best_size:
                    best_size = size
                    best = [vertices[i] for i, taken in enumerate(decisions) if taken]
                    logger.debug(f'New best family of size {size}')
            elif size + min(total - v, slack // spread) > best_size:
                descend = True
            if descend:
                include = all(count[d] < t for d in supersets[v])
                decide(v, include, 1)
                decisions.append(int(include))
                continue
            while decisions and not decisions[-1]:
                v = len(decisions) - 1
                decisions.pop()
                decide(v, False, -1)
            if not decisions:
                break
            v = len(decisions) - 1
            decide(v, True, -1)
            decide(v, False, 1)
            decisions[-1] = 0
    except BudgetExceededError as e:
        raise InconclusiveSearchError(
            f'H_{t}({n},{k}) search stopped: {e}', lower=max(best_size, 0), upper=upper,
            witness=KSetFamily(n, k, best),
        )

    witness = KSetFamily(n, k, best)
    assert is_narrow_clique_free(witness, t), 'extremal witness contains a narrow clique'
    logger.info(f'H_{t}({n},{k}) = {best_size}')
    return best_size, witness


def h_ratio(n: int, k: int, t: int, limit: int = EXACT_LIMIT, budget: Budget = None) -> Fraction:
    value, _ = h_max(n, k, t, limit, budget)
    return Fraction(value, comb(n, k))


def restrict_family(f: KSetFamily, i: int) -> KSetFamily:
    """Members avoiding instance i, re-rooted over [n - 1].

    For i = n this is the identity embedding and every label is preserved. For i < n the
    members live on [n] minus {i}, which is mapped onto [n - 1] order-preservingly: labels
    below i are kept and labels above i move down by one.
    """
    if not 1 <= i <= f.n:
        raise FamilyError(f'Instance {i} lies outside [{f.n}].')
    if f.n - 1 < max(f.k, 1):
        raise FamilyError(f'Cannot restrict a family of {f.k}-subsets of [{f.n}] to a smaller domain.')
    bit = 1 << (i - 1)
    low = bit - 1
    kept = [(m & low) | ((m >> 1) & ~low) for m in f.masks if not m & bit]
    return KSetFamily(f.n - 1, f.k, kept)


def pigeonhole_instance(f: KSetFamily) -> int:
    """An instance lying in the fewest members (the smallest such label), hence in at most k|f|/n of them."""
    occurrences = [sum(1 for m in f.masks if m >> x & 1) for x in range(f.n)]
    return occurrences.index(min(occurrences)) + 1


def complement_family(f: KSetFamily) -> KSetFamily:
    full = full_mask(f.n)
    return KSetFamily(f.n, f.n - f.k, [full & ~m for m in f.masks])


def johnson_graph(n: int, k: int) -> nx.Graph:
    """J(n, k) with k-subsets as sorted member tuples."""
    graph = nx.Graph()
    vertices = list(k_subsets(n, k, colex=True))
    graph.add_nodes_from(members_of(m) for m in vertices)
    for i, a in enumerate(vertices):
        for b in vertices[i + 1:]:
            if johnson_adjacent(a, b):
                graph.add_edge(members_of(a), members_of(b))
    return graph


def span(f: KSetFamily) -> nx.Graph:
    """<f>: the subgraph of J(n, k) induced by f."""
    graph = nx.Graph()
    graph.add_nodes_from(members_of(m) for m in f.masks)
    for i, a in enumerate(f.masks):
        for b in f.masks[i + 1:]:
            if johnson_adjacent(a, b):
                graph.add_edge(members_of(a), members_of(b))
    return graph


def find_narrow_clique(f: KSetFamily, size: int) -> Optional[List[Tuple[int, ...]]]:
    """Some narrow clique with `size` members inside <f>, found by clique enumeration on the graph side."""
    if size < 2:
        raise ValueError(f'Narrow cliques have at least 2 members, got {size}.')
    for clique in nx.enumerate_all_cliques(span(f)):
        if len(clique) < size:
            continue
        if len(clique) > size:
            break
        if classify_clique(mask_of(members) for members in clique) in (CliqueClass.NARROW, CliqueClass.BOTH):
            return sorted(clique)
    return None


def max_triangle_free_edges(n: int) -> Tuple[int, nx.Graph]:
    """Largest triangle-free graph on n vertices by exhaustive edge search, returned with one extremal graph."""
    pairs = [(u, v) for v in range(n) for u in range(v)]
    adjacency = [0] * n
    chosen: List[Tuple[int, int]] = []
    best: List[Tuple[int, int]] = []

    def search(index: int):
        nonlocal best
        if len(chosen) + len(pairs) - index <= len(best):
            return
        if index == len(pairs):
            best = list(chosen)
            return
        u, v = pairs[index]
        if not adjacency[u] & adjacency[v]:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
            chosen.append((u, v))
            search(index + 1)
            chosen.pop()
            adjacency[u] ^= 1 << v
            adjacency[v] ^= 1 << u
        search(index + 1)

    search(0)
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from((u + 1, v + 1) for u, v in best)
    assert not any(nx.triangles(graph).values()), 'extremal graph contains a triangle'
    return len(best), graph


def mantel_value(n: int) -> int:
    return n * n // 4
