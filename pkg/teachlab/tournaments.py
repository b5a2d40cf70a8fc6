"""Tournaments, the classes C^1[G] and C^2[G], the canonical order-1 teacher and tournament recovery."""
import logging
from itertools import combinations
from math import comb
from typing import Iterator, List, Tuple

import networkx as nx
import numpy as np

from teachlab.concepts import ConceptClass, InstanceSet, full_mask
from teachlab.rng import stream_bits
from teachlab.teachers import NCTeacher, first_clash

logger = logging.getLogger(__name__)


class TournamentFormatError(ValueError):
    pass


class RecoveryError(ValueError):
    pass


class ClassSizeError(RecoveryError):
    pass


class TeacherOrderError(RecoveryError):
    pass


class ClashingTeacherError(RecoveryError):
    pass


class SingletonUsageError(RecoveryError):
    pass


def pair_rank(n: int, i: int, j: int) -> int:
    """Position of the pair {i, j}, 1 <= i < j <= n, in lexicographic pair order."""
    if not 1 <= i < j <= n:
        raise ValueError(f'Pair ({i}, {j}) is not an ordered pair of players in [{n}].')
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


class Tournament:
    """An orientation of the complete graph on [n].

    `orientation[pair_rank(n, i, j)]` is True when the edge is (i, j), i.e. i beats j,
    and False when it is (j, i).
    """

    def __init__(self, n: int, orientation=None):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f'A tournament needs a positive number of players, got {n!r}.')
        pairs = comb(n, 2)
        if orientation is None:
            orientation = np.zeros(pairs, dtype=bool)
        orientation = np.asarray(orientation, dtype=bool)
        if orientation.shape != (pairs,):
            raise ValueError(f'Expected {pairs} orientation bits for {n} players, got shape {orientation.shape}.')
        orientation.setflags(write=False)
        self.n = n
        self.orientation = orientation

    def beats(self, i: int, j: int) -> bool:
        if i == j:
            raise ValueError('A player does not play against itself.')
        if i < j:
            return bool(self.orientation[pair_rank(self.n, i, j)])
        return not self.orientation[pair_rank(self.n, j, i)]

    def edges(self) -> List[Tuple[int, int]]:
        """Directed edges, one per pair, in lexicographic pair order."""
        return [
            (i, j) if bit else (j, i)
            for (i, j), bit in zip(combinations(range(1, self.n + 1), 2), self.orientation)
        ]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges())
        return graph

    def winner_masks(self) -> List[int]:
        """Mask of C_j = {i : (i, j) in E} for j = 1..n."""
        winners = [0] * self.n
        for (i, j), bit in zip(combinations(range(self.n), 2), self.orientation):
            if bit:
                winners[j] |= 1 << i
            else:
                winners[i] |= 1 << j
        return winners

    def __eq__(self, other):
        if isinstance(other, Tournament):
            return self.n == other.n and bool(np.array_equal(self.orientation, other.orientation))
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.orientation.tobytes()))

    def __repr__(self):
        return f'<Tournament n={self.n} edges={self.edges()}>'


def linear_tournament(n: int) -> Tournament:
    return Tournament(n, np.ones(comb(n, 2), dtype=bool))


def random_tournament(n: int, seed: int) -> Tournament:
    """Each pair oriented by one fair bit from the splitmix64 stream `seed`, indexed by pair rank."""
    return Tournament(n, stream_bits(seed, comb(n, 2)))


def all_tournaments(n: int) -> Iterator[Tournament]:
    """All 2^binomial(n, 2) tournaments; bit r of the counter orients the pair of rank r."""
    pairs = comb(n, 2)
    ranks = np.arange(pairs, dtype=np.int64)
    for code in range(1 << pairs):
        yield Tournament(n, (code >> ranks) & 1)


def class1(g: Tournament) -> ConceptClass:
    """C^1[G]: the complements C̄_1 .. C̄_n."""
    full = full_mask(g.n)
    return ConceptClass.from_masks(g.n, [~c & full for c in g.winner_masks()])


def class2(g: Tournament) -> ConceptClass:
    """C^2[G]: C_1 .. C_n followed by C̄_1 .. C̄_n."""
    full = full_mask(g.n)
    winners = g.winner_masks()
    masks = winners + [~c & full for c in winners]
    assert len(set(masks)) == 2 * g.n, 'C^2[G] must have 2n distinct concepts'
    return ConceptClass.from_masks(g.n, masks)


def canonical_teacher(g: Tournament) -> NCTeacher:
    """T(C_j) = T(C̄_j) = {j} on C^2[G]."""
    singletons = [InstanceSet(g.n, 1 << j) for j in range(g.n)]
    return NCTeacher(class2(g), singletons + singletons)


def characterization_assertions(g: Tournament, i: int, j: int) -> Tuple[bool, ...]:
    """The eight statements about C_i, C_j and their complements that are all equivalent to (i, j) in E."""
    if i == j:
        raise ValueError('Assertions need two distinct players.')
    winners = g.winner_masks()
    full = full_mask(g.n)
    c_i, c_j = winners[i - 1], winners[j - 1]
    cbar_i, cbar_j = ~c_i & full, ~c_j & full
    at_i, at_j = 1 << (i - 1), 1 << (j - 1)

    def agree(a: int, b: int, at: int) -> bool:
        return not (a ^ b) & at

    return (
        not agree(c_j, c_i, at_i),
        agree(c_j, cbar_i, at_i),
        not agree(cbar_i, c_j, at_j),
        agree(cbar_i, cbar_j, at_j),
        not agree(cbar_j, cbar_i, at_i),
        agree(cbar_j, c_i, at_i),
        not agree(c_i, cbar_j, at_j),
        agree(c_i, c_j, at_j),
    )


def recover_tournament(k: ConceptClass, t: NCTeacher) -> Tournament:
    """The tournament G with C^2[G] = k, read off an admissible order-1 teacher.

    The two concepts taught by {j} are C_j (without j) and C̄_j (with j); the pair
    {i, j} is oriented (i, j) exactly when C_j agrees with C̄_i on {i}, i.e. i is in C_j.
    """
    n = k.n
    if len(k) != 2 * n:
        raise ClassSizeError(f'Expected 2n = {2 * n} concepts, got {len(k)}.')
    if t.k != k:
        raise RecoveryError('The teacher was built for a different class.')
    sizes = sorted({len(s) for s in t.sets})
    if sizes != [1]:
        raise TeacherOrderError(f'Recovery needs singleton teaching sets, got sizes {sizes}.')

    c = [None] * n
    for x in range(n):
        users = [i for i, s in enumerate(t.masks) if s == 1 << x]
        if len(users) != 2:
            raise SingletonUsageError(f'Singleton {{{x + 1}}} teaches {len(users)} concepts instead of 2.')
        with_x = [i for i in users if k.masks[i] >> x & 1]
        if len(with_x) != 1:
            raise SingletonUsageError(f'The two concepts taught by {{{x + 1}}} agree on it.')
        without_x, = [i for i in users if i not in with_x]
        c[x] = k.masks[without_x]

    pair = first_clash(k.masks, t.masks)
    if pair is not None:
        raise ClashingTeacherError(f'Concepts {pair[0]} and {pair[1]} clash under the teacher.')

    orientation = np.array([bool(c[j] >> i & 1) for i, j in combinations(range(n), 2)], dtype=bool)
    g = Tournament(n, orientation)
    if not class2(g).same_concepts(k):
        raise RecoveryError('Recovered tournament does not reproduce the class.')
    logger.info(f'Recovered a tournament on {n} players')
    return g
