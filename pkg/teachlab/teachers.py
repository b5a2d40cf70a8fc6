"""No-clash teachers: clash detection, admissibility, normalization and exact NCTD."""
import logging
from collections import Counter
from itertools import permutations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from teachlab.budget import Budget, BudgetExceededError, InconclusiveSearchError
from teachlab.concepts import Concept, ConceptClass, InstanceSet, agrees_on, k_subsets

logger = logging.getLogger(__name__)

AUTOMORPHISM_MAX_N = 8


class IdenticalConceptsError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


class TeacherNotNormalizedError(ValueError):
    pass


class NCTDExceedsError(InconclusiveSearchError):
    """No admissible teacher of order <= d_max exists; `lower` is d_max + 1."""
    pass


class NCTeacher:
    """An assignment of one instance set to every concept of a class, aligned with the class order."""

    def __init__(self, k: ConceptClass, sets: Sequence[InstanceSet]):
        sets = tuple(sets)
        if len(sets) != len(k):
            raise ValueError(f'Teacher assigns {len(sets)} sets to a class of {len(k)} concepts.')
        for s in sets:
            if s.n != k.n:
                raise ValueError(f'Teaching set over [{s.n}] used with a class over [{k.n}].')
        self.k = k
        self.sets = sets

    @classmethod
    def from_masks(cls, k: ConceptClass, masks: Sequence[int]) -> 'NCTeacher':
        return cls(k, [InstanceSet(k.n, m) for m in masks])

    @property
    def masks(self) -> Tuple[int, ...]:
        return tuple(s.mask for s in self.sets)

    @property
    def order(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    @property
    def is_normalized(self) -> bool:
        return len({len(s) for s in self.sets}) <= 1

    def __getitem__(self, c: Concept) -> InstanceSet:
        return self.sets[self.k.index_of(c)]

    def multiplicities(self) -> Dict[int, int]:
        """m(F): how many concepts were assigned each teaching-set mask F."""
        return dict(Counter(self.masks))

    def restrict(self, sub: ConceptClass) -> 'NCTeacher':
        return NCTeacher(sub, [self[c] for c in sub])

    def __eq__(self, other):
        if isinstance(other, NCTeacher):
            return self.k == other.k and self.masks == other.masks
        return NotImplemented

    def __repr__(self):
        return f'<NCTeacher order={self.order} over {len(self.k)} concepts>'


def clash(c: Concept, c2: Concept, s: InstanceSet, s2: InstanceSet) -> bool:
    if c == c2:
        raise IdenticalConceptsError('A concept cannot clash with itself.')
    return agrees_on(c, c2, s | s2)


def first_clash(masks: Sequence[int], sets: Sequence[int]) -> Optional[Tuple[int, int]]:
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not (masks[i] ^ masks[j]) & (sets[i] | sets[j]):
                return i, j
    return None


def is_nc_teacher(t: NCTeacher) -> bool:
    pair = first_clash(t.k.masks, t.masks)
    if pair is not None:
        logger.debug(f'Concepts {pair[0]} and {pair[1]} clash')
    return pair is None


def normalize_teacher(t: NCTeacher, d: int) -> NCTeacher:
    """Pad every teaching set with the smallest unused instances until it has exactly d elements."""
    if d < t.order:
        raise NormalizationError(f'Cannot normalize a teacher of order {t.order} down to {d}.')
    if d > t.k.n:
        raise NormalizationError(f'Order {d} exceeds the domain size {t.k.n}.')
    padded = []
    for s in t.sets:
        mask = s.mask
        x = 0
        while mask.bit_count() < d:
            if not mask >> x & 1:
                mask |= 1 << x
            x += 1
        padded.append(InstanceSet(t.k.n, mask))
    return NCTeacher(t.k, padded)


def trivial_teacher(k: ConceptClass) -> NCTeacher:
    """Every concept taught by the whole domain; admissible for any duplicate-free class."""
    return NCTeacher(k, [InstanceSet.full(k.n)] * len(k))


def nctd_lower_bound(k: ConceptClass) -> int:
    """Smallest d with 2^d * binomial(n, d) >= |k|."""
    d = 0
    while (1 << d) * comb(k.n, d) < len(k):
        d += 1
    return d


def _permute_mask(mask: int, image: Sequence[int]) -> int:
    result = 0
    while mask:
        low = mask & -mask
        result |= 1 << image[low.bit_length() - 1]
        mask ^= low
    return result


def class_automorphisms(k: ConceptClass) -> List[Tuple[int, ...]]:
    """Domain permutations (as 0-based image tuples) mapping the class onto itself."""
    members = set(k.masks)
    return [
        image for image in permutations(range(k.n))
        if all(_permute_mask(m, image) in members for m in k.masks)
    ]


def find_teacher(k: ConceptClass, d: int, budget: Budget = None, symmetry_breaking: bool = False) -> Optional[NCTeacher]:
    """Decide whether an admissible teacher of order d exists; returns the first one found or None.

    Backtracking over d-subsets in lexicographic order, most-constrained concept first, with
    forward checking: once C gets S, every unassigned C' agreeing with C on S keeps only the
    candidates that contain an instance where C and C' differ.
    """
    budget = budget or Budget.get_budget()
    n = k.n
    if not 0 <= d <= n:
        raise ValueError(f'Order {d} outside [0, {n}].')
    masks = k.masks
    count = len(masks)
    candidates = list(k_subsets(n, d))
    rank = {s: r for r, s in enumerate(candidates)}
    assignment: List[Optional[int]] = [None] * count

    automorphisms = None
    if symmetry_breaking:
        if n <= AUTOMORPHISM_MAX_N:
            automorphisms = class_automorphisms(k)
        else:
            logger.info(f'Symmetry breaking skipped: n={n} exceeds {AUTOMORPHISM_MAX_N}')

    def root_values(var: int, values: List[int]) -> List[int]:
        # Automorphisms fixing the first branched concept map teachers to teachers,
        # so its candidates can be cut down to one representative per orbit.
        stabilizer = [image for image in automorphisms if _permute_mask(masks[var], image) == masks[var]]
        return [s for s in values if all(rank[_permute_mask(s, image)] >= rank[s] for image in stabilizer)]

    def backtrack(domains: List[List[int]], depth: int) -> bool:
        budget.tick()
        if depth == count:
            return True
        var = min((i for i in range(count) if assignment[i] is None), key=lambda i: (len(domains[i]), i))
        values = domains[var]
        if depth == 0 and automorphisms:
            values = root_values(var, values)
        for s in values:
            narrowed_domains = list(domains)
            feasible = True
            for j in range(count):
                if j == var or assignment[j] is not None:
                    continue
                diff = masks[var] ^ masks[j]
                if diff & s:
                    continue
                narrowed = [s2 for s2 in domains[j] if s2 & diff]
                if not narrowed:
                    feasible = False
                    break
                narrowed_domains[j] = narrowed
            if feasible:
                assignment[var] = s
                if backtrack(narrowed_domains, depth + 1):
                    return True
                assignment[var] = None
        return False

    logger.info(f'Deciding order-{d} teacher for {count} concepts over [{n}]')
    if not backtrack([candidates] * count, 0):
        return None
    teacher = NCTeacher.from_masks(k, assignment)
    assert is_nc_teacher(teacher), 'search returned a clashing teacher'
    return teacher


def nctd(k: ConceptClass, d_max: int = None, hint: NCTeacher = None, budget: Budget = None,
         symmetry_breaking: bool = False) -> Tuple[int, NCTeacher]:
    """Smallest d admitting an order-d teacher, with a normalized witness.

    A `hint` teacher that is admissible and whose order meets the counting lower bound
    settles the answer without search.
    """
    if not len(k):
        raise ValueError('NCTD of an empty class is undefined.')
    budget = budget or Budget.get_budget()
    d_max = k.n if d_max is None else d_max
    if d_max > k.n:
        raise ValueError(f'd_max={d_max} exceeds the domain size {k.n}.')
    if len(k) == 1:
        return 0, NCTeacher(k, [InstanceSet.empty(k.n)])

    lower = nctd_lower_bound(k)
    best_known = trivial_teacher(k)
    if hint is not None and hint.k == k and is_nc_teacher(hint):
        best_known = hint
        if hint.order <= lower:
            logger.info(f'Hint teacher of order {hint.order} meets the lower bound')
            return lower, normalize_teacher(hint, lower)

    for d in range(lower, d_max + 1):
        try:
            budget.check()
            teacher = find_teacher(k, d, budget, symmetry_breaking)
        except BudgetExceededError as e:
            raise InconclusiveSearchError(
                f'NCTD search stopped while deciding d={d}: {e}', lower=d, upper=best_known.order, witness=best_known,
            )
        if teacher is not None:
            return d, normalize_teacher(teacher, d)
        if best_known.order == d + 1 <= d_max:
            return d + 1, normalize_teacher(best_known, d + 1)
    raise NCTDExceedsError(f'NCTD exceeds d_max={d_max}.', lower=d_max + 1, upper=best_known.order, witness=best_known)
