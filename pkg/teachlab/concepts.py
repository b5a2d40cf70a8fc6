"""Domains, concepts and concept classes.

Instances are 1-based: instance ``i`` of a domain ``[n]`` is bit ``i - 1`` of a
membership mask. Masks are plain Python ints, so every agreement or
difference test is a single word operation for ``n <= 64`` and a fixed-width
multi-word operation beyond that.
"""
import logging
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class DomainMismatchError(ValueError):
    pass


class ClassFormatError(ValueError):
    pass


class DuplicateConceptError(ClassFormatError):
    pass


class ConceptNotInClassError(ValueError):
    pass


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        mask |= 1 << (x - 1)
    return mask


def members_of(mask: int) -> Tuple[int, ...]:
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length())
        mask ^= low
    return tuple(result)


def colex_combinations(size: int, k: int) -> Iterator[Tuple[int, ...]]:
    """k-subsets of range(size) as ascending tuples, in colex order (ordered by their largest element first)."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, size):
        for rest in colex_combinations(top, k - 1):
            yield rest + (top,)


def k_subsets(n: int, k: int, colex: bool = False) -> Iterator[int]:
    """Masks of the k-subsets of [n]; lexicographic order unless `colex`."""
    source = colex_combinations(n, k) if colex else combinations(range(n), k)
    for combo in source:
        mask = 0
        for x in combo:
            mask |= 1 << x
        yield mask


class _BitVector:
    __slots__ = ('n', 'mask')

    def __init__(self, n: int, mask: int = 0):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f'Domain size must be a positive integer, got {n!r}.')
        if mask < 0 or mask >> n:
            raise ValueError(f'Mask {mask:#x} does not fit domain [{n}].')
        self.n = n
        self.mask = mask

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]):
        members = list(members)
        bad = [x for x in members if not 1 <= x <= n]
        if bad:
            raise ValueError(f'Instances {bad} lie outside domain [{n}].')
        return cls(n, mask_of(members))

    @classmethod
    def from_bits(cls, bits: str):
        """Bit position j (1-based from the left) is instance j."""
        if not bits or any(ch not in '01' for ch in bits):
            raise ClassFormatError(f'Expected a non-empty string over 0/1, got "{bits}".')
        mask = 0
        for j, ch in enumerate(bits):
            if ch == '1':
                mask |= 1 << j
        return cls(len(bits), mask)

    def to_bits(self) -> str:
        return ''.join('1' if self.mask >> i & 1 else '0' for i in range(self.n))

    def members(self) -> Tuple[int, ...]:
        return members_of(self.mask)

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and bool(self.mask >> (x - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __eq__(self, other):
        if type(other) is type(self):
            return self.n == other.n and self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.mask))

    def __repr__(self):
        return f'{type(self).__name__}(n={self.n}, {set(self.members()) or "{}"})'


class Concept(_BitVector):
    """A labeling of [n]; ``c(x)`` is the 0/1 label of instance x."""
    __slots__ = ()

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise ValueError(f'Instance {x} lies outside domain [{self.n}].')
        return self.mask >> (x - 1) & 1


class InstanceSet(_BitVector):
    __slots__ = ()

    @classmethod
    def empty(cls, n: int) -> 'InstanceSet':
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> 'InstanceSet':
        return cls(n, full_mask(n))

    def __len__(self):
        return self.mask.bit_count()

    def __or__(self, other: 'InstanceSet') -> 'InstanceSet':
        _check_same_domain(self, other)
        return InstanceSet(self.n, self.mask | other.mask)

    def __and__(self, other: 'InstanceSet') -> 'InstanceSet':
        _check_same_domain(self, other)
        return InstanceSet(self.n, self.mask & other.mask)

    def __lt__(self, other: 'InstanceSet') -> bool:
        # Lexicographic order on the ascending member lists.
        return self.members() < other.members()

    def isdisjoint(self, other: 'InstanceSet') -> bool:
        _check_same_domain(self, other)
        return not self.mask & other.mask


def _check_same_domain(*vectors: _BitVector):
    sizes = {v.n for v in vectors}
    if len(sizes) != 1:
        raise DomainMismatchError(f'Domain sizes differ: {sorted(sizes)}.')


def agrees_on(c: Concept, c2: Concept, s: InstanceSet) -> bool:
    _check_same_domain(c, c2, s)
    return not (c.mask ^ c2.mask) & s.mask


def difference_set(c: Concept, c2: Concept) -> InstanceSet:
    _check_same_domain(c, c2)
    return InstanceSet(c.n, c.mask ^ c2.mask)


def complement(c: Concept) -> Concept:
    return Concept(c.n, ~c.mask & full_mask(c.n))


class ConceptClass:
    """A duplicate-free, ordered collection of concepts over a shared domain [n]."""

    def __init__(self, n: int, concepts: Sequence[Concept] = (), allow_empty: bool = False):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f'Domain size must be a positive integer, got {n!r}.')
        concepts = tuple(concepts)
        for c in concepts:
            if c.n != n:
                raise DomainMismatchError(f'{c!r} is not a concept over [{n}].')
        if not concepts and not allow_empty:
            raise ValueError('A concept class needs at least one concept.')
        self.n = n
        self.concepts = concepts
        self.masks: Tuple[int, ...] = tuple(c.mask for c in concepts)
        self._index = dict()
        for i, mask in enumerate(self.masks):
            if mask in self._index:
                raise DuplicateConceptError(
                    f'Concept {concepts[i].to_bits()} occurs twice (positions {self._index[mask]} and {i}).'
                )
            self._index[mask] = i

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], allow_empty: bool = False) -> 'ConceptClass':
        return cls(n, [Concept(n, m) for m in masks], allow_empty=allow_empty)

    @classmethod
    def from_members(cls, n: int, member_lists: Iterable[Iterable[int]]) -> 'ConceptClass':
        return cls(n, [Concept.from_members(n, members) for members in member_lists])

    def index_of(self, c: Concept) -> int:
        if c.n != self.n or c.mask not in self._index:
            raise ConceptNotInClassError(f'{c!r} is not a member of this class.')
        return self._index[c.mask]

    def subclass(self, indices: Iterable[int], allow_empty: bool = False) -> 'ConceptClass':
        return ConceptClass(self.n, [self.concepts[i] for i in sorted(set(indices))], allow_empty=allow_empty)

    def without(self, indices: Iterable[int]) -> 'ConceptClass':
        drop = set(indices)
        return self.subclass((i for i in range(len(self)) if i not in drop), allow_empty=True)

    def __len__(self):
        return len(self.concepts)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self.concepts)

    def __getitem__(self, i: int) -> Concept:
        return self.concepts[i]

    def __contains__(self, c: Concept) -> bool:
        return isinstance(c, Concept) and c.n == self.n and c.mask in self._index

    def __eq__(self, other):
        if isinstance(other, ConceptClass):
            return self.n == other.n and self.masks == other.masks
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.masks))

    def same_concepts(self, other: 'ConceptClass') -> bool:
        """Set equality, ignoring concept order."""
        return self.n == other.n and set(self.masks) == set(other.masks)

    def __repr__(self):
        return f'<ConceptClass n={self.n} [{", ".join(c.to_bits() for c in self.concepts)}]>'


def full_cube(n: int) -> ConceptClass:
    """The powerset class 2^[n], in mask order."""
    return ConceptClass.from_masks(n, range(1 << n))


def parse_class(text: str, allow_empty: bool = False) -> ConceptClass:
    n: Optional[int] = None
    concepts: List[Concept] = []
    seen = dict()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if n is None:
            if not line.startswith('n='):
                raise ClassFormatError(f'Line {line_no}: missing header "n=<int>".')
            try:
                n = int(line[2:])
            except ValueError:
                raise ClassFormatError(f'Line {line_no}: malformed header "{line}".')
            if n < 1:
                raise ClassFormatError(f'Line {line_no}: domain size must be positive.')
            continue
        if len(line) != n:
            raise ClassFormatError(f'Line {line_no}: expected {n} labels, got {len(line)}.')
        concept = Concept.from_bits(line)
        if concept.mask in seen:
            raise DuplicateConceptError(f'Line {line_no}: duplicate of the concept on line {seen[concept.mask]}.')
        seen[concept.mask] = line_no
        concepts.append(concept)
    if n is None:
        raise ClassFormatError('Missing header "n=<int>".')
    logger.debug(f'Parsed class with {len(concepts)} concepts over [{n}]')
    return ConceptClass(n, concepts, allow_empty=allow_empty)


def serialize_class(k: ConceptClass) -> str:
    lines = [f'n={k.n}'] + [c.to_bits() for c in k]
    return '\n'.join(lines) + '\n'
