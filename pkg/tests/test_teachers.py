import numpy as np
import pytest

from teachlab import teachers
from teachlab.bounds import heavy_sets
from teachlab.budget import Budget, InconclusiveSearchError
from teachlab.classical import rtd
from teachlab.concepts import Concept, ConceptClass, InstanceSet, full_cube, parse_class
from teachlab.johnson import find_narrow_clique
from teachlab.tournaments import all_tournaments, canonical_teacher, class1, class2, random_tournament
from tests import HALF_INTERVALS_TEXT, random_class


def test_clash_when_both_concepts_label_shared_instance_alike():
    c = Concept.from_members(3, [1])
    c2 = Concept.from_members(3, [2])
    s = InstanceSet.from_members(3, [3])
    assert teachers.clash(c, c2, s, s)


def test_no_clash_when_concepts_disagree():
    c = Concept.from_members(3, [1])
    c2 = Concept.from_members(3, [2])
    assert not teachers.clash(c, c2, InstanceSet.from_members(3, [1]), InstanceSet.from_members(3, [2]))


def test_clash_identical_concepts_raises():
    c = Concept.from_members(3, [1])
    with pytest.raises(teachers.IdenticalConceptsError):
        teachers.clash(c, c, InstanceSet.empty(3), InstanceSet.empty(3))


def test_teacher_set_count_must_match_class():
    k = parse_class(HALF_INTERVALS_TEXT)
    with pytest.raises(ValueError):
        teachers.NCTeacher(k, [InstanceSet.empty(3)])


def test_trivial_teacher_is_admissible():
    k = random_class(1, 5, 12)
    t = teachers.trivial_teacher(k)
    assert teachers.is_nc_teacher(t)
    assert t.order == 5


def test_is_nc_teacher_rejects_empty_sets():
    k = ConceptClass.from_masks(2, [0, 1])
    t = teachers.NCTeacher(k, [InstanceSet.empty(2)] * 2)
    assert not teachers.is_nc_teacher(t)


def test_normalize_teacher_pads_with_smallest_unused():
    k = ConceptClass.from_masks(3, [0, 1, 2])
    t = teachers.NCTeacher.from_masks(k, [0b001, 0b010, 0b100])
    normalized = teachers.normalize_teacher(t, 2)
    assert normalized.masks == (0b011, 0b011, 0b101)
    assert normalized.is_normalized


def test_normalize_teacher_keeps_admissibility():
    k = random_class(4, 5, 10)
    d, t = teachers.nctd(k)
    for target in range(d, 6):
        assert teachers.is_nc_teacher(teachers.normalize_teacher(t, target))


def test_normalize_teacher_below_order_raises():
    k = parse_class(HALF_INTERVALS_TEXT)
    with pytest.raises(teachers.NormalizationError):
        teachers.normalize_teacher(teachers.trivial_teacher(k), 2)
    with pytest.raises(teachers.NormalizationError):
        teachers.normalize_teacher(teachers.trivial_teacher(k), 4)


def test_nctd_lower_bound():
    assert teachers.nctd_lower_bound(ConceptClass.from_masks(3, [5])) == 0
    assert teachers.nctd_lower_bound(parse_class(HALF_INTERVALS_TEXT)) == 1
    assert teachers.nctd_lower_bound(full_cube(4)) == 2


def test_nctd_half_intervals():
    k = parse_class(HALF_INTERVALS_TEXT)
    d, t = teachers.nctd(k)
    assert d == 1
    assert t.order == 1
    assert t.is_normalized
    assert teachers.is_nc_teacher(t)


def test_nctd_singleton_class_is_zero():
    d, t = teachers.nctd(ConceptClass.from_masks(4, [9]))
    assert d == 0
    assert t.order == 0


def test_nctd_empty_class_raises():
    with pytest.raises(ValueError):
        teachers.nctd(ConceptClass(3, allow_empty=True))


def test_nctd_d_max_above_n_raises():
    with pytest.raises(ValueError):
        teachers.nctd(parse_class(HALF_INTERVALS_TEXT), d_max=4)


def test_nctd_exceeds_d_max():
    with pytest.raises(teachers.NCTDExceedsError) as e:
        teachers.nctd(full_cube(3), d_max=1)
    assert e.value.lower == 2


def test_nctd_full_cube():
    d, t = teachers.nctd(full_cube(4))
    assert d == 2
    assert teachers.is_nc_teacher(t)


def test_nctd_budget_reports_interval():
    with pytest.raises(InconclusiveSearchError) as e:
        teachers.nctd(full_cube(4), budget=Budget(max_nodes=1))
    assert e.value.lower == 2
    assert e.value.upper == 4
    assert teachers.is_nc_teacher(e.value.witness)


def test_nctd_tournament_classes_are_one():
    for n in range(2, 6):
        for g in all_tournaments(n):
            assert teachers.is_nc_teacher(canonical_teacher(g))
            assert teachers.nctd(class2(g))[0] == 1
            assert teachers.nctd(class1(g))[0] == 1


def test_nctd_hint_short_circuits():
    g = random_tournament(12, 99)
    d, t = teachers.nctd(class2(g), hint=canonical_teacher(g))
    assert d == 1
    assert t == canonical_teacher(g)


def test_find_teacher_symmetry_breaking_agrees():
    for seed in range(15):
        k = random_class(seed, 4, 4 + seed % 8)
        for d in range(0, 3):
            plain = teachers.find_teacher(k, d)
            broken = teachers.find_teacher(k, d, symmetry_breaking=True)
            assert (plain is None) == (broken is None)
            if broken is not None:
                assert teachers.is_nc_teacher(broken)


def test_find_teacher_order_out_of_range():
    with pytest.raises(ValueError):
        teachers.find_teacher(parse_class(HALF_INTERVALS_TEXT), 4)


def test_nctd_monotone_under_subclass():
    k = random_class(8, 5, 14)
    d, t = teachers.nctd(k)
    sub = k.subclass(range(0, len(k), 2))
    assert teachers.is_nc_teacher(t.restrict(sub))
    assert teachers.nctd(sub)[0] <= d


def test_class_automorphisms_of_cube():
    assert len(teachers.class_automorphisms(full_cube(3))) == 6
    assert teachers.class_automorphisms(ConceptClass.from_masks(3, [1])) == [(0, 1, 2), (0, 2, 1)]


def test_multiplicities_count_concepts():
    k = full_cube(3)
    d, t = teachers.nctd(k)
    counts = t.multiplicities()
    assert sum(counts.values()) == len(k)
    assert all(m <= 1 << d for m in counts.values())


def test_heavy_sets_span_no_narrow_clique():
    checked = 0
    for seed in range(200):
        k = random_class(seed, 5, 11 + seed % 6)
        d, t = teachers.nctd(k)
        if d < 2:
            continue
        checked += 1
        for tt in range(2, d + 1):
            heavy = heavy_sets(t, tt)
            if len(heavy) > tt:
                assert find_narrow_clique(heavy, tt + 1) is None
    assert checked > 0


def relabel(k, image):
    return ConceptClass.from_masks(k.n, [sum(1 << image[x] for x in range(k.n) if m >> x & 1) for m in k.masks])


def test_nctd_invariant_under_permutation_and_complement():
    for seed in range(100):
        n = 3 + seed % 3
        k = random_class(seed, n, 2 + seed % 9)
        d = teachers.nctd(k)[0]
        image = [int(x) for x in np.random.default_rng(seed).permutation(n)]
        assert teachers.nctd(relabel(k, image))[0] == d
        assert teachers.nctd(ConceptClass.from_masks(n, [~m & ((1 << n) - 1) for m in k.masks]))[0] == d


def test_nctd_at_most_rtd():
    for seed in range(300):
        k = random_class(seed, 3 + seed % 4, 1 + seed % 10)
        assert teachers.nctd(k)[0] <= rtd(k)
