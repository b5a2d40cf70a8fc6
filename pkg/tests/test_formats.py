import pytest

from teachlab import formats
from teachlab.concepts import parse_class
from teachlab.johnson import KSetFamily, h_max
from teachlab.teachers import NCTeacher, nctd
from teachlab.tournaments import TournamentFormatError, canonical_teacher, linear_tournament, random_tournament
from tests import HALF_INTERVALS_TEXT

LINEAR_TEACHER_TEXT = 'n=3 d=1\n000 : 1\n100 : 2\n110 : 3\n111 : 1\n011 : 2\n001 : 3\n'


def test_serialize_teacher():
    assert formats.serialize_teacher(canonical_teacher(linear_tournament(3))) == LINEAR_TEACHER_TEXT


def test_parse_teacher_round_trip():
    k = parse_class(HALF_INTERVALS_TEXT)
    t = formats.parse_teacher(LINEAR_TEACHER_TEXT, k)
    assert t == canonical_teacher(linear_tournament(3))
    assert formats.serialize_teacher(t) == LINEAR_TEACHER_TEXT


def test_parse_teacher_any_line_order():
    k = parse_class(HALF_INTERVALS_TEXT)
    lines = LINEAR_TEACHER_TEXT.splitlines()
    shuffled = '\n'.join([lines[0]] + lines[:0:-1]) + '\n'
    assert formats.parse_teacher(shuffled, k) == formats.parse_teacher(LINEAR_TEACHER_TEXT, k)


def test_teacher_empty_sets_round_trip():
    k = parse_class('n=2\n01\n')
    d, t = nctd(k)
    text = formats.serialize_teacher(t)
    assert text == 'n=2 d=0\n01 :\n'
    assert formats.parse_teacher(text, k) == t


@pytest.mark.parametrize('text', [
    '',
    'n=3\n000 : 1\n',
    'n=4 d=1\n',
    'n=3 d=1\n000 1\n',
    'n=3 d=1\n000 : 1\n000 : 2\n',
    'n=3 d=1\n010 : 1\n',
    'n=3 d=1\n000 : 4\n',
    'n=3 d=1\n000 : 2 1\n',
    'n=3 d=1\n000 : 1 2\n',
    'n=3 d=2\n000 : 1\n100 : 2\n110 : 3\n111 : 1\n011 : 2\n001 : 3\n',
    'n=3 d=1\n000 : 1\n100 : 2\n',
])
def test_parse_teacher_malformed(text):
    with pytest.raises(formats.TeacherFormatError):
        formats.parse_teacher(text, parse_class(HALF_INTERVALS_TEXT))


def test_tournament_round_trip():
    g = random_tournament(7, 31)
    text = formats.serialize_tournament(g)
    assert formats.parse_tournament(text) == g
    assert formats.serialize_tournament(formats.parse_tournament(text)) == text


def test_serialize_linear_tournament():
    assert formats.serialize_tournament(linear_tournament(3)) == 'n=3\n1 2\n1 3\n2 3\n'


def test_parse_tournament_any_edge_order():
    assert formats.parse_tournament('n=3\n3 2\n1 3\n1 2\n').edges() == [(1, 2), (1, 3), (3, 2)]


@pytest.mark.parametrize('text', [
    '',
    'n=0\n',
    'n=3\n1 2\n1 3\n',
    'n=3\n1 2\n2 1\n1 3\n',
    'n=3\n1 2\n1 3\n2 2\n',
    'n=3\n1 2\n1 3\n2 4\n',
    'n=3\n1 2\n1 3\nx y\n',
    'players=3\n1 2\n1 3\n2 3\n',
])
def test_parse_tournament_malformed(text):
    with pytest.raises(TournamentFormatError):
        formats.parse_tournament(text)


def test_family_round_trip():
    _, witness = h_max(5, 2, 2)
    text = formats.serialize_family(witness)
    assert text.startswith('n=5 k=2\n')
    assert formats.parse_family(text) == witness
    assert formats.serialize_family(formats.parse_family(text)) == text


def test_empty_family_round_trip():
    f = KSetFamily(4, 2)
    assert formats.parse_family(formats.serialize_family(f)) == f


@pytest.mark.parametrize('text', ['', 'n=4\n1 2\n', 'n=4 k=2\n1 2 3\n', 'n=4 k=2\n1 2\n1 2\n', 'n=4 k=2\n2 1\n'])
def test_parse_family_malformed(text):
    with pytest.raises(formats.FamilyFormatError):
        formats.parse_family(text)


def test_write_csv(tmp_path):
    path = tmp_path / 'rows.csv'
    formats.write_csv(str(path), ['a', 'b'], [['1', '2'], ['3', '4 5']])
    assert path.read_text() == 'a,b\n1,2\n3,4 5\n'


def test_write_and_read_text(tmp_path):
    path = str(tmp_path / 'class.txt')
    formats.write_text(path, HALF_INTERVALS_TEXT)
    assert formats.read_text(path) == HALF_INTERVALS_TEXT


def test_read_text_missing_file(tmp_path):
    with pytest.raises(OSError):
        formats.read_text(str(tmp_path / 'missing.txt'))


def test_teacher_for_other_class_rejected():
    k = parse_class('n=3\n000\n111\n')
    t = NCTeacher.from_masks(k, [1, 1])
    with pytest.raises(formats.TeacherFormatError):
        formats.parse_teacher(formats.serialize_teacher(t), parse_class(HALF_INTERVALS_TEXT))
