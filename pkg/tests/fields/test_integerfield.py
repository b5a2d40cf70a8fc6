import pytest

from teachlab import fields, models


class Counts(models.Model):
    n = fields.IntegerField(required=True, min_value=1, max_value=64)
    hits = fields.IntegerField()


def test_integerfield_create():
    model = Counts(n=8, hits=3)
    assert model.n == 8
    assert model.hits == 3


def test_integerfield_required_raises():
    with pytest.raises(fields.FieldError):
        Counts(hits=3)


@pytest.mark.parametrize('value', [0, 65, 2.5, '8', True])
def test_integerfield_validation_raises(value):
    with pytest.raises(fields.FieldError):
        Counts(n=value)


def test_integerfield_from_text():
    model = Counts.from_text(n=' 12 ', hits='')
    assert model.n == 12
    assert model.hits is None


def test_integerfield_from_text_garbage_raises():
    with pytest.raises(fields.FieldError):
        Counts.from_text(n='twelve')


def test_integerfield_large_values_are_exact():
    field = fields.IntegerField()
    assert field.convert_to_text(2 ** 70) == '1180591620717411303424'
