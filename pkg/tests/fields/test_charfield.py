import pytest

from teachlab import fields, models


def test_required_field_raises_exception():
    class TestModel(models.Model):
        char_field = fields.CharField(required=True)

    with pytest.raises(fields.FieldError):
        TestModel()


def test_charfield_create():
    class TestModel(models.Model):
        char_field = fields.CharField()

    model = TestModel(char_field='test')
    assert model.char_field == 'test'


def test_charfield_default_value():
    class TestModel(models.Model):
        char_field = fields.CharField(value='')

    assert TestModel().char_field == ''


def test_charfield_choices_validation_raises():
    class TestModel(models.Model):
        kind = fields.CharField(choices=('exact', 'upper-bound'))

    assert TestModel(kind='exact').kind == 'exact'
    with pytest.raises(fields.FieldError):
        TestModel(kind='guess')


def test_charfield_convert_to_text_none_value():
    class TestModel(models.Model):
        comment = fields.CharField()

    model = TestModel(comment=None)
    assert model.serialize() == 'comment='
