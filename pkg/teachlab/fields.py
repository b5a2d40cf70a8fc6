import abc
import math
from fractions import Fraction
from typing import Any, Optional, Sequence


class FieldError(ValueError):
    pass


def format_real(value: float) -> str:
    """Reals are printed with 12 significant digits, keeping a trailing `.0` on integral values."""
    text = format(value, '.12g')
    if not any(ch in text for ch in '.eEni'):
        text += '.0'
    return text


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f'{value.numerator}/{value.denominator}'


class Field(abc.ABC):
    value: Any
    required: bool

    def validate(self, value, cls, field):
        if self.required and value is None:
            raise FieldError(f'{cls} required field "{field}" is not set.')

    @abc.abstractmethod
    def convert(self, value):
        pass

    @abc.abstractmethod
    def convert_to_text(self, value) -> str:
        pass


class IntegerField(Field):
    def __init__(self, value: int = None, required: bool = False, min_value: int = None, max_value: int = None):
        self.value = value
        self.required = required
        self.min_value = min_value
        self.max_value = max_value

    def validate(self, value, cls, field):
        super(IntegerField, self).validate(value, cls, field)
        if value is None:
            return
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldError(f'{cls} field "{field}" expects an integer, got {type(value)} "{value}".')
        if self.min_value is not None and value < self.min_value:
            raise FieldError(f'{cls} field "{field}" must be >= {self.min_value} ({value}).')
        if self.max_value is not None and value > self.max_value:
            raise FieldError(f'{cls} field "{field}" must be <= {self.max_value} ({value}).')

    def convert(self, value):
        if value is None or value == '':
            return None
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            raise FieldError(f'Could not parse value "{value}" to Python int.')

    def convert_to_text(self, value):
        return '' if value is None else str(int(value))


class FloatField(Field):
    def __init__(self, value: float = None, required: bool = False, min_value: float = None, max_value: float = None):
        self.value = value
        self.required = required
        self.min_value = min_value
        self.max_value = max_value

    def validate(self, value, cls, field):
        super(FloatField, self).validate(value, cls, field)
        if value is None:
            return
        if not isinstance(value, (int, float)) or isinstance(value, bool) or math.isnan(value):
            raise FieldError(f'{cls} field "{field}" expects a real number, got "{value}".')
        if self.min_value is not None and value < self.min_value:
            raise FieldError(f'{cls} field "{field}" must be >= {self.min_value} ({value}).')
        if self.max_value is not None and value > self.max_value:
            raise FieldError(f'{cls} field "{field}" must be <= {self.max_value} ({value}).')

    def convert(self, value):
        if value is None or value == '':
            return None
        try:
            return float(value)
        except (TypeError, ValueError):
            raise FieldError(f'Could not parse value "{value}" to Python float.')

    def convert_to_text(self, value):
        return '' if value is None else format_real(float(value))


class RationalField(Field):
    def __init__(self, value: Fraction = None, required: bool = False):
        self.value = value
        self.required = required

    def validate(self, value, cls, field):
        super(RationalField, self).validate(value, cls, field)
        if value is not None and (isinstance(value, bool) or not isinstance(value, (int, Fraction))):
            raise FieldError(f'{cls} field "{field}" expects an exact rational, got {type(value)} "{value}".')

    def convert(self, value):
        if value is None or value == '':
            return None
        try:
            return Fraction(str(value).strip()) if not isinstance(value, (int, Fraction)) else Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise FieldError(f'Could not parse value "{value}" to a rational p/q.')

    def convert_to_text(self, value):
        return '' if value is None else format_rational(value)


class BooleanField(Field):
    def __init__(self, value: bool = None, required: bool = False):
        self.value = value
        self.required = required

    def convert(self, value):
        if value is None or isinstance(value, bool):
            return value
        if str(value).lower() in ('false', '0', 'no'):
            return False
        elif str(value).lower() in ('true', '1', 'yes'):
            return True
        else:
            raise FieldError(f'Could not parse value "{value}" to Python bool.')

    def convert_to_text(self, value):
        return '' if value is None else ('true' if value else 'false')


class CharField(Field):
    def __init__(self, value: str = None, required: bool = False, choices: Optional[Sequence[str]] = None):
        self.value = value
        self.required = required
        self.choices = tuple(choices) if choices is not None else None

    def validate(self, value, cls, field):
        super(CharField, self).validate(value, cls, field)
        if value is not None and self.choices is not None and value not in self.choices:
            raise FieldError(f'{cls} field "{field}" must be one of {self.choices} ("{value}").')

    def convert(self, value):
        return None if value is None else str(value)

    def convert_to_text(self, value):
        return '' if value is None else str(value)
