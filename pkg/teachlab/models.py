import json
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from teachlab.fields import Field, FieldError, RationalField


class ModelBase(type):
    def __new__(cls, name, bases, attrs, **kwargs):
        new_class = super().__new__(cls, name, bases, attrs)

        # Inherited fields first, then the ones declared on this class, in declaration order.
        fields: Dict[str, Field] = dict()
        for base in reversed(new_class.__mro__[1:]):
            fields.update(getattr(base, '__fields__', {}))
        fields.update({key: value for key, value in attrs.items() if isinstance(value, Field)})
        new_class.__fields__ = fields
        return new_class


class Model(metaclass=ModelBase):
    def __init__(self, **kwargs):
        cls = self.__class__
        unknown = set(kwargs) - set(cls.__fields__)
        if unknown:
            raise FieldError(f'{cls} got unexpected fields {sorted(unknown)}.')

        for attribute_name, attribute_field in cls.__fields__.items():
            if kwargs.get(attribute_name) is not None:
                value = kwargs[attribute_name]
            else:
                # Value was not passed in through the constructor, fall back to the field default.
                value = attribute_field.value
            attribute_field.validate(value, cls, attribute_name)
            setattr(self, attribute_name, value)

    @classmethod
    def from_text(cls, **kwargs) -> 'Model':
        """Build an instance from raw text values, e.g. CLI arguments or environment variables."""
        converted = {key: cls.__fields__[key].convert(value) for key, value in kwargs.items() if key in cls.__fields__}
        return cls(**converted)

    @classmethod
    def csv_header(cls, columns: Sequence[str] = None) -> List[str]:
        return list(columns or cls.__fields__)

    def items(self) -> List[Tuple[str, object]]:
        return [(name, getattr(self, name)) for name in self.__fields__]

    def as_dict(self) -> dict:
        """JSON-ready mapping: rationals become `p/q` strings, everything else keeps its Python type."""
        result = dict()
        for name, value in self.items():
            field = self.__fields__[name]
            if isinstance(field, RationalField) and value is not None:
                result[name] = field.convert_to_text(value)
            elif isinstance(value, Fraction):
                result[name] = str(value)
            else:
                result[name] = value
        return result

    def csv_row(self, columns: Sequence[str] = None) -> List[str]:
        return [self.__fields__[name].convert_to_text(getattr(self, name)) for name in columns or self.__fields__]

    def serialize(self, format='text') -> str:
        if format == 'text':
            return '\n'.join(
                f'{name}={self.__fields__[name].convert_to_text(value)}' for name, value in self.items()
            )
        elif format == 'json':
            return json.dumps(self.as_dict())
        elif format == 'csv':
            return ','.join(self.csv_row())
        raise ValueError(f'Unknown serialization format "{format}".')

    def __eq__(self, other):
        if isinstance(other, Model):
            return type(self) is type(other) and self.items() == other.items()
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.csv_row())))

    def __repr__(self):
        values = ', '.join(f'{name}={value!r}' for name, value in self.items())
        return f'<{self.__class__.__name__}: {values}>'
