"""
Liptrop File Schemas

JSON document formats for groups, metrics, weights and functions, plus the
canonical rational encoding used everywhere output is produced.

Usage:
    from src.liptrop.schemas import parse_rational, format_rational, group_from_document

    q = parse_rational("6/4")          # Fraction(3, 2)
    format_rational(q)                 # "3/2"
"""

import re
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any, Optional

from .errors import FormatError
from .groups import FiniteGroup, validate_group

RATIONAL_PATTERN = re.compile(r'^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$')

# Required fields per document kind
FILE_SCHEMAS: dict[str, dict[str, Any]] = {
    'group': {
        'required_fields': ['order', 'table'],
        'field_types': {'name': str, 'order': int, 'identity': int, 'table': list},
    },
    'metric': {
        'required_fields': ['group', 'matrix'],
        'field_types': {'group': (str, dict), 'matrix': list},
    },
    'weights': {
        'required_fields': ['weights'],
        'field_types': {'group': (str, dict), 'weights': dict},
    },
    'function': {
        'required_fields': ['values'],
        'field_types': {'values': list},
    },
}


def parse_rational(value: Any, source: str = '<input>', field: str = 'value') -> Fraction:
    """
    Parse an exact rational from "p/q", an integer string, or an int.

    Floats are rejected; every value must be exact.

    Raises:
        FormatError
    """
    if isinstance(value, bool):
        raise FormatError(source, field, f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str) and RATIONAL_PATTERN.match(value):
        try:
            return Fraction(value.replace(' ', ''))
        except ZeroDivisionError as e:
            raise FormatError(source, field, f"zero denominator in {value!r}") from e
    raise FormatError(source, field, f"expected a rational string 'p/q' or integer, got {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical lowest-terms form: '7/10', '-3', '0'."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_jsonable(obj: Any) -> Any:
    """Convert witnesses (rationals, functions, vectors, nested containers) into JSON values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    values = getattr(obj, 'values', None)
    if isinstance(values, tuple):
        return [to_jsonable(v) for v in values]
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    return str(obj)


def validate_document(document: Any, kind: str) -> dict[str, Any]:
    """
    Check required fields and field types of a document.

    Returns:
        {'valid': bool, 'errors': [messages], 'fields': [failing field per message]}
    """
    schema = FILE_SCHEMAS[kind]
    validation_result: dict[str, Any] = {
        'valid': True,
        'errors': [],
        'fields': []
    }

    if not isinstance(document, Mapping):
        validation_result['valid'] = False
        validation_result['errors'].append(f"Document must be a JSON object, got {type(document).__name__}")
        validation_result['fields'].append('$')
        return validation_result

    for field in schema['required_fields']:
        if field not in document:
            validation_result['valid'] = False
            validation_result['errors'].append(f"Missing required field: {field}")
            validation_result['fields'].append(field)

    for field, expected in schema['field_types'].items():
        if field in document and (
            isinstance(document[field], bool) or not isinstance(document[field], expected)
        ):
            validation_result['valid'] = False
            validation_result['errors'].append(f"Invalid type for {field}")
            validation_result['fields'].append(field)

    return validation_result


def _require(document: Any, kind: str, source: str) -> None:
    result = validate_document(document, kind)
    if not result['valid']:
        raise FormatError(source, result['fields'][0], result['errors'][0])


def group_from_document(document: Any, source: str = '<input>') -> FiniteGroup:
    """
    Build a FiniteGroup from {"name", "order", "identity", "table"}.

    Structural problems raise FormatError; group-axiom failures raise the
    GroupError subclass naming the first violated invariant.
    """
    _require(document, 'group', source)
    table = document['table']
    if document['order'] != len(table):
        raise FormatError(source, 'order', f"order {document['order']} does not match {len(table)} table rows")
    return validate_group(table, identity=document.get('identity'), name=document.get('name', source))


def group_to_document(group: FiniteGroup) -> dict[str, Any]:
    return {
        'name': group.name,
        'order': group.order,
        'identity': group.identity,
        'table': [list(row) for row in group.table],
    }


def parse_matrix(document: Any, source: str = '<input>') -> list[list[Fraction]]:
    """Rational matrix from a metric document's "matrix" field."""
    _require(document, 'metric', source)
    matrix = []
    for i, row in enumerate(document['matrix']):
        if not isinstance(row, list):
            raise FormatError(source, f'matrix[{i}]', "row must be a list")
        matrix.append([parse_rational(v, source, f'matrix[{i}][{j}]') for j, v in enumerate(row)])
    return matrix


def parse_weights(document: Any, source: str = '<input>') -> dict[int, Fraction]:
    """Element index -> weight from a weights document."""
    _require(document, 'weights', source)
    weights = {}
    for key, value in document['weights'].items():
        try:
            index = int(key)
        except (TypeError, ValueError) as e:
            raise FormatError(source, f'weights.{key}', "key must be an element index") from e
        weights[index] = parse_rational(value, source, f'weights.{key}')
    return weights


def parse_values(document: Any, source: str = '<input>', expected_length: Optional[int] = None) -> list[Fraction]:
    """Function values from {"values": [...]}, optionally checking the length."""
    _require(document, 'function', source)
    values = [parse_rational(v, source, f'values[{i}]') for i, v in enumerate(document['values'])]
    if expected_length is not None and len(values) != expected_length:
        raise FormatError(
            source, 'values',
            f"length {len(values)} does not match group order {expected_length}"
        )
    return values


def matrix_to_document(group_ref: Any, matrix: Sequence[Sequence[Fraction]]) -> dict[str, Any]:
    return {
        'group': group_ref,
        'matrix': [[format_rational(v) for v in row] for row in matrix],
    }
