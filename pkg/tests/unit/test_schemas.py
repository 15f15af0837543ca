"""
Tests for the JSON document formats and rational encoding.
"""

from fractions import Fraction

import pytest

from src.liptrop.errors import FormatError, NotAssociative
from src.liptrop.groups import FiniteGroup
from src.liptrop.lip_monoid import LipContext
from src.liptrop.schemas import (
    format_rational,
    group_from_document,
    group_to_document,
    matrix_to_document,
    parse_matrix,
    parse_rational,
    parse_values,
    parse_weights,
    to_jsonable,
    validate_document,
)


class TestParseRational:
    """Test suite for parse_rational."""

    @pytest.mark.parametrize("raw,expected", [
        ('6/4', Fraction(3, 2)),
        ('-1/3', Fraction(-1, 3)),
        (' 7 / 10 ', Fraction(7, 10)),
        ('5', Fraction(5)),
        (3, Fraction(3)),
        (Fraction(1, 2), Fraction(1, 2)),
    ])
    def test_accepts(self, raw, expected):
        """Test accepted encodings."""
        assert parse_rational(raw) == expected

    @pytest.mark.parametrize("raw", [0.5, True, '1.5', 'x', '1/', None, [1]])
    def test_rejects(self, raw):
        """Test floats, booleans and malformed strings."""
        with pytest.raises(FormatError):
            parse_rational(raw)

    def test_zero_denominator(self):
        """Test a zero denominator names the field."""
        with pytest.raises(FormatError) as exc_info:
            parse_rational('1/0', source='f.json', field='values[2]')
        assert exc_info.value.field == 'values[2]'
        assert 'zero denominator' in exc_info.value.detail


class TestFormatRational:
    """Test suite for the canonical encoding."""

    def test_lowest_terms(self):
        """Test reduction and integer forms."""
        assert format_rational(Fraction(14, 20)) == '7/10'
        assert format_rational(Fraction(-6, 2)) == '-3'
        assert format_rational(Fraction(0)) == '0'

    def test_to_jsonable(self, z2_context: LipContext):
        """Test witnesses of mixed types become JSON values."""
        witness = {
            'f': z2_context.function(['1/2', 1]),
            'pair': (0, Fraction(3, 4)),
            'tags': frozenset({2, 1}),
            'flag': True,
        }
        assert to_jsonable(witness) == {
            'f': ['1/2', '1'],
            'pair': [0, '3/4'],
            'tags': [1, 2],
            'flag': True,
        }


class TestValidateDocument:
    """Test suite for document validation."""

    def test_valid_group(self, z2: FiniteGroup):
        """Test a serialized group validates."""
        assert validate_document(group_to_document(z2), 'group')['valid']

    def test_missing_fields(self):
        """Test every missing field is listed."""
        result = validate_document({'name': 'x'}, 'group')
        assert result['valid'] is False
        assert result['fields'] == ['order', 'table']

    def test_wrong_type(self):
        """Test a boolean order is not an int."""
        result = validate_document({'order': True, 'table': [[0]]}, 'group')
        assert result['fields'] == ['order']

    def test_not_an_object(self):
        """Test a top-level list."""
        result = validate_document([1, 2], 'function')
        assert result['fields'] == ['$']


class TestGroupDocuments:
    """Test suite for group documents."""

    def test_round_trip(self, groups: dict[str, FiniteGroup]):
        """Test the D4 table survives serialization."""
        d4 = groups['D4']
        assert group_from_document(group_to_document(d4)) == d4

    def test_order_mismatch(self):
        """Test a declared order that disagrees with the table."""
        with pytest.raises(FormatError) as exc_info:
            group_from_document({'order': 3, 'table': [[0, 1], [1, 0]]}, source='g.json')
        assert exc_info.value.field == 'order'

    def test_axiom_failure_is_group_error(self):
        """Test axiom failures keep their own error type."""
        with pytest.raises(NotAssociative):
            group_from_document({'order': 3, 'table': [[0, 1, 2], [1, 0, 0], [2, 0, 0]]})

    def test_name_defaults_to_source(self):
        """Test an unnamed document is named after its source."""
        group = group_from_document({'order': 1, 'table': [[0]]}, source='trivial.json')
        assert group.name == 'trivial.json'


class TestValuesAndMatrices:
    """Test suite for function, weight and metric documents."""

    def test_values(self):
        """Test values parse exactly."""
        assert parse_values({'values': ['1/2', 0, '-3']}) == [Fraction(1, 2), Fraction(0), Fraction(-3)]

    def test_values_length(self):
        """Test a length that disagrees with the group order."""
        with pytest.raises(FormatError) as exc_info:
            parse_values({'values': ['1/2']}, expected_length=2)
        assert 'does not match group order 2' in str(exc_info.value)

    def test_value_field_path(self):
        """Test the failing index is named."""
        with pytest.raises(FormatError) as exc_info:
            parse_values({'values': [0, 0.25]})
        assert exc_info.value.field == 'values[1]'

    def test_weights(self):
        """Test weight keys become element indices."""
        assert parse_weights({'weights': {'1': '1', '3': 1}}) == {1: Fraction(1), 3: Fraction(1)}

    def test_weights_bad_key(self):
        """Test a non-numeric key."""
        with pytest.raises(FormatError):
            parse_weights({'weights': {'a': 1}})

    def test_matrix(self):
        """Test a matrix document round trip."""
        document = matrix_to_document('z2.json', [[Fraction(0), Fraction(1, 2)], [Fraction(1, 2), Fraction(0)]])
        assert document == {'group': 'z2.json', 'matrix': [['0', '1/2'], ['1/2', '0']]}
        assert parse_matrix(document)[0][1] == Fraction(1, 2)

    def test_matrix_row_not_list(self):
        """Test a scalar row."""
        with pytest.raises(FormatError) as exc_info:
            parse_matrix({'group': 'z2.json', 'matrix': [0, 1]})
        assert exc_info.value.field == 'matrix[0]'
