"""Unit tests for config validators."""

from utils.validators import (
    validate_enum_field,
    validate_positive_int,
    validate_real_range,
    validate_schedule,
    validate_seed,
    validate_string_field,
)


class TestValidatePositiveInt:
    """Positive integer fields."""

    def test_valid(self):
        assert validate_positive_int(5, 1) == (5, None)
        assert validate_positive_int('12', 1) == (12, None)

    def test_missing_uses_default(self):
        assert validate_positive_int(None, 7) == (7, None)

    def test_invalid(self):
        value, error = validate_positive_int('abc', 7, field_name='trials')
        assert value == 7
        assert 'trials' in error

    def test_non_positive(self):
        assert validate_positive_int(0, 3)[1] is not None
        assert validate_positive_int(-2, 3)[1] is not None

    def test_rejects_bool_and_fractional(self):
        assert validate_positive_int(True, 3)[1] is not None
        assert validate_positive_int(2.5, 3)[1] is not None

    def test_capped(self):
        value, error = validate_positive_int(500, 1, max_value=100)
        assert value == 100
        assert 'maximum' in error


class TestValidateSeed:
    """Unsigned 64-bit seeds."""

    def test_range(self):
        assert validate_seed(0, 1) == (0, None)
        assert validate_seed(2 ** 64 - 1, 1) == (2 ** 64 - 1, None)
        assert validate_seed(2 ** 64, 1)[1] is not None
        assert validate_seed(-1, 1)[1] is not None

    def test_default(self):
        assert validate_seed(None, 42) == (42, None)


class TestValidateRealRange:
    """Bounded reals."""

    def test_inclusive_bounds(self):
        assert validate_real_range(0.0, None, 0.0, 1.0) == (0.0, None)
        assert validate_real_range(1.0, None, 0.0, 1.0) == (1.0, None)

    def test_exclusive_low(self):
        value, error = validate_real_range(0.0, None, 0.0, 1.0, 'epsilon', low_inclusive=False)
        assert value is None
        assert '(0.0, 1.0]' in error

    def test_open_interval(self):
        value, error = validate_real_range(1.0, None, 0.0, 1.0, 'delta', low_inclusive=False, high_inclusive=False)
        assert value is None
        assert error == 'delta must be in (0.0, 1.0)'
        assert validate_real_range(0.999, None, 0.0, 1.0, low_inclusive=False, high_inclusive=False) == (0.999, None)

    def test_not_a_number(self):
        assert validate_real_range('x', 0.5, 0.0, 1.0)[1] is not None
        assert validate_real_range(False, 0.5, 0.0, 1.0)[1] is not None


class TestValidateSchedule:
    """Sample-size schedules."""

    def test_valid(self):
        assert validate_schedule([10, 20, 40]) == ([10, 20, 40], None)

    def test_must_increase(self):
        assert validate_schedule([10, 10])[1] == "m_schedule must be strictly increasing"
        assert validate_schedule([20, 10])[1] is not None

    def test_must_be_non_empty_list(self):
        assert validate_schedule([])[1] is not None
        assert validate_schedule(5)[1] is not None

    def test_entries_must_be_positive(self):
        assert validate_schedule([0, 5])[1] is not None


class TestValidateStringAndEnum:
    """String and choice fields."""

    def test_string(self):
        assert validate_string_field('  run  ', 'experiment') == ('run', None)
        assert validate_string_field(None, 'experiment', allow_empty=False)[1] == "experiment is required"
        assert validate_string_field('', 'experiment', allow_empty=False)[1] == "experiment cannot be empty"
        assert validate_string_field(3, 'experiment')[1] == "experiment must be a string"

    def test_string_truncated(self):
        value, error = validate_string_field('abcdef', 'name', max_length=3)
        assert value == 'abc'
        assert error is not None

    def test_enum(self):
        allowed = ['csv', 'json']
        assert validate_enum_field('JSON', 'format', allowed) == ('json', None)
        assert validate_enum_field('JSON', 'format', allowed, case_sensitive=True)[1] is not None
        assert validate_enum_field(None, 'format', allowed)[1] == "format is required"
