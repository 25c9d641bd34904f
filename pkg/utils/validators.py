"""Input validation utilities for experiment configs.

Each validator returns ``(validated_value, error_message)``; the message is
None when validation succeeds, so callers can collect every problem of a
config file before rejecting it.
"""

from typing import Any, List, Optional, Sequence, Tuple


def validate_positive_int(
    value: Any,
    default: Optional[int],
    max_value: int = 10 ** 9,
    field_name: str = "value"
) -> Tuple[Optional[int], Optional[str]]:
    """Validate a positive integer.

    Args:
        value: Raw value (int or numeric string); None selects the default
        default: Value returned when value is None or invalid
        max_value: Maximum allowed value
        field_name: Name of field for error messages

    Returns:
        Tuple of (validated_value, error_message)
    """
    if value is None or value == '':
        return default, None
    if isinstance(value, bool):
        return default, f"Invalid {field_name}: must be an integer"
    try:
        num = int(value)
        if isinstance(value, float) and num != value:
            raise ValueError(value)
    except (ValueError, TypeError):
        return default, f"Invalid {field_name}: must be an integer"

    if num < 1:
        return default, f"{field_name} must be positive"

    if num > max_value:
        return max_value, f"{field_name} exceeds maximum {max_value}"

    return num, None


def validate_seed(value: Any, default: int, field_name: str = "seed") -> Tuple[int, Optional[str]]:
    """Validate an unsigned 64-bit seed."""
    if value is None or value == '':
        return default, None
    try:
        seed = int(value)
    except (ValueError, TypeError):
        return default, f"Invalid {field_name}: must be an integer"
    if not 0 <= seed < 2 ** 64:
        return default, f"{field_name} must be in [0, 2**64)"
    return seed, None


def validate_real_range(
    value: Any,
    default: Optional[float],
    low: float,
    high: float,
    field_name: str = "value",
    low_inclusive: bool = True,
    high_inclusive: bool = True
) -> Tuple[Optional[float], Optional[str]]:
    """Validate a real number in ``[low, high]``; either end may be open."""
    if value is None or value == '':
        return default, None
    if isinstance(value, bool):
        return default, f"Invalid {field_name}: must be a number"
    try:
        num = float(value)
    except (ValueError, TypeError):
        return default, f"Invalid {field_name}: must be a number"

    too_low = num < low if low_inclusive else num <= low
    too_high = num > high if high_inclusive else num >= high
    if too_low or too_high:
        opening = '[' if low_inclusive else '('
        closing = ']' if high_inclusive else ')'
        return default, f"{field_name} must be in {opening}{low}, {high}{closing}"

    return num, None


def validate_schedule(
    value: Any,
    field_name: str = "m_schedule"
) -> Tuple[Optional[List[int]], Optional[str]]:
    """Validate a non-empty, strictly increasing list of positive integers."""
    if not isinstance(value, (list, tuple)) or not value:
        return None, f"{field_name} must be a non-empty list"
    schedule: List[int] = []
    for item in value:
        num, error = validate_positive_int(item, None, field_name=field_name)
        if error or num is None:
            return None, error or f"Invalid {field_name}"
        schedule.append(num)
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        return None, f"{field_name} must be strictly increasing"
    return schedule, None


def validate_string_field(
    value: Any,
    field_name: str,
    max_length: int = 100,
    allow_empty: bool = True
) -> Tuple[Optional[str], Optional[str]]:
    """Validate string field.

    Args:
        value: String value to validate
        field_name: Name of field for error messages
        max_length: Maximum allowed length
        allow_empty: Whether empty strings are allowed

    Returns:
        Tuple of (validated_value, error_message)
    """
    if value is None:
        if allow_empty:
            return None, None
        return None, f"{field_name} is required"

    if not isinstance(value, str):
        return None, f"{field_name} must be a string"

    value = value.strip()

    if not value and not allow_empty:
        return None, f"{field_name} cannot be empty"

    if len(value) > max_length:
        return value[:max_length], f"{field_name} truncated to {max_length} characters"

    return value, None


def validate_enum_field(
    value: Any,
    field_name: str,
    allowed_values: Sequence[str],
    case_sensitive: bool = False
) -> Tuple[Optional[str], Optional[str]]:
    """Validate enum/choice field.

    Args:
        value: String value to validate
        field_name: Name of field for error messages
        allowed_values: Allowed values
        case_sensitive: Whether comparison is case-sensitive

    Returns:
        Tuple of (validated_value, error_message)
    """
    if value is None:
        return None, f"{field_name} is required"

    if not isinstance(value, str):
        return None, f"Invalid {field_name}: must be one of {', '.join(allowed_values)}"

    value = value.strip()

    if case_sensitive:
        if value in allowed_values:
            return value, None
    else:
        value_lower = value.lower()
        for allowed in allowed_values:
            if value_lower == allowed.lower():
                return allowed, None

    return None, f"Invalid {field_name}: must be one of {', '.join(allowed_values)}"
