# backend/utils/validators.py - Argument Validation and Error Types
import math
import logging
from typing import Any, Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

INFINITY_TOKENS = ('inf', '+inf', 'infinity', '∞')


class ValidationError(Exception):
    """Custom validation error with field context"""
    def __init__(self, message: str, field: str = None):
        self.message = message
        self.field = field
        super().__init__(message)

    def to_dict(self) -> dict:
        return {'error': type(self).__name__, 'message': self.message, 'field': self.field}


class DomainMismatchError(ValidationError):
    """Two simple functions do not share the same atom list"""


class OutOfDefinitionError(ValidationError):
    """Index pair outside the range where a quasi-norm is defined"""


class UsageError(ValidationError):
    """Bad command-line or suite request"""


class ParseError(ValidationError):
    """Malformed or schema-violating input document"""
    def __init__(self, message: str, field: str = None, line: int = None, column: int = None):
        self.line = line
        self.column = column
        super().__init__(message, field)

    def __str__(self) -> str:
        location = []
        if self.line is not None:
            location.append(f"line {self.line}")
            if self.column is not None:
                location.append(f"column {self.column}")
        if self.field:
            location.append(f"field '{self.field}'")
        if not location:
            return self.message
        return f"{self.message} ({', '.join(location)})"


def parse_index_value(raw: Any, field: str = 'index') -> float:
    """Parse a number or the token 'inf' into a float"""
    if isinstance(raw, bool):
        raise ValidationError(f"{field} must be a number or 'inf'", field)

    if isinstance(raw, (int, float)):
        value = float(raw)
    elif isinstance(raw, str):
        token = raw.strip().lower()
        if token in INFINITY_TOKENS:
            return math.inf
        try:
            value = float(token)
        except ValueError:
            raise ValidationError(f"{field} must be a number or 'inf', got {raw!r}", field)
    else:
        raise ValidationError(f"{field} must be a number or 'inf'", field)

    if math.isnan(value):
        raise ValidationError(f"{field} cannot be NaN", field)
    return value


def parse_index_list(raw: str, field: str = 'index list') -> List[float]:
    """Parse a comma separated list such as '1,2.5,inf'"""
    if raw is None or not raw.strip():
        raise ValidationError(f"{field} cannot be empty", field)

    values = [parse_index_value(part, field) for part in raw.split(',') if part.strip()]
    if not values:
        raise ValidationError(f"{field} cannot be empty", field)
    return values


def validate_lorentz_exponent(value: float, field: str, allow_infinite: bool = True) -> float:
    """Exponents live in (0, inf]; finite-only callers pass allow_infinite=False"""
    value = parse_index_value(value, field)
    if value <= 0:
        raise ValidationError(f"{field} must be positive, got {value}", field)
    if not allow_infinite and math.isinf(value):
        raise ValidationError(f"{field} must be finite", field)
    return value


def validate_nonnegative(value: float, field: str) -> float:
    """Finite nonnegative real"""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{field} must be a number", field)
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise ValidationError(f"{field} must be finite", field)
    if value < 0:
        raise ValidationError(f"{field} must be nonnegative, got {value}", field)
    return value


def validate_strictly_increasing(values: Sequence[float], names: Sequence[str]) -> None:
    """Raise when an ordering precondition such as p1 < p < p2 is violated"""
    for (left, left_name), (right, right_name) in zip(zip(values, names), zip(values[1:], names[1:])):
        if not left < right:
            raise ValidationError(
                f"Expected {' < '.join(names)}, but {left_name}={left} is not below {right_name}={right}",
                right_name
            )


def validate_range_pair(pair: Iterable[float], field: str, minimum: float = 0.0) -> Tuple[float, float]:
    """Validate a (low, high) pair with minimum < low <= high"""
    try:
        low, high = (float(x) for x in pair)
    except (TypeError, ValueError):
        raise ValidationError(f"{field} must be a (low, high) pair", field)

    if not (math.isfinite(low) and math.isfinite(high)):
        raise ValidationError(f"{field} bounds must be finite", field)
    if low <= minimum:
        raise ValidationError(f"{field} low bound must exceed {minimum}", field)
    if low > high:
        raise ValidationError(f"{field} is empty: low {low} exceeds high {high}", field)
    return low, high


def validate_int_range(pair: Iterable[int], field: str, minimum: int = 1) -> Tuple[int, int]:
    """Validate an inclusive integer range"""
    try:
        low, high = (int(x) for x in pair)
    except (TypeError, ValueError):
        raise ValidationError(f"{field} must be a (low, high) pair of integers", field)

    if low < minimum or low > high:
        raise ValidationError(f"{field} must satisfy {minimum} <= low <= high", field)
    return low, high


def validate_seed(seed: Any, field: str = 'seed') -> int:
    """Seeds are 64-bit unsigned integers"""
    if isinstance(seed, bool):
        raise ValidationError("Seed must be an integer", field)
    try:
        seed = int(seed)
    except (TypeError, ValueError):
        raise ValidationError("Seed must be an integer", field)

    if seed < 0 or seed >= 2 ** 64:
        raise ValidationError("Seed must fit in 64 unsigned bits", field)
    return seed


def validate_positive_int(value: Any, field: str) -> int:
    if isinstance(value, bool):
        raise ValidationError(f"{field} must be a positive integer", field)
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{field} must be a positive integer", field)

    if value < 1:
        raise ValidationError(f"{field} must be a positive integer", field)
    return value


def require_choice(value: str, choices: Iterable[str], field: str) -> str:
    choices = list(choices)
    if value not in choices:
        logger.warning(f"Rejected {field}={value!r}")
        raise UsageError(f"Invalid {field} {value!r}. Must be one of: {', '.join(choices)}", field)
    return value
