# backend/utils/extended_real.py - Extended Nonnegative Reals
"""
Values in [0, inf] with the arithmetic the norm code needs.

Floats already carry +inf, but 0 * inf and inf - inf turn into NaN silently.
ExtReal refuses the undefined products instead, and the power helper below
saturates to inf rather than raising OverflowError. Sums of powers that would
underflow term by term are accumulated in logarithms with log_sum_exp.
"""

import math
from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np

from utils.validators import ValidationError, parse_index_value

Number = Union[int, float]


def safe_pow(base: float, exponent: float) -> float:
    """base ** exponent for base >= 0, saturating to inf on overflow"""
    if base == 0.0:
        return 0.0 if exponent > 0 else math.inf
    if math.isinf(base):
        return math.inf if exponent > 0 else 0.0
    try:
        return math.pow(base, exponent)
    except OverflowError:
        return math.inf


def safe_exp(exponent: float) -> float:
    """exp(exponent), saturating to inf on overflow"""
    try:
        return math.exp(exponent)
    except OverflowError:
        return math.inf


def log_sum_exp(logs: Sequence[float]) -> float:
    """ln(sum exp(logs)) without leaving double range; -inf for an empty sum"""
    if not logs:
        return -math.inf
    values = np.asarray(logs, dtype=float)
    top = float(values.max())
    if math.isinf(top):
        return top
    return top + math.log(float(np.sum(np.exp(values - top))))


def format_extended(value: float) -> Union[float, str]:
    """JSON spelling: infinity is the string 'inf'"""
    return 'inf' if math.isinf(value) else value


def parse_extended(raw: Any, field: str = 'value') -> float:
    value = parse_index_value(raw, field)
    if value < 0:
        raise ValidationError(f"{field} must be nonnegative", field)
    return value


@dataclass(frozen=True, order=True)
class ExtReal:
    """A value in [0, inf]"""
    value: float = 0.0

    def __post_init__(self):
        raw = self.value
        if isinstance(raw, ExtReal):
            raw = raw.value
        value = float(raw)
        if math.isnan(value):
            raise ValidationError("Extended real cannot be NaN", 'value')
        if value < 0:
            raise ValidationError(f"Extended real must be nonnegative, got {value}", 'value')
        object.__setattr__(self, 'value', value)

    @classmethod
    def infinity(cls) -> 'ExtReal':
        return cls(math.inf)

    @classmethod
    def zero(cls) -> 'ExtReal':
        return cls(0.0)

    @classmethod
    def from_json(cls, raw: Any) -> 'ExtReal':
        return cls(parse_extended(raw))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: Union['ExtReal', Number]) -> 'ExtReal':
        return self.__class__(self.value + _coerce(other))

    __radd__ = __add__

    def __mul__(self, other: Union['ExtReal', Number]) -> 'ExtReal':
        factor = _coerce(other)
        if (factor == 0.0 and self.is_infinite) or (math.isinf(factor) and self.is_zero):
            raise ValidationError("0 * inf is undefined for extended reals", 'value')
        return self.__class__(self.value * factor)

    __rmul__ = __mul__

    def __pow__(self, exponent: Number) -> 'ExtReal':
        if exponent <= 0:
            raise ValidationError("Extended real powers need a positive exponent", 'exponent')
        return self.__class__(safe_pow(self.value, float(exponent)))

    def to_json(self) -> Union[float, str]:
        return format_extended(self.value)

    def __str__(self) -> str:
        return 'inf' if self.is_infinite else repr(self.value)


def _coerce(other: Union[ExtReal, Number]) -> float:
    if isinstance(other, ExtReal):
        return other.value
    if isinstance(other, bool) or not isinstance(other, (int, float)):
        raise TypeError(f"Cannot combine ExtReal with {type(other).__name__}")
    if math.isnan(other) or other < 0:
        raise ValidationError("Extended real arithmetic needs nonnegative operands", 'value')
    return float(other)


def to_jsonable(value: Any) -> Any:
    """Recursively spell non-finite floats and ExtReals the way reports do"""
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    if isinstance(value, ExtReal):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    return value
