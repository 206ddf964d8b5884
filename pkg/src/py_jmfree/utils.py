from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, TypeVar, Union

Rational = Union[int, Fraction]
T = TypeVar("T")

SIGNIFICANT_DIGITS = 12


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n(n-1)...(n-k+1); zero once a factor hits zero, 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    result = 1
    for i in range(k):
        factor = n - i
        if factor <= 0:
            return 0
        result *= factor
    return result


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    """Catalan numbers by the convolution recursion C_{m+1} = sum C_i C_{m-i}."""
    if m <= 0:
        return 1
    return sum(catalan(i) * catalan(m - 1 - i) for i in range(m))


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float) -> float:
    """Round to the report precision so that JSON output is reproducible."""
    return float(format(value, f".{SIGNIFICANT_DIGITS}g"))


def cyclic_pairs(length: int) -> Iterable[Tuple[int, int]]:
    """Positions (i, i+1) on {1..length} with the convention that length+1 is 1."""
    for i in range(1, length + 1):
        yield i, i % length + 1


def rotate_left(items: Sequence[T], shift: int) -> List[T]:
    if not items:
        return []
    shift %= len(items)
    return list(items[shift:]) + list(items[:shift])


def is_strictly_shrinking(values: Sequence[float], tolerance: float = 0.0) -> bool:
    """True when each value is below its predecessor, zeros being allowed to stay zero."""
    for previous, current in zip(values, values[1:]):
        if previous <= tolerance:
            if current > tolerance:
                return False
            continue
        if not current < previous:
            return False
    return True


__all__ = [
    "Rational",
    "SIGNIFICANT_DIGITS",
    "catalan",
    "cyclic_pairs",
    "falling_factorial",
    "format_float",
    "format_rational",
    "is_strictly_shrinking",
    "rotate_left",
]
