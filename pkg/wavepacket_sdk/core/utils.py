"""
Core Utilities for the Wave Packet SDK

Helpers shared across services: the coefficient comparison metric, complex
number encoding for JSON, and parsing of the compact command-line specs for
grids and multi-indices.
"""

from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import ValidationError

FLOAT_FORMAT = '%.17g'


def max_abs(values) -> float:
    """Largest entry modulus of an array-like, 0.0 when empty."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def relative_discrepancy(first: Sequence[complex], second: Sequence[complex]) -> float:
    """
    Max coefficient difference scaled by the larger coefficient magnitude.

    Returns ``max|c1 - c2| / (1 + max(|c1|, |c2|))`` so that constant-size
    coefficients are compared absolutely and large ones relatively.
    """
    lhs = np.asarray(first, dtype=complex)
    rhs = np.asarray(second, dtype=complex)
    if lhs.size == 0 and rhs.size == 0:
        return 0.0
    scale = 1.0 + max(max_abs(lhs), max_abs(rhs))
    return max_abs(lhs - rhs) / scale


def complex_to_pair(value: complex) -> List[float]:
    """Encode a complex number as ``[re, im]``."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair: Sequence[float]) -> complex:
    """
    Decode ``[re, im]`` into a complex number.

    Raises:
        ValidationError: If the value is not a two-element numeric array
    """
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValidationError(
            "Complex entries must be two-element arrays [re, im]",
            field_name='complex entry',
            expected_type='[float, float]',
            actual_value=pair
        )
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError) as e:
        raise ValidationError(
            f"Non-numeric complex entry: {pair!r}",
            field_name='complex entry',
            inner_exception=e
        )


def parse_grid_spec(spec: str) -> List[Tuple[float, float, int]]:
    """
    Parse ``"min:max:count[,min:max:count...]"`` into per-dimension axes.

    Args:
        spec: Grid string such as "-2:2:41,0:1:11"

    Returns:
        List of (min, max, count) tuples, one per dimension
    """
    axes = []
    for chunk in spec.split(','):
        parts = chunk.strip().split(':')
        if len(parts) != 3:
            raise ValidationError(
                f"Grid axis must be min:max:count, got {chunk!r}",
                field_name='grid',
                expected_type='min:max:count'
            )
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as e:
            raise ValidationError(
                f"Non-numeric grid axis {chunk!r}",
                field_name='grid',
                inner_exception=e
            )
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValidationError(
                f"Grid bounds must be finite, got {chunk!r}",
                field_name='grid',
                actual_value=chunk
            )
        if count < 1:
            raise ValidationError(
                f"Grid axis needs at least one point, got {count}",
                field_name='grid',
                actual_value=count
            )
        if count == 1 and lo != hi:
            raise ValidationError(
                f"Single-point axis must have min == max, got {chunk!r}",
                field_name='grid'
            )
        axes.append((lo, hi, count))
    return axes


def parse_index(spec: str) -> Tuple[int, ...]:
    """Parse ``"i,j,..."`` into a tuple of nonnegative integers."""
    try:
        components = tuple(int(part) for part in spec.split(','))
    except ValueError as e:
        raise ValidationError(
            f"Multi-index must be comma-separated integers, got {spec!r}",
            field_name='k',
            inner_exception=e
        )
    if any(c < 0 for c in components):
        raise ValidationError(
            f"Multi-index components must be nonnegative, got {spec!r}",
            field_name='k',
            actual_value=spec
        )
    return components
