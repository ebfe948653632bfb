"""
Multi-index model

Nonnegative integer vectors used to label polynomials, basis functions and
monomial exponents, together with the deterministic graded-lexicographic
enumeration used for every flat ordering in the SDK.
"""

import json
import math
import operator
from typing import Iterable, Iterator, List, Tuple

from scipy.special import comb

from ..core.exceptions import CapacityError, ValidationError

DEFAULT_FACTORIAL_CAP = 20


class MultiIndex(tuple):
    """
    Immutable vector k of nonnegative integers.

    Behaves as a plain tuple for hashing and comparison, so dictionaries keyed
    by MultiIndex accept ordinary tuples as lookup keys.
    """

    def __new__(cls, components: Iterable[int]) -> 'MultiIndex':
        raw = tuple(components)
        if not raw:
            raise ValidationError(
                "Multi-index must have at least one component",
                field_name='k',
                expected_type='nonempty integer vector'
            )
        try:
            if any(isinstance(v, bool) for v in raw):
                raise TypeError("booleans are not multi-index components")
            values = tuple(operator.index(v) for v in raw)
        except TypeError as e:
            raise ValidationError(
                f"Multi-index components must be integers, got {raw!r}",
                field_name='k',
                expected_type='nonnegative int',
                inner_exception=e
            )
        if any(v < 0 for v in values):
            raise ValidationError(
                f"Multi-index components must be nonnegative, got {values!r}",
                field_name='k',
                expected_type='nonnegative int',
                actual_value=values
            )
        return super().__new__(cls, values)

    @classmethod
    def zero(cls, d: int) -> 'MultiIndex':
        return cls((0,) * d)

    @classmethod
    def unit(cls, d: int, l: int) -> 'MultiIndex':
        """The unit vector e_l (1-based)."""
        return cls.zero(d).add_unit(l)

    @classmethod
    def parse(cls, text: str) -> 'MultiIndex':
        """Parse ``"[1,0]"``, ``"1,0"`` or ``"1_0"``."""
        cleaned = text.strip().strip('[]').replace('_', ',')
        try:
            return cls(int(part) for part in cleaned.split(','))
        except ValueError as e:
            raise ValidationError(
                f"Cannot parse multi-index from {text!r}",
                field_name='k',
                inner_exception=e
            )

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def order(self) -> int:
        """|k| = sum of components."""
        return sum(self)

    def factorial(self, cap: int = DEFAULT_FACTORIAL_CAP) -> int:
        """
        k! = product of component factorials, as an exact integer.

        Raises:
            CapacityError: If |k| exceeds ``cap``
        """
        if self.order > cap:
            raise CapacityError(
                f"Factorial requested for order {self.order}, above the supported cap {cap}",
                requested=self.order,
                limit=cap
            )
        return math.prod(math.factorial(c) for c in self)

    def add_unit(self, l: int) -> 'MultiIndex':
        """Return k + e_l for 1 <= l <= d."""
        self._check_direction(l)
        components = list(self)
        components[l - 1] += 1
        return MultiIndex(components)

    def sub_unit(self, l: int) -> 'MultiIndex':
        """Return k - e_l; requires k_l > 0."""
        self._check_direction(l)
        if self[l - 1] == 0:
            raise ValidationError(
                f"Cannot subtract e_{l} from {tuple(self)}",
                field_name='l',
                actual_value=l
            )
        components = list(self)
        components[l - 1] -= 1
        return MultiIndex(components)

    def parent(self) -> Tuple['MultiIndex', int]:
        """
        The predecessor used by recursive constructions: k - e_l for the
        smallest l with k_l > 0, together with that l.
        """
        for position, value in enumerate(self, start=1):
            if value > 0:
                return self.sub_unit(position), position
        raise ValidationError("The zero multi-index has no parent", field_name='k')

    def _check_direction(self, l: int):
        if isinstance(l, bool) or not isinstance(l, int) or not 1 <= l <= len(self):
            raise ValidationError(
                f"Direction l must satisfy 1 <= l <= {len(self)}, got {l!r}",
                field_name='l',
                expected_type=f'int in [1, {len(self)}]',
                actual_value=l
            )

    @property
    def label(self) -> str:
        """Flat label such as ``1_0`` for CSV headers."""
        return '_'.join(str(c) for c in self)

    def to_key(self) -> str:
        """JSON object key such as ``[1,0]``."""
        return json.dumps(list(self), separators=(',', ':'))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Graded lexicographic key with component 1 most significant."""
        return (self.order, tuple(-c for c in self))

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)!r})"


def order_and_factorial(k: MultiIndex, cap: int = DEFAULT_FACTORIAL_CAP) -> Tuple[int, int]:
    """Return (|k|, k!) with the factorial as an exact integer."""
    k = MultiIndex(k)
    return k.order, k.factorial(cap)


def add_unit(k: MultiIndex, l: int) -> MultiIndex:
    return MultiIndex(k).add_unit(l)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    # first component descending, which is lexicographically descending order
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def enumerate_upto(d: int, N: int) -> List[MultiIndex]:
    """
    All multi-indices of dimension d with |k| <= N in graded lex order.

    Example: d=2, N=1 gives [(0,0), (1,0), (0,1)].
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValidationError(f"Dimension must be a positive integer, got {d!r}", field_name='d')
    if isinstance(N, bool) or not isinstance(N, int) or N < 0:
        raise ValidationError(f"Order must be a nonnegative integer, got {N!r}", field_name='N')

    return [
        MultiIndex(components)
        for order in range(N + 1)
        for components in _compositions(order, d)
    ]


def enumeration_size(d: int, N: int) -> int:
    """C(d+N, d), the number of multi-indices with |k| <= N."""
    return int(comb(d + N, d, exact=True))
