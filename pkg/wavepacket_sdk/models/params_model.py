"""
Wave packet parameter models

PacketParams is the tuple (d, hbar, A, B, a, eta) that defines a family of
wave packets. PolarForm and AdmissibilityReport are the results of the
matrix checks in ``core.linalg``. All arrays held by these models are
read-only copies, so instances can be shared between threads.
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..core.exceptions import ValidationError
from ..core.utils import complex_to_pair, pair_to_complex


def _frozen_array(values, dtype, name: str, shape) -> np.ndarray:
    try:
        array = np.array(values, dtype=dtype)
    except (TypeError, ValueError) as e:
        raise ValidationError(
            f"{name} is not numeric",
            field_name=name,
            expected_type=f'{dtype.__name__} array of shape {shape}',
            inner_exception=e
        )
    if array.shape != shape:
        raise ValidationError(
            f"{name} has shape {array.shape}, expected {shape}",
            field_name=name,
            expected_type=str(shape),
            actual_value=array.shape
        )
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} has non-finite entries", field_name=name)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class AdmissibilityReport:
    """Residuals of the two admissibility identities."""
    ok: bool
    residual1: float
    residual2: float
    tolerance: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ok': self.ok,
            'residual1': self.residual1,
            'residual2': self.residual2,
            'tolerance': self.tolerance,
        }


@dataclass(frozen=True, eq=False)
class PolarForm:
    """
    Polar decomposition A = |A| U with |A| = sqrt(A A*) Hermitian positive
    definite and U unitary.
    """
    absA: np.ndarray
    U: np.ndarray
    singular_values: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.absA @ self.U


@dataclass(frozen=True, eq=False)
class PacketParams:
    """
    Parameters of a wave-packet family.

    Attributes:
        d: Dimension
        hbar: Semiclassical scale, strictly positive
        A, B: Complex d x d matrices, expected to satisfy the admissibility identities
        a: Real position centre
        eta: Real momentum centre

    Admissibility is not enforced on construction so that inadmissible pairs
    can be loaded and reported on; operations that need it call
    ``core.linalg.require_admissible``.
    """
    d: int
    hbar: float
    A: np.ndarray
    B: np.ndarray
    a: np.ndarray = field(default=None)
    eta: np.ndarray = field(default=None)

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise ValidationError(
                f"Dimension d must be a positive integer, got {self.d!r}",
                field_name='d',
                expected_type='int >= 1',
                actual_value=self.d
            )
        d = int(self.d)
        try:
            hbar = float(self.hbar)
        except (TypeError, ValueError) as e:
            raise ValidationError("hbar must be a real number", field_name='hbar', inner_exception=e)
        if not np.isfinite(hbar) or hbar <= 0:
            raise ValidationError(
                f"hbar must be strictly positive, got {self.hbar!r}",
                field_name='hbar',
                expected_type='float > 0',
                actual_value=self.hbar
            )

        a = np.zeros(d) if self.a is None else self.a
        eta = np.zeros(d) if self.eta is None else self.eta

        object.__setattr__(self, 'd', d)
        object.__setattr__(self, 'hbar', hbar)
        object.__setattr__(self, 'A', _frozen_array(self.A, complex, 'A', (d, d)))
        object.__setattr__(self, 'B', _frozen_array(self.B, complex, 'B', (d, d)))
        object.__setattr__(self, 'a', _frozen_array(a, float, 'a', (d,)))
        object.__setattr__(self, 'eta', _frozen_array(eta, float, 'eta', (d,)))

    @cached_property
    def polar(self) -> PolarForm:
        """Polar form of A, computed once per instance."""
        from ..core.linalg import polar_decompose
        return polar_decompose(self.A)

    @property
    def is_at_origin(self) -> bool:
        return not np.any(self.a) and not np.any(self.eta)

    def with_hbar(self, hbar: float) -> 'PacketParams':
        return PacketParams(self.d, hbar, self.A, self.B, self.a, self.eta)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize to the params JSON schema."""
        return {
            'd': self.d,
            'hbar': self.hbar,
            'A': [[complex_to_pair(v) for v in row] for row in self.A],
            'B': [[complex_to_pair(v) for v in row] for row in self.B],
            'a': [float(v) for v in self.a],
            'eta': [float(v) for v in self.eta],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PacketParams':
        """
        Build from the params JSON schema. ``hbar`` defaults to 1 and
        ``a``/``eta`` default to zero vectors when absent.
        """
        if not isinstance(data, dict):
            raise ValidationError(
                "Params document must be a JSON object",
                field_name='params',
                expected_type='object'
            )
        for key in ('d', 'A', 'B'):
            if key not in data:
                raise ValidationError(f"Params document is missing '{key}'", field_name='params', expected_type=key)

        return cls(
            d=data['d'],
            hbar=data.get('hbar', 1.0),
            A=_decode_matrix(data['A'], 'A'),
            B=_decode_matrix(data['B'], 'B'),
            a=data.get('a'),
            eta=data.get('eta'),
        )

    @classmethod
    def from_json(cls, text: str) -> 'PacketParams':
        return cls.from_dict(json.loads(text))


def _decode_matrix(rows: Sequence[Sequence[Sequence[float]]], name: str) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ValidationError(
            f"{name} must be a list of rows of [re, im] pairs",
            field_name=name,
            expected_type='[[[re, im], ...], ...]'
        )
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValidationError(f"{name} has ragged rows", field_name=name, actual_value=sorted(widths))
    return np.array([[pair_to_complex(entry) for entry in row] for row in rows], dtype=complex)
