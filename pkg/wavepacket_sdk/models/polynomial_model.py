"""
Polynomial models

SparsePoly is a complex multivariate polynomial stored as a map from exponent
multi-index to coefficient, tagged with the coordinate frame it lives in.
PolyTable is the family p_k for every |k| <= K produced by one construction.

Frames:
    Y_FRAME  variable y = |A|^{-1} x / sqrt(hbar)
    X_FRAME  variable x
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import TableIntegrityError, ValidationError
from ..core.utils import relative_discrepancy
from .multi_index import MultiIndex, enumerate_upto

DEFAULT_PRUNE_REL = 1e-14


class Frame(Enum):
    """Coordinate frame of a polynomial."""
    X_FRAME = "x"
    Y_FRAME = "y"


class ConstructionMethod(Enum):
    """How a PolyTable was built."""
    RECURRENCE = "recurrence"
    GENERATING = "generating"
    RODRIGUES = "rodrigues"
    LADDER = "ladder"


def _canonical(terms: Mapping[Tuple[int, ...], complex], prune_rel: float) -> Mapping[MultiIndex, complex]:
    if not terms:
        return MappingProxyType({})
    largest = max(abs(c) for c in terms.values())
    threshold = prune_rel * largest
    kept = {
        MultiIndex(exp): complex(c)
        for exp, c in terms.items()
        if c != 0 and abs(c) >= threshold
    }
    ordered = sorted(kept, key=MultiIndex.sort_key)
    return MappingProxyType({exp: kept[exp] for exp in ordered})


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """
    Immutable sparse polynomial in d variables.

    Coefficients below ``prune_rel`` times the largest coefficient magnitude
    are dropped after every operation; terms are kept in graded-lex order.
    Build instances with ``from_terms`` or the named constructors.
    """
    d: int
    frame: Frame
    terms: Mapping[MultiIndex, complex]
    prune_rel: float = field(default=DEFAULT_PRUNE_REL, repr=False)

    @classmethod
    def from_terms(
        cls,
        d: int,
        frame: Frame,
        terms: Mapping[Tuple[int, ...], complex],
        prune_rel: float = DEFAULT_PRUNE_REL
    ) -> 'SparsePoly':
        for exp in terms:
            if len(exp) != d:
                raise ValidationError(
                    f"Exponent {tuple(exp)} does not have dimension {d}",
                    field_name='exp',
                    expected_type=f'{d} components'
                )
        return cls(d, frame, _canonical(terms, prune_rel), prune_rel)

    @classmethod
    def zero(cls, d: int, frame: Frame, prune_rel: float = DEFAULT_PRUNE_REL) -> 'SparsePoly':
        return cls(d, frame, MappingProxyType({}), prune_rel)

    @classmethod
    def constant(cls, d: int, frame: Frame, value: complex = 1.0,
                 prune_rel: float = DEFAULT_PRUNE_REL) -> 'SparsePoly':
        return cls.from_terms(d, frame, {(0,) * d: value}, prune_rel)

    @classmethod
    def linear(cls, frame: Frame, coefficients: Sequence[complex], constant: complex = 0.0,
               prune_rel: float = DEFAULT_PRUNE_REL) -> 'SparsePoly':
        """The polynomial sum_j c_j v_j + constant."""
        coefficients = np.asarray(coefficients, dtype=complex)
        d = coefficients.shape[0]
        terms: Dict[Tuple[int, ...], complex] = {(0,) * d: constant}
        for j, c in enumerate(coefficients):
            exp = [0] * d
            exp[j] = 1
            terms[tuple(exp)] = c
        return cls.from_terms(d, frame, terms, prune_rel)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Largest exponent order; 0 for the zero polynomial."""
        return max((exp.order for exp in self.terms), default=0)

    def coefficient(self, exp: Iterable[int]) -> complex:
        return self.terms.get(tuple(exp), 0j)

    def max_coefficient(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def _like(self, terms: Mapping[Tuple[int, ...], complex]) -> 'SparsePoly':
        return SparsePoly.from_terms(self.d, self.frame, terms, self.prune_rel)

    def _check_compatible(self, other: 'SparsePoly'):
        if other.d != self.d or other.frame != self.frame:
            raise ValidationError(
                f"Incompatible polynomials: (d={self.d}, {self.frame.value}) "
                f"vs (d={other.d}, {other.frame.value})",
                field_name='other'
            )

    def __add__(self, other: 'SparsePoly') -> 'SparsePoly':
        self._check_compatible(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0j) + c
        return self._like(terms)

    def __neg__(self) -> 'SparsePoly':
        return self._like({exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other: 'SparsePoly') -> 'SparsePoly':
        return self + (-other)

    def __mul__(self, other) -> 'SparsePoly':
        if isinstance(other, SparsePoly):
            self._check_compatible(other)
            terms: Dict[Tuple[int, ...], complex] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    terms[exp] = terms.get(exp, 0j) + c1 * c2
            return self._like(terms)
        scalar = complex(other)
        return self._like({exp: scalar * c for exp, c in self.terms.items()})

    __rmul__ = __mul__

    def derivative(self, j: int, times: int = 1) -> 'SparsePoly':
        """Partial derivative (d/dv_j)^times, j 1-based."""
        if not 1 <= j <= self.d:
            raise ValidationError(f"Variable index must be in [1, {self.d}], got {j}", field_name='j')
        terms: Dict[Tuple[int, ...], complex] = {}
        for exp, c in self.terms.items():
            power = exp[j - 1]
            if power < times:
                continue
            factor = 1
            for step in range(times):
                factor *= power - step
            shifted = list(exp)
            shifted[j - 1] -= times
            terms[tuple(shifted)] = terms.get(tuple(shifted), 0j) + factor * c
        return self._like(terms)

    def directional_gradient(self, c: Sequence[complex]) -> 'SparsePoly':
        """<c, grad p> = sum_j conj(c_j) d_j p."""
        c = _as_vector(c, self.d, 'c')
        terms: Dict[Tuple[int, ...], complex] = {}
        for j in range(self.d):
            weight = np.conj(c[j])
            if weight == 0:
                continue
            for exp, coef in self.terms.items():
                power = exp[j]
                if power == 0:
                    continue
                shifted = list(exp)
                shifted[j] -= 1
                key = tuple(shifted)
                terms[key] = terms.get(key, 0j) + weight * power * coef
        return self._like(terms)

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Value at one point, terms accumulated in graded-lex order."""
        point = _as_vector(point, self.d, 'point')
        total = 0j
        for exp, coef in self.terms.items():
            total += coef * np.prod(point ** np.asarray(exp))
        return complex(total)

    def evaluate_many(self, points) -> np.ndarray:
        """Values at an (N, d) array of points."""
        points = np.asarray(points, dtype=complex)
        if points.ndim != 2 or points.shape[1] != self.d:
            raise ValidationError(
                f"Points must have shape (N, {self.d}), got {points.shape}",
                field_name='points'
            )
        if self.is_zero:
            return np.zeros(points.shape[0], dtype=complex)
        exps = np.array(list(self.terms.keys()), dtype=int)
        coefs = np.array(list(self.terms.values()), dtype=complex)
        monomials = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
        return monomials @ coefs

    def compose_linear(self, M, shift: Optional[Sequence[complex]] = None) -> 'SparsePoly':
        """
        Substitution q(v) = p(M v + shift).

        Powers of the d linear forms (M v + shift)_j are cached, so each
        term costs at most d polynomial products.
        """
        M = np.asarray(M, dtype=complex)
        if M.ndim == 0:
            M = M.reshape(1, 1)
        if M.shape != (self.d, self.d):
            raise ValidationError(
                f"M must be {self.d}x{self.d}, got {M.shape}",
                field_name='M'
            )
        shift = np.zeros(self.d, dtype=complex) if shift is None else _as_vector(shift, self.d, 'shift')

        # no pruning on intermediate powers
        forms = [
            SparsePoly.linear(self.frame, M[j, :], shift[j], prune_rel=0.0)
            for j in range(self.d)
        ]
        one = SparsePoly.constant(self.d, self.frame, 1.0, prune_rel=0.0)
        powers: List[List[SparsePoly]] = [[one] for _ in range(self.d)]

        def power(j: int, n: int) -> SparsePoly:
            cache = powers[j]
            while len(cache) <= n:
                cache.append(cache[-1] * forms[j])
            return cache[n]

        terms: Dict[Tuple[int, ...], complex] = {}
        for exp, coef in self.terms.items():
            product = one
            for j, n in enumerate(exp):
                if n:
                    product = product * power(j, n)
            for e, c in product.terms.items():
                terms[e] = terms.get(e, 0j) + coef * c
        return self._like(terms)

    def with_frame(self, frame: Frame) -> 'SparsePoly':
        return SparsePoly(self.d, frame, self.terms, self.prune_rel)

    def to_list(self) -> List[Dict[str, Any]]:
        return [
            {'exp': list(exp), 're': float(c.real), 'im': float(c.imag)}
            for exp, c in self.terms.items()
        ]

    @classmethod
    def from_list(cls, d: int, frame: Frame, items: Sequence[Mapping[str, Any]],
                  prune_rel: float = DEFAULT_PRUNE_REL) -> 'SparsePoly':
        terms: Dict[Tuple[int, ...], complex] = {}
        for item in items:
            try:
                exp = tuple(MultiIndex(item['exp']))
                value = complex(float(item['re']), float(item['im']))
            except (KeyError, TypeError, ValueError) as e:
                raise ValidationError(
                    f"Malformed polynomial term {item!r}",
                    field_name='term',
                    expected_type='{"exp": [...], "re": float, "im": float}',
                    inner_exception=e
                )
            terms[exp] = terms.get(exp, 0j) + value
        return cls.from_terms(d, frame, terms, prune_rel)

    def __repr__(self) -> str:
        return f"SparsePoly(d={self.d}, frame={self.frame.value}, terms={len(self.terms)}, degree={self.degree})"


def _as_vector(values, d: int, name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=complex).reshape(-1)
    if vector.shape != (d,):
        raise ValidationError(
            f"{name} must have dimension {d}, got {vector.shape[0]}",
            field_name=name,
            expected_type=f'{d}-vector',
            actual_value=vector.shape
        )
    return vector


def poly_eval(p: SparsePoly, point: Sequence[complex]) -> complex:
    return p.evaluate(point)


def directional_gradient(p: SparsePoly, c: Sequence[complex]) -> SparsePoly:
    return p.directional_gradient(c)


def compose_linear(p: SparsePoly, M, shift: Optional[Sequence[complex]] = None) -> SparsePoly:
    return p.compose_linear(M, shift)


def poly_discrepancy(p: SparsePoly, q: SparsePoly) -> float:
    """Coefficient metric max|c1 - c2| / (1 + max|c|) over the union of exponents."""
    exps = list(dict.fromkeys(list(p.terms) + list(q.terms)))
    return relative_discrepancy(
        [p.coefficient(e) for e in exps],
        [q.coefficient(e) for e in exps]
    )


@dataclass(frozen=True, eq=False)
class PolyTable:
    """
    The polynomials p_k for all |k| <= K from one construction.

    Entries cover enumerate_upto(d, K) exactly; each p_k has degree |k| and
    is not identically zero. ``params`` is None for tables read from disk.
    """
    d: int
    K: int
    frame: Frame
    method: ConstructionMethod
    entries: Mapping[MultiIndex, SparsePoly]
    params: Optional[Any] = field(default=None, repr=False)

    def __post_init__(self):
        expected = enumerate_upto(self.d, self.K)
        missing = [k for k in expected if k not in self.entries]
        if missing:
            raise TableIntegrityError(
                f"Table is missing {len(missing)} entr{'y' if len(missing) == 1 else 'ies'}, first {tuple(missing[0])}",
                index=tuple(missing[0])
            )
        if len(self.entries) != len(expected):
            expected_set = set(expected)
            extra = [k for k in self.entries if k not in expected_set]
            raise TableIntegrityError(
                f"Table has entries outside |k| <= {self.K}, first {tuple(extra[0])}",
                index=tuple(extra[0])
            )
        for k in expected:
            poly = self.entries[k]
            if poly.d != self.d or poly.frame != self.frame:
                raise TableIntegrityError(
                    f"Entry {tuple(k)} has dimension/frame ({poly.d}, {poly.frame.value})",
                    index=tuple(k)
                )
            if poly.is_zero:
                raise TableIntegrityError(f"Entry {tuple(k)} is identically zero", index=tuple(k))
            if poly.degree != k.order:
                raise TableIntegrityError(
                    f"Entry {tuple(k)} has degree {poly.degree}, expected {k.order}",
                    index=tuple(k)
                )
        object.__setattr__(
            self, 'entries', MappingProxyType({MultiIndex(k): self.entries[k] for k in expected})
        )

    def __getitem__(self, k) -> SparsePoly:
        try:
            return self.entries[tuple(k)]
        except KeyError:
            raise ValidationError(
                f"Multi-index {tuple(k)} is not in this table (d={self.d}, K={self.K})",
                field_name='k',
                actual_value=tuple(k)
            )

    def __contains__(self, k) -> bool:
        return tuple(k) in self.entries

    def indices(self) -> List[MultiIndex]:
        return list(self.entries.keys())

    def to_x_frame(self, params=None) -> 'PolyTable':
        """P_k(x) = p_k(|A|^{-1} x / sqrt(hbar)) for a y-frame table."""
        if self.frame == Frame.X_FRAME:
            return self
        params = params or self.params
        if params is None:
            raise ValidationError("Frame conversion needs the table's PacketParams", field_name='params')
        M = np.linalg.inv(params.polar.absA) / np.sqrt(params.hbar)
        entries = {
            k: p.compose_linear(M).with_frame(Frame.X_FRAME)
            for k, p in self.entries.items()
        }
        return PolyTable(self.d, self.K, Frame.X_FRAME, self.method, entries, params)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'method': self.method.value,
            'frame': self.frame.value,
            'K': self.K,
            'entries': {k.to_key(): p.to_list() for k, p in self.entries.items()},
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], params=None) -> 'PolyTable':
        """
        Parse the table JSON dump.

        Raises:
            ValidationError: On schema errors (unknown method/frame, bad keys)
            TableIntegrityError: When the parsed entries violate table invariants
        """
        if not isinstance(data, Mapping):
            raise ValidationError("Table document must be a JSON object", field_name='table')
        try:
            method = ConstructionMethod(data['method'])
            frame = Frame(data['frame'])
            K = data['K']
            raw_entries = data['entries']
        except KeyError as e:
            raise ValidationError(f"Table document is missing {e}", field_name=str(e))
        except ValueError as e:
            raise ValidationError(f"Unknown table tag: {e}", field_name='method/frame', inner_exception=e)
        if isinstance(K, bool) or not isinstance(K, int) or K < 0:
            raise ValidationError(f"K must be a nonnegative integer, got {K!r}", field_name='K')
        if not isinstance(raw_entries, Mapping) or not raw_entries:
            raise TableIntegrityError("Table has no entries")

        keys = [MultiIndex.parse(key) for key in raw_entries]
        dims = {len(k) for k in keys}
        if len(dims) != 1:
            raise TableIntegrityError(f"Table keys have mixed dimensions {sorted(dims)}")
        d = dims.pop()

        entries = {
            k: SparsePoly.from_list(d, frame, items)
            for k, items in zip(keys, raw_entries.values())
        }
        return cls(d, K, frame, method, entries, params)

    def get_summary(self) -> Dict[str, Any]:
        return {
            'method': self.method.value,
            'frame': self.frame.value,
            'd': self.d,
            'K': self.K,
            'entries': len(self.entries),
            'terms': sum(len(p.terms) for p in self.entries.values()),
        }
