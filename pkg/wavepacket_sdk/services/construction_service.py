"""
Construction Service

Builds the polynomial table p_k, |k| <= K, in three independent ways:

- recurrence:  p_{k+e_l}(y) = 2 <U e_l, y> p_k(y) - <U e_l, grad p_k(y)>
- generating:  Taylor coefficients of exp(-z^t U*conj(U) z + 2 z^t U* y)
- rodrigues:   Gaussian-conjugated derivatives (-sqrt(hbar) A* grad)^k of
               exp(-x^t |A|^{-2} x / hbar)

All tables are returned in the y-frame, y = |A|^{-1} x / sqrt(hbar). The
service also evaluates the closed-form generating function and its
derivatives, which the verification tests compare against the tables.
"""

import logging
import threading
import time
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..core.config import WavePacketConfig
from ..core.exceptions import CapacityError, ValidationError
from ..core.linalg import principal_axes, require_admissible
from ..models.multi_index import MultiIndex, enumerate_upto
from ..models.params_model import PacketParams
from ..models.polynomial_model import ConstructionMethod, Frame, PolyTable, SparsePoly

Terms = Dict[Tuple[int, ...], complex]

GENERATING_FORMS = ('polar', 'direct')


def to_y_frame(params: PacketParams, x) -> np.ndarray:
    """y = |A|^{-1} x / sqrt(hbar)."""
    x = np.asarray(x, dtype=complex)
    return scipy.linalg.solve(params.polar.absA, x.T, assume_a='her').T / np.sqrt(params.hbar)


def multiply_terms(lhs: Terms, rhs: Terms, lead: int, cap: int) -> Terms:
    """
    Product of two joint polynomials, keeping only terms whose first
    ``lead`` exponents sum to at most ``cap``.
    """
    rhs_items = [(exp, c, sum(exp[:lead])) for exp, c in rhs.items()]
    product: Terms = {}
    for e1, c1 in lhs.items():
        degree1 = sum(e1[:lead])
        for e2, c2, degree2 in rhs_items:
            if degree1 + degree2 > cap:
                continue
            exp = tuple(a + b for a, b in zip(e1, e2))
            product[exp] = product.get(exp, 0j) + c1 * c2
    return product


class ConstructionService:
    """
    Service that builds polynomial tables and evaluates the generating function.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        """
        Initialize construction service.

        Args:
            config: SDK configuration object
            logger: Logger instance for service operations
        """
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)

        self._metrics_lock = threading.Lock()
        self.performance_metrics = {
            'tables_built': 0,
            'total_build_time': 0.0,
        }

    def _prepare(self, params: PacketParams, K: int):
        require_admissible(params, self.config.admissibility_tol)
        if isinstance(K, bool) or not isinstance(K, int) or K < 0:
            raise ValidationError(f"K must be a nonnegative integer, got {K!r}", field_name='K', actual_value=K)
        if K > self.config.order_cap:
            raise CapacityError(
                f"Requested order K={K} exceeds the order cap {self.config.order_cap}",
                requested=K,
                limit=self.config.order_cap
            )

    def _finish(self, params: PacketParams, K: int, method: ConstructionMethod,
                entries: Dict[MultiIndex, SparsePoly], started: float) -> PolyTable:
        table = PolyTable(params.d, K, Frame.Y_FRAME, method, entries, params)
        elapsed = time.perf_counter() - started
        with self._metrics_lock:
            self.performance_metrics['tables_built'] += 1
            self.performance_metrics['total_build_time'] += elapsed
        self.logger.info(
            f"Built {method.value} table d={params.d} K={K}: "
            f"{len(entries)} polynomials in {elapsed:.3f}s"
        )
        return table

    # Recurrence

    def recurrence_step(self, p: SparsePoly, U: np.ndarray, l: int) -> SparsePoly:
        """p -> 2 <U e_l, y> p - <U e_l, grad p>."""
        column = U[:, l - 1]
        multiplier = SparsePoly.linear(Frame.Y_FRAME, 2 * np.conj(column), prune_rel=self.config.prune_rel)
        return multiplier * p - p.directional_gradient(column)

    def build_along_path(self, params: PacketParams, path: Sequence[int]) -> SparsePoly:
        """
        Apply the recurrence step for each direction in ``path`` starting from 1.
        The result is p_k for k = sum of e_l over the path.
        """
        require_admissible(params, self.config.admissibility_tol)
        U = params.polar.U
        p = SparsePoly.constant(params.d, Frame.Y_FRAME, 1.0, self.config.prune_rel)
        for l in path:
            MultiIndex.unit(params.d, l)  # validates l
            p = self.recurrence_step(p, U, l)
        return p

    def build_recurrence(self, params: PacketParams, K: int) -> PolyTable:
        """
        Table from the three-term recurrence in the y-frame.

        Each p_k is built from the parent k - e_l with l the first nonzero
        component of k. Only the unitary factor U of A enters.
        """
        self._prepare(params, K)
        started = time.perf_counter()
        U = params.polar.U

        indices = enumerate_upto(params.d, K)
        entries = {indices[0]: SparsePoly.constant(params.d, Frame.Y_FRAME, 1.0, self.config.prune_rel)}
        for k in indices[1:]:
            parent, l = k.parent()
            entries[k] = self.recurrence_step(entries[parent], U, l)
            self.logger.debug(f"recurrence p_{tuple(k)}: {len(entries[k].terms)} terms")

        return self._finish(params, K, ConstructionMethod.RECURRENCE, entries, started)

    # Generating function

    def exponent_terms(self, params: PacketParams) -> Terms:
        """
        E(z; y) = -z^t (U* conj(U)) z + 2 z^t (U* y) as a joint polynomial
        with exponents (z_1..z_d, y_1..y_d).
        """
        d = params.d
        U = params.polar.U
        M = U.conj().T @ U.conj()
        Uh = U.conj().T

        def exponent(z_part, y_part):
            return tuple(z_part) + tuple(y_part)

        terms: Terms = {}
        zero = [0] * d
        for i in range(d):
            for j in range(d):
                z_part = list(zero)
                z_part[i] += 1
                z_part[j] += 1
                key = exponent(z_part, zero)
                terms[key] = terms.get(key, 0j) - M[i, j]

                key = exponent(MultiIndex.unit(d, i + 1), MultiIndex.unit(d, j + 1))
                terms[key] = terms.get(key, 0j) + 2 * Uh[i, j]
        return {exp: c for exp, c in terms.items() if c != 0}

    def build_generating(self, params: PacketParams, K: int) -> PolyTable:
        """
        Table from the truncated series exp(E) = sum_{m<=K} E^m / m!.

        Every term of E has z-degree at least one, so E^m only contributes to
        z-degree >= m and the truncation is exact for |k| <= K. Then
        p_k = k! [z^k] exp(E).
        """
        self._prepare(params, K)
        started = time.perf_counter()
        d = params.d

        E = self.exponent_terms(params)
        unit: Terms = {(0,) * (2 * d): 1.0 + 0j}
        series = dict(unit)
        power = unit
        for m in range(1, K + 1):
            power = multiply_terms(power, E, lead=d, cap=K)
            power = {exp: c / m for exp, c in power.items()}
            if not power:
                break
            for exp, c in power.items():
                series[exp] = series.get(exp, 0j) + c

        grouped: Dict[Tuple[int, ...], Terms] = {}
        for exp, c in series.items():
            grouped.setdefault(exp[:d], {})[exp[d:]] = c

        entries = {}
        for k in enumerate_upto(d, K):
            scale = k.factorial(self.config.factorial_cap)
            coefficients = {y: scale * c for y, c in grouped.get(tuple(k), {}).items()}
            entries[k] = SparsePoly.from_terms(d, Frame.Y_FRAME, coefficients, self.config.prune_rel)

        return self._finish(params, K, ConstructionMethod.GENERATING, entries, started)

    # Rodrigues formula

    def build_rodrigues(self, params: PacketParams, K: int) -> PolyTable:
        """
        Table from the Rodrigues formula.

        Works in the principal axes of |A| = W diag(sigma) W^t, x' = W^t x,
        keeping the invariant "current function = q(x') exp(-sum_i x'_i^2 / (hbar sigma_i^2))".
        The l-th factor -sqrt(hbar) (A* grad_x)_l acts as

            q -> -sqrt(hbar) sum_i R_li d'_i q + (2 / sqrt(hbar)) sum_i R_li sigma_i^-2 x'_i q

        with R = A* W. The result is moved to the y-frame by x' = sqrt(hbar) diag(sigma) W^t y.
        """
        self._prepare(params, K)
        started = time.perf_counter()
        d = params.d
        hbar = params.hbar
        prune = self.config.prune_rel

        W, sigma = principal_axes(params.polar)
        R = params.A.conj().T @ W
        root = np.sqrt(hbar)

        drifts = [
            SparsePoly.linear(Frame.X_FRAME, (2 / root) * R[l, :] / sigma ** 2, prune_rel=prune)
            for l in range(d)
        ]

        def apply_factor(q: SparsePoly, l: int) -> SparsePoly:
            # directional_gradient conjugates its direction
            return drifts[l - 1] * q - root * q.directional_gradient(np.conj(R[l - 1, :]))

        indices = enumerate_upto(d, K)
        axis_entries = {indices[0]: SparsePoly.constant(d, Frame.X_FRAME, 1.0, prune)}
        for k in indices[1:]:
            parent, l = k.parent()
            axis_entries[k] = apply_factor(axis_entries[parent], l)

        to_y = root * np.diag(sigma) @ W.T
        entries = {
            k: q.compose_linear(to_y).with_frame(Frame.Y_FRAME)
            for k, q in axis_entries.items()
        }
        return self._finish(params, K, ConstructionMethod.RODRIGUES, entries, started)

    # Closed-form generating function

    def eval_generating(self, params: PacketParams, x, z, form: str = 'polar') -> complex:
        """
        G(x, z) evaluated in closed form.

        form='direct': exp(-z^t A^{-1} conj(A) z + (2 / sqrt(hbar)) z^t A^{-1} x)
        form='polar':  exp(-z^t U* conj(U) z + 2 z^t U* y)
        """
        require_admissible(params, self.config.admissibility_tol)
        x = _vector(x, params.d, 'x', real=True)
        z = _vector(z, params.d, 'z')
        if form == 'direct':
            A_inv = scipy.linalg.inv(params.A)
            exponent = -z @ A_inv @ params.A.conj() @ z + (2 / np.sqrt(params.hbar)) * z @ A_inv @ x
        elif form == 'polar':
            U = params.polar.U
            y = to_y_frame(params, x)
            exponent = -z @ U.conj().T @ U.conj() @ z + 2 * z @ U.conj().T @ y
        else:
            raise ValidationError(
                f"Unknown generating-function form {form!r}",
                field_name='form',
                expected_type=' or '.join(GENERATING_FORMS)
            )
        return complex(np.exp(exponent))

    def generating_gradient(self, params: PacketParams, x, z) -> np.ndarray:
        """dG/dz = 2 U* (y - conj(U) z) G."""
        x = _vector(x, params.d, 'x', real=True)
        z = _vector(z, params.d, 'z')
        U = params.polar.U
        y = to_y_frame(params, x)
        return 2 * U.conj().T @ (y - U.conj() @ z) * self.eval_generating(params, x, z)

    def eval_generating_derivative(self, params: PacketParams, table: PolyTable, k, x, z) -> complex:
        """(d/dz)^k G(x, z) = p_k(y - conj(U) z) G(x, z)."""
        p = _y_frame_entry(table, k)
        x = _vector(x, params.d, 'x', real=True)
        z = _vector(z, params.d, 'z')
        shifted = to_y_frame(params, x) - params.polar.U.conj() @ z
        return p.evaluate(shifted) * self.eval_generating(params, x, z)

    def generating_partial_sum(self, params: PacketParams, table: PolyTable, x, z,
                               order: Optional[int] = None) -> complex:
        """sum_{|k| <= order} P_k(x) z^k / k! using the table's polynomials."""
        order = table.K if order is None else order
        if order > table.K:
            raise ValidationError(
                f"Partial sum order {order} exceeds table order {table.K}",
                field_name='order',
                actual_value=order
            )
        x = _vector(x, params.d, 'x', real=True)
        z = _vector(z, params.d, 'z')
        y = to_y_frame(params, x)
        total = 0j
        for k in enumerate_upto(params.d, order):
            p = _y_frame_entry(table, k)
            total += p.evaluate(y) * np.prod(z ** np.asarray(k)) / k.factorial(self.config.factorial_cap)
        return complex(total)


def _vector(values, d: int, name: str, real: bool = False) -> np.ndarray:
    vector = np.asarray(values, dtype=float if real else complex).reshape(-1)
    if vector.shape != (d,):
        raise ValidationError(
            f"{name} must have dimension {d}, got {vector.shape[0]}",
            field_name=name,
            expected_type=f'{d}-vector'
        )
    return vector


def _y_frame_entry(table: PolyTable, k) -> SparsePoly:
    if table.frame != Frame.Y_FRAME:
        raise ValidationError("Generating-function evaluation needs a y-frame table", field_name='table')
    return table[k]


_default_service: Optional[ConstructionService] = None


def _service() -> ConstructionService:
    global _default_service
    if _default_service is None:
        _default_service = ConstructionService()
    return _default_service


def build_recurrence(params: PacketParams, K: int) -> PolyTable:
    return _service().build_recurrence(params, K)


def build_generating(params: PacketParams, K: int) -> PolyTable:
    return _service().build_generating(params, K)


def build_rodrigues(params: PacketParams, K: int) -> PolyTable:
    return _service().build_rodrigues(params, K)


def eval_generating(params: PacketParams, x, z, form: str = 'polar') -> complex:
    return _service().eval_generating(params, x, z, form)
