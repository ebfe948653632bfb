"""
Ladder Service

Raising and lowering operators acting symbolically on states q(x) phi_0(x).
With C = B A^{-1} and S = |A|^{-2}, on the polynomial factor q:

    raise (lemma form)       q -> sqrt(2/hbar) <A e_l, S x> q - sqrt(hbar/2) <A e_l, grad q>
    raise (definition form)  q -> (<B e_l, x> q - hbar <A e_l, grad q> + <A e_l, C x> q) / sqrt(2 hbar)
    lower                    q -> ((<conj(B) e_l, x> - <conj(A) e_l, C x>) q + hbar <conj(A) e_l, grad q>) / sqrt(2 hbar)

The lemma form never reads B. The operators are only defined here for
packets centred at the phase-space origin.
"""

import logging
import time
from typing import Dict, Optional, Sequence

import numpy as np
import scipy.linalg

from ..core.config import WavePacketConfig
from ..core.exceptions import CapacityError, UnsupportedInputError, ValidationError
from ..core.linalg import principal_axes, require_admissible, width_decomposition
from ..models.multi_index import MultiIndex, enumerate_upto
from ..models.params_model import PacketParams
from ..models.polynomial_model import ConstructionMethod, Frame, PolyTable, SparsePoly
from ..models.state_model import GaussianState

RAISE_OPERATORS = ('lemma', 'definition')


class LadderService:
    """
    Service applying ladder operators to GaussianState values and building
    polynomial tables from chains of raising operators.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)

    def _check(self, state: GaussianState, l: int, operation: str) -> PacketParams:
        params = state.params
        MultiIndex.unit(params.d, l)  # validates l
        if not params.is_at_origin:
            raise UnsupportedInputError(
                f"{operation} is only defined for packets centred at a = eta = 0",
                feature=operation
            )
        require_admissible(params, self.config.admissibility_tol)
        return params

    def _linear(self, coefficients) -> SparsePoly:
        return SparsePoly.linear(Frame.X_FRAME, coefficients, prune_rel=self.config.prune_rel)

    def raise_lemma(self, state: GaussianState, l: int) -> GaussianState:
        """Raising operator R_l in the form that depends on A alone."""
        params = self._check(state, l, 'raise_lemma')
        A = params.A
        absA_inv = scipy.linalg.inv(params.polar.absA)
        S = absA_inv @ absA_inv

        column = A[:, l - 1]
        drift = self._linear(np.sqrt(2 / params.hbar) * (column.conj() @ S))
        q = state.q
        return state.with_q(drift * q - np.sqrt(params.hbar / 2) * q.directional_gradient(column))

    def raise_definition(self, state: GaussianState, l: int) -> GaussianState:
        """Raising operator R_l from its definition in terms of A and B."""
        params = self._check(state, l, 'raise_definition')
        A, B = params.A, params.B
        C = _symmetric_width(params)

        column = A[:, l - 1]
        multiplier = self._linear(B[:, l - 1].conj() + column.conj() @ C)
        q = state.q
        result = multiplier * q - params.hbar * q.directional_gradient(column)
        return state.with_q(result * (1 / np.sqrt(2 * params.hbar)))

    def lower(self, state: GaussianState, l: int) -> GaussianState:
        """Lowering operator, the formal adjoint of R_l."""
        params = self._check(state, l, 'lower')
        A, B = params.A, params.B
        C = _symmetric_width(params)

        column = A[:, l - 1]
        multiplier = self._linear(B[:, l - 1] - column @ C)
        q = state.q
        result = multiplier * q + params.hbar * q.directional_gradient(column.conj())
        return state.with_q(result * (1 / np.sqrt(2 * params.hbar)))

    def apply_raise(self, state: GaussianState, l: int, operator: str = 'lemma') -> GaussianState:
        if operator == 'lemma':
            return self.raise_lemma(state, l)
        if operator == 'definition':
            return self.raise_definition(state, l)
        raise ValidationError(
            f"Unknown raising operator {operator!r}",
            field_name='operator',
            expected_type=' or '.join(RAISE_OPERATORS)
        )

    def raise_along(self, params: PacketParams, path: Sequence[int], operator: str = 'lemma') -> GaussianState:
        """Apply R_l for each l in ``path`` to phi_0."""
        state = GaussianState.ground(params, self.config.prune_rel)
        for l in path:
            state = self.apply_raise(state, l, operator)
        return state

    def build_ladder(self, params: PacketParams, K: int, operator: str = 'lemma') -> PolyTable:
        """
        Table of p_k from raising chains.

        A chain realizing k gives 2^{-|k|/2} P_k phi_0, so P_k = 2^{|k|/2} q.
        The x-frame P_k are moved to the y-frame with x = sqrt(hbar) W diag(sigma) W^t y.
        """
        if isinstance(K, bool) or not isinstance(K, int) or K < 0:
            raise ValidationError(f"K must be a nonnegative integer, got {K!r}", field_name='K')
        if K > self.config.order_cap:
            raise CapacityError(
                f"Requested order K={K} exceeds the order cap {self.config.order_cap}",
                requested=K,
                limit=self.config.order_cap
            )
        require_admissible(params, self.config.admissibility_tol)
        started = time.perf_counter()

        indices = enumerate_upto(params.d, K)
        chain: Dict[MultiIndex, GaussianState] = {indices[0]: GaussianState.ground(params, self.config.prune_rel)}
        for k in indices[1:]:
            parent, l = k.parent()
            chain[k] = self.apply_raise(chain[parent], l, operator)

        W, sigma = principal_axes(params.polar)
        to_x = np.sqrt(params.hbar) * W @ np.diag(sigma) @ W.T
        entries = {
            k: (state.q * 2 ** (k.order / 2)).compose_linear(to_x).with_frame(Frame.Y_FRAME)
            for k, state in chain.items()
        }

        table = PolyTable(params.d, K, Frame.Y_FRAME, ConstructionMethod.LADDER, entries, params)
        self.logger.info(
            f"Built ladder table ({operator}) d={params.d} K={K} in {time.perf_counter() - started:.3f}s"
        )
        return table


def _symmetric_width(params: PacketParams) -> np.ndarray:
    P, S = width_decomposition(params)
    return P + 1j * S


_default_service: Optional[LadderService] = None


def _service() -> LadderService:
    global _default_service
    if _default_service is None:
        _default_service = LadderService()
    return _default_service


def raise_lemma(state: GaussianState, l: int) -> GaussianState:
    return _service().raise_lemma(state, l)


def raise_definition(state: GaussianState, l: int) -> GaussianState:
    return _service().raise_definition(state, l)


def lower(state: GaussianState, l: int) -> GaussianState:
    return _service().lower(state, l)


def build_ladder(params: PacketParams, K: int, operator: str = 'lemma') -> PolyTable:
    return _service().build_ladder(params, K, operator)
