"""
State models

GaussianState represents psi(x) = q(x) * phi_0(x) for a polynomial q in the
x-frame; ladder operators map states of this form to states of this form.
QuadratureRule holds one-dimensional Gauss-Hermite nodes and weights.
"""

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import ValidationError
from .params_model import PacketParams
from .polynomial_model import Frame, SparsePoly


@dataclass(frozen=True, eq=False)
class GaussianState:
    """A polynomial q (x-frame) times the ground state phi_0 of ``params``."""
    params: PacketParams
    q: SparsePoly

    def __post_init__(self):
        if self.q.frame != Frame.X_FRAME:
            raise ValidationError(
                "GaussianState polynomial must be in the x-frame",
                field_name='q',
                expected_type=Frame.X_FRAME.value,
                actual_value=self.q.frame.value
            )
        if self.q.d != self.params.d:
            raise ValidationError(
                f"Polynomial dimension {self.q.d} does not match params dimension {self.params.d}",
                field_name='q',
                actual_value=self.q.d
            )

    @classmethod
    def ground(cls, params: PacketParams, prune_rel: float = 1e-14) -> 'GaussianState':
        """The state phi_0 itself (q = 1)."""
        return cls(params, SparsePoly.constant(params.d, Frame.X_FRAME, 1.0, prune_rel))

    def with_q(self, q: SparsePoly) -> 'GaussianState':
        return GaussianState(self.params, q)

    def scaled(self, factor: complex) -> 'GaussianState':
        return GaussianState(self.params, self.q * factor)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-y^2) on the real line."""
    nodes_per_dim: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != (self.nodes_per_dim,) or weights.shape != (self.nodes_per_dim,):
            raise ValidationError(
                f"Rule with n={self.nodes_per_dim} needs {self.nodes_per_dim} nodes and weights",
                field_name='nodes'
            )
        if not np.all(weights > 0):
            raise ValidationError("Quadrature weights must be positive", field_name='weights')
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'weights', weights)

    def integrate(self, values) -> float:
        """sum_i w_i f(y_i) for values f(y_i) given per node."""
        return np.asarray(values) @ self.weights

    def tensor_grid(self, d: int):
        """
        Tensor-product grid in d dimensions, row-major (last axis fastest).

        Returns:
            (points, weights) with shapes (n^d, d) and (n^d,)
        """
        mesh = np.meshgrid(*([self.nodes] * d), indexing='ij')
        points = np.stack([axis.reshape(-1) for axis in mesh], axis=1)
        weight_mesh = np.meshgrid(*([self.weights] * d), indexing='ij')
        weights = np.prod(np.stack([w.reshape(-1) for w in weight_mesh], axis=1), axis=1)
        return points, weights
