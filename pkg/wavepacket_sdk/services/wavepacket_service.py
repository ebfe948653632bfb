"""
Wave Packet Service

Pointwise evaluation of the ground state phi_0 and the basis functions

    phi_k(x) = 2^{-|k|/2} (k!)^{-1/2} P_k(x - a) phi_0(x)

with P_k read from a y-frame polynomial table. Evaluation is vectorised over
arrays of points of shape (N, d); single points are accepted as (d,).
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..core.config import WavePacketConfig
from ..core.exceptions import ValidationError
from ..core.linalg import inv_sqrt_det, require_admissible
from ..models.multi_index import MultiIndex
from ..models.params_model import PacketParams
from ..models.polynomial_model import Frame, PolyTable
from .construction_service import to_y_frame


def _points(x, d: int) -> Tuple[np.ndarray, bool]:
    array = np.asarray(x, dtype=float)
    single = array.ndim == 1
    array = array.reshape(1, -1) if single else array
    if array.ndim != 2 or array.shape[1] != d:
        raise ValidationError(
            f"Points must have dimension {d}, got shape {np.shape(x)}",
            field_name='x',
            expected_type=f'({d},) or (N, {d})'
        )
    return array, single


def grid_points(axes: Sequence[Tuple[float, float, int]]) -> np.ndarray:
    """Row-major tensor grid (last axis fastest) from (min, max, count) per axis."""
    lines = [np.linspace(lo, hi, count) for lo, hi, count in axes]
    mesh = np.meshgrid(*lines, indexing='ij')
    return np.stack([axis.reshape(-1) for axis in mesh], axis=1)


class WavePacketService:
    """
    Service for evaluating wave packets at points and on grids.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)

    def eval_phi0(self, params: PacketParams, x):
        """
        phi_0(x) = pi^{-d/4} hbar^{-d/4} (det A)^{-1/2}
                   exp(-(x-a)^t B A^{-1} (x-a) / (2 hbar) + i eta.(x-a) / hbar)
        """
        require_admissible(params, self.config.admissibility_tol)
        points, single = _points(x, params.d)
        shifted = points - params.a

        C = params.B @ scipy.linalg.inv(params.A)
        quadratic = np.einsum('ni,ij,nj->n', shifted, C, shifted)
        phase = shifted @ params.eta
        prefactor = (np.pi * params.hbar) ** (-params.d / 4) * inv_sqrt_det(params.A, self.config.singular_rel)

        values = prefactor * np.exp(-quadratic / (2 * params.hbar) + 1j * phase / params.hbar)
        return complex(values[0]) if single else values

    def phi0_density(self, params: PacketParams, x):
        """
        |phi_0(x)|^2 = pi^{-d/2} hbar^{-d/2} |det A|^{-1} exp(-(x-a)^t |A|^{-2} (x-a) / hbar),
        computed from the polar form only.
        """
        points, single = _points(x, params.d)
        shifted = points - params.a
        polar = params.polar

        solved = to_y_frame(params, shifted) * np.sqrt(params.hbar)
        exponent = -np.sum(np.abs(solved) ** 2, axis=1) / params.hbar
        abs_det = float(np.prod(polar.singular_values))

        values = (np.pi * params.hbar) ** (-params.d / 2) / abs_det * np.exp(exponent)
        return float(values[0]) if single else values

    def _check_table(self, params: PacketParams, table: PolyTable, k) -> MultiIndex:
        if table.frame != Frame.Y_FRAME:
            raise ValidationError("Basis evaluation needs a y-frame table", field_name='table')
        if table.d != params.d:
            raise ValidationError(
                f"Table dimension {table.d} does not match params dimension {params.d}",
                field_name='table'
            )
        if table.params is not None and not np.allclose(table.params.polar.U, params.polar.U,
                                                        rtol=0, atol=self.config.crosscheck_tol):
            raise ValidationError(
                "Table was built for a matrix A with a different unitary factor",
                field_name='table'
            )
        k = MultiIndex(k)
        if len(k) != params.d or k not in table:
            raise ValidationError(
                f"Multi-index {tuple(k)} is outside the table (d={table.d}, K={table.K})",
                field_name='k',
                actual_value=tuple(k)
            )
        return k

    def eval_phik(self, params: PacketParams, k, x, table: PolyTable):
        """phi_k at one point (d,) or many points (N, d)."""
        k = self._check_table(params, table, k)
        points, single = _points(x, params.d)

        y = to_y_frame(params, points - params.a)
        normalization = 2.0 ** (-k.order / 2) / np.sqrt(float(k.factorial(self.config.factorial_cap)))
        values = normalization * table[k].evaluate_many(y) * self.eval_phi0(params, points)
        return complex(values[0]) if single else values

    def evaluate_grid(self, params: PacketParams, k, table: PolyTable,
                      axes: Sequence[Tuple[float, float, int]]) -> Tuple[np.ndarray, np.ndarray]:
        """
        phi_k on a row-major tensor grid.

        Returns:
            (points, values) with shapes (N, d) and (N,)
        """
        if len(axes) != params.d:
            raise ValidationError(
                f"Grid has {len(axes)} axes, expected {params.d}",
                field_name='grid',
                actual_value=len(axes)
            )
        points = grid_points(axes)
        values = self.eval_phik(params, k, points, table)
        self.logger.info(f"Evaluated phi_{tuple(k)} at {len(points)} grid points")
        return points, np.atleast_1d(values)


_default_service: Optional[WavePacketService] = None


def _service() -> WavePacketService:
    global _default_service
    if _default_service is None:
        _default_service = WavePacketService()
    return _default_service


def eval_phi0(params: PacketParams, x):
    return _service().eval_phi0(params, x)


def eval_phik(params: PacketParams, k, x, table: PolyTable):
    return _service().eval_phik(params, k, x, table)


def phi0_density(params: PacketParams, x):
    return _service().phi0_density(params, x)
