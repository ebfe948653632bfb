"""
Quadrature Service

Gauss-Hermite rules for the weight exp(-y^2) and the Gram matrix of the
wave-packet basis. In the y-frame every A-dependent Jacobian and
normalization cancels, leaving

    <phi_k, phi_m> = pi^{-d/2} 2^{-(|k|+|m|)/2} (k! m!)^{-1/2}
                     int conj(p_k(y)) p_m(y) exp(-|y|^2) dy

which a tensor rule with n >= K + 1 nodes per dimension integrates exactly.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..core.config import WavePacketConfig
from ..core.exceptions import ValidationError
from ..core.linalg import require_admissible
from ..models.multi_index import enumerate_upto
from ..models.params_model import PacketParams
from ..models.polynomial_model import Frame, PolyTable
from ..models.report_model import GramReport
from ..models.state_model import QuadratureRule


class QuadratureService:
    """
    Service producing Gauss-Hermite rules and Gram matrices.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)
        self._rules = {}

    def gauss_hermite(self, n: int) -> QuadratureRule:
        """
        n-point rule from the eigen-decomposition of the Jacobi matrix
        (zero diagonal, off-diagonal sqrt(i/2)); weights are sqrt(pi) times the
        squared first eigenvector components.
        """
        if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= self.config.max_nodes:
            raise ValidationError(
                f"Number of nodes must be in [1, {self.config.max_nodes}], got {n!r}",
                field_name='n',
                expected_type=f'int in [1, {self.config.max_nodes}]',
                actual_value=n
            )
        if n in self._rules:
            return self._rules[n]

        if n == 1:
            nodes, weights = np.zeros(1), np.array([np.sqrt(np.pi)])
        else:
            off_diagonal = np.sqrt(np.arange(1, n) / 2.0)
            nodes, vectors = eigh_tridiagonal(np.zeros(n), off_diagonal)
            weights = np.sqrt(np.pi) * vectors[0, :] ** 2
            # the rule is symmetric about 0
            nodes = (nodes - nodes[::-1]) / 2
            weights = (weights + weights[::-1]) / 2

        rule = QuadratureRule(n, nodes, weights)
        self._rules[n] = rule
        return rule

    def gram_matrix(self, params: PacketParams, K: int, n: int, table: PolyTable) -> np.ndarray:
        """
        Gram matrix <phi_k, phi_m> over enumerate_upto(d, K), computed on a
        tensor Gauss-Hermite grid in the y-frame.
        """
        if isinstance(K, bool) or not isinstance(K, int) or K < 0:
            raise ValidationError(f"K must be a nonnegative integer, got {K!r}", field_name='K')
        if n < K + 1:
            raise ValidationError(
                f"{n} nodes per dimension cannot integrate degree {2 * K} exactly; need at least {K + 1}",
                field_name='n',
                expected_type=f'int >= {K + 1}',
                actual_value=n
            )
        if table.frame != Frame.Y_FRAME or table.d != params.d or table.K < K:
            raise ValidationError(
                f"Gram matrix needs a y-frame table with d={params.d} and K >= {K}",
                field_name='table'
            )
        require_admissible(params, self.config.admissibility_tol)

        rule = self.gauss_hermite(n)
        points, weights = rule.tensor_grid(params.d)
        indices = enumerate_upto(params.d, K)

        def column(k):
            normalization = 2.0 ** (-k.order / 2) / np.sqrt(float(k.factorial(self.config.factorial_cap)))
            return normalization * table[k].evaluate_many(points)

        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            columns = list(executor.map(column, indices))

        V = np.stack(columns, axis=1)
        gram = np.pi ** (-params.d / 2) * (V.conj().T * weights) @ V
        self.logger.debug(f"Gram matrix of size {len(indices)} from {len(weights)} nodes")
        return gram

    def gram_report(self, params: PacketParams, K: int, table: PolyTable,
                    n: Optional[int] = None) -> GramReport:
        """Gram matrix with its deviation from the identity; n defaults to K + quadrature_margin."""
        n = K + self.config.quadrature_margin if n is None else n
        matrix = self.gram_matrix(params, K, n, table)
        report = GramReport(
            d=params.d,
            K=K,
            nodes_per_dim=n,
            indices=enumerate_upto(params.d, K),
            matrix=matrix,
            tolerance=self.config.gram_tol
        )
        log = self.logger.info if report.passed else self.logger.warning
        log(report.get_summary())
        return report


_default_service: Optional[QuadratureService] = None


def _service() -> QuadratureService:
    global _default_service
    if _default_service is None:
        _default_service = QuadratureService()
    return _default_service


def gauss_hermite(n: int) -> QuadratureRule:
    return _service().gauss_hermite(n)


def gram_matrix(params: PacketParams, K: int, n: int, table: PolyTable) -> np.ndarray:
    return _service().gram_matrix(params, K, n, table)
