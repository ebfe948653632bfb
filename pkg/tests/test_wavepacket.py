"""
Tests for wave-packet evaluation, Gauss-Hermite rules and Gram matrices
"""

import numpy as np
import pytest

from .helpers import default_cap_params, hermite_params, random_params
from wavepacket_sdk.core.config import WavePacketConfig
from wavepacket_sdk.core.exceptions import ValidationError
from wavepacket_sdk.models.params_model import PacketParams
from wavepacket_sdk.models.report_model import CheckStatus
from wavepacket_sdk.services.construction_service import ConstructionService
from wavepacket_sdk.services.quadrature_service import QuadratureService
from wavepacket_sdk.services.verification_service import VerificationService
from wavepacket_sdk.services.wavepacket_service import WavePacketService, grid_points

PI_QUARTER = np.pi ** -0.25


class TestGroundState:
    """Test cases for eval_phi0 and phi0_density."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = WavePacketService(WavePacketConfig(environment='testing'))
        self.params = hermite_params()

    def test_value_at_origin(self):
        assert self.service.eval_phi0(self.params, [0.0]) == pytest.approx(PI_QUARTER, rel=1e-14)

    def test_value_at_one(self):
        value = self.service.eval_phi0(self.params, [1.0])
        assert value == pytest.approx(PI_QUARTER * np.exp(-0.5), rel=1e-14)

    def test_vectorised(self):
        points = np.array([[0.0], [1.0], [-1.0]])
        values = self.service.eval_phi0(self.params, points)
        assert values.shape == (3,)
        assert values[1] == pytest.approx(values[2])

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_density_identity(self, seed):
        """Test |phi_0|^2 from (A, B) against the polar-form expression."""
        base = random_params(seed, 2, hbar=0.3)
        params = PacketParams(2, 0.3, base.A, base.B, a=[0.2, -0.1], eta=[1.5, 0.4])
        rng = np.random.default_rng(seed)
        points = 0.5 * rng.standard_normal((10, 2))
        direct = np.abs(self.service.eval_phi0(params, points)) ** 2
        density = self.service.phi0_density(params, points)
        np.testing.assert_allclose(direct, density, rtol=1e-12)

    def test_bad_point_shape(self):
        with pytest.raises(ValidationError):
            self.service.eval_phi0(self.params, [0.0, 1.0])


class TestBasisFunctions:
    """Test cases for eval_phik and grid evaluation."""

    def setup_method(self):
        config = WavePacketConfig(environment='testing')
        self.service = WavePacketService(config)
        self.params = hermite_params()
        self.table = ConstructionService(config).build_recurrence(self.params, 3)

    def test_zero_index_is_ground_state(self):
        for x in (-1.0, 0.0, 0.7):
            assert self.service.eval_phik(self.params, (0,), [x], self.table) == pytest.approx(
                self.service.eval_phi0(self.params, [x]), rel=1e-14
            )

    @pytest.mark.parametrize("x", [-2.0, -0.5, 0.0, 0.3, 1.7])
    def test_first_function(self, x):
        """Test phi_1 = sqrt(2) x phi_0."""
        value = self.service.eval_phik(self.params, (1,), [x], self.table)
        expected = np.sqrt(2) * x * self.service.eval_phi0(self.params, [x])
        assert abs(value - expected) <= 1e-13

    def test_index_outside_table(self):
        with pytest.raises(ValidationError):
            self.service.eval_phik(self.params, (4,), [0.0], self.table)

    def test_x_frame_table_rejected(self):
        with pytest.raises(ValidationError):
            self.service.eval_phik(self.params, (1,), [0.0], self.table.to_x_frame())

    def test_grid_order(self):
        """Test row-major order with the last axis fastest."""
        points = grid_points([(0.0, 1.0, 2), (-1.0, 1.0, 3)])
        expected = [[0, -1], [0, 0], [0, 1], [1, -1], [1, 0], [1, 1]]
        np.testing.assert_allclose(points, expected)

    def test_grid_evaluation(self):
        points, values = self.service.evaluate_grid(self.params, (2,), self.table, [(-5.0, 5.0, 101)])
        assert points.shape == (101, 1)
        assert values.shape == (101,)
        assert values[50] == pytest.approx(self.service.eval_phik(self.params, (2,), [0.0], self.table))

    def test_grid_axis_count(self):
        with pytest.raises(ValidationError):
            self.service.evaluate_grid(self.params, (0,), self.table, [(0, 1, 2), (0, 1, 2)])


class TestGaussHermite:
    """Test cases for the Gauss-Hermite rule."""

    def setup_method(self):
        self.service = QuadratureService(WavePacketConfig(environment='testing'))

    def test_single_node(self):
        rule = self.service.gauss_hermite(1)
        np.testing.assert_allclose(rule.nodes, [0.0])
        np.testing.assert_allclose(rule.weights, [np.sqrt(np.pi)])

    def test_two_nodes(self):
        rule = self.service.gauss_hermite(2)
        np.testing.assert_allclose(rule.nodes, [-1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [np.sqrt(np.pi) / 2] * 2, rtol=1e-14)

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_moments(self, n):
        """Test int y^m exp(-y^2) dy for m <= min(2n - 1, 12)."""
        rule = self.service.gauss_hermite(n)
        for m in range(min(2 * n - 1, 12) + 1):
            if m % 2:
                exact = 0.0
            else:
                # Gamma((m + 1) / 2) = (m - 1)!! sqrt(pi) / 2^{m/2}
                exact = np.sqrt(np.pi) * np.prod(np.arange(m - 1, 0, -2, dtype=float)) / 2 ** (m // 2)
            assert rule.integrate(rule.nodes ** m) == pytest.approx(exact, rel=1e-12, abs=1e-13)

    def test_cached(self):
        assert self.service.gauss_hermite(4) is self.service.gauss_hermite(4)

    @pytest.mark.parametrize("n", [0, -1, 65, 2.0, True])
    def test_invalid_node_count(self, n):
        with pytest.raises(ValidationError):
            self.service.gauss_hermite(n)

    def test_tensor_grid(self):
        points, weights = self.service.gauss_hermite(2).tensor_grid(2)
        assert points.shape == (4, 2)
        assert weights.sum() == pytest.approx(np.pi)


class TestGramMatrix:
    """Test cases for the orthonormality check."""

    def setup_method(self):
        config = WavePacketConfig(environment='testing')
        self.service = QuadratureService(config)
        self.construction = ConstructionService(config)

    def test_order_zero(self):
        params = hermite_params()
        table = self.construction.build_recurrence(params, 0)
        gram = self.service.gram_matrix(params, 0, 1, table)
        np.testing.assert_allclose(gram, [[1.0]], atol=1e-14)

    def test_hermite(self):
        params = hermite_params()
        table = self.construction.build_recurrence(params, 3)
        gram = self.service.gram_matrix(params, 3, 6, table)
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)

    @pytest.mark.parametrize("seed", [0, 5])
    def test_random_two_dimensional(self, seed):
        params = random_params(seed, 2)
        table = self.construction.build_recurrence(params, 3)
        gram = self.service.gram_matrix(params, 3, 6, table)
        np.testing.assert_allclose(gram, np.eye(10), atol=1e-8)

    @pytest.mark.parametrize("seed", [0, 1])
    @pytest.mark.parametrize("K", [1, 2, 3, 4])
    @pytest.mark.parametrize("d", [1, 2])
    def test_default_nodes(self, d, K, seed):
        """Test max |G - I| <= 1e-8 with K + 3 nodes and condition numbers up to 1e4."""
        params = default_cap_params(seed, d)
        table = self.construction.build_recurrence(params, K)
        report = self.service.gram_report(params, K, table)
        assert report.nodes_per_dim == K + 3
        assert report.deviation <= 1e-8

    def test_too_few_nodes(self):
        params = hermite_params()
        table = self.construction.build_recurrence(params, 3)
        with pytest.raises(ValidationError) as exc_info:
            self.service.gram_matrix(params, 3, 3, table)
        assert exc_info.value.context['actual_value'] == '3'

    def test_report(self):
        params = random_params(1, 2)
        table = self.construction.build_recurrence(params, 2)
        report = self.service.gram_report(params, 2, table)
        assert report.passed
        assert report.nodes_per_dim == 2 + self.service.config.quadrature_margin
        assert len(report.indices) == 6
        assert 'max |G - I|' in report.get_summary()
        assert report.to_dict()['status'] == 'passed'


class TestVerification:
    """Test cases for table comparison reports."""

    def setup_method(self):
        config = WavePacketConfig(environment='testing')
        self.service = VerificationService(config)
        self.construction = ConstructionService(config)
        self.params = random_params(2, 2)

    def test_crosscheck_passes(self):
        tables = {
            'recurrence': self.construction.build_recurrence(self.params, 3),
            'generating': self.construction.build_generating(self.params, 3),
            'rodrigues': self.construction.build_rodrigues(self.params, 3),
        }
        report = self.service.crosscheck(tables)
        assert report.passed
        assert len(report.discrepancies) == 3
        assert len(report.get_summary()) == 3

    def test_reference_mismatch_is_error(self):
        tables = {'recurrence': self.construction.build_recurrence(self.params, 3)}
        reference = self.construction.build_recurrence(self.params, 2)
        report = self.service.crosscheck(tables, reference)
        assert report.status == CheckStatus.FAILED
        assert report.errors

    def test_different_parameters_fail(self):
        first = self.construction.build_recurrence(self.params, 2)
        second = self.construction.build_recurrence(random_params(3, 2), 2)
        pair = self.service.compare_tables(first, second, 'a', 'b')
        assert pair.status == CheckStatus.FAILED
        assert self.service.performance_metrics['failed_comparisons'] == 1
