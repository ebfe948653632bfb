"""
Unit tests for SparsePoly and PolyTable
"""

import json

import numpy as np
import pytest

from .helpers import hermite_params, random_params
from wavepacket_sdk.core.exceptions import TableIntegrityError, ValidationError
from wavepacket_sdk.models.polynomial_model import (
    ConstructionMethod,
    Frame,
    PolyTable,
    SparsePoly,
    compose_linear,
    directional_gradient,
    poly_discrepancy,
    poly_eval,
)
from wavepacket_sdk.services.construction_service import build_recurrence

Y = Frame.Y_FRAME


def poly(d, terms):
    return SparsePoly.from_terms(d, Y, terms)


class TestSparsePoly:
    """Test cases for SparsePoly arithmetic and evaluation."""

    def test_constant_evaluation(self):
        assert poly_eval(SparsePoly.constant(2, Y), [3.0, -1.5j]) == 1

    def test_linear_evaluation(self):
        assert poly_eval(poly(1, {(1,): 2.0}), [3.0]) == 6

    def test_hermite_two(self):
        """Test 4y^2 - 2 at y = 1."""
        assert poly_eval(poly(1, {(2,): 4.0, (0,): -2.0}), [1.0]) == pytest.approx(2.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            poly_eval(poly(2, {(1, 0): 1.0}), [1.0])
        with pytest.raises(ValidationError):
            poly(2, {(1,): 1.0})

    def test_terms_are_canonical(self):
        """Test graded-lex order of stored terms and pruning of zeros."""
        p = poly(2, {(0, 2): 1.0, (2, 0): 1.0, (0, 0): 5.0, (1, 1): 0.0})
        assert list(p.terms) == [(0, 0), (2, 0), (0, 2)]

    def test_pruning_is_relative(self):
        p = poly(1, {(1,): 1.0, (0,): 1e-16})
        assert list(p.terms) == [(1,)]

    def test_arithmetic(self):
        p = poly(1, {(1,): 1.0, (0,): 1.0})
        q = poly(1, {(1,): 1.0, (0,): -1.0})
        product = p * q
        assert product.coefficient((2,)) == 1
        assert product.coefficient((1,)) == 0
        assert product.coefficient((0,)) == -1
        assert (p - p).is_zero
        assert (2 * p).coefficient((0,)) == 2
        assert (p + q).coefficient((1,)) == 2

    def test_incompatible_frames(self):
        p = SparsePoly.constant(1, Frame.X_FRAME)
        with pytest.raises(ValidationError):
            p + SparsePoly.constant(1, Y)

    def test_gradient_of_constant(self):
        assert directional_gradient(SparsePoly.constant(2, Y, 3.0), [1.0, 2.0]).is_zero

    def test_gradient_of_square(self):
        g = directional_gradient(poly(1, {(2,): 1.0}), [1.0])
        assert dict(g.terms) == {(1,): 2.0}

    def test_gradient_conjugates_direction(self):
        """Test <c, grad p> = conj(c_1) y_2 for p = y_1 y_2, c = (i, 0)."""
        g = directional_gradient(poly(2, {(1, 1): 1.0}), [1j, 0.0])
        assert dict(g.terms) == {(0, 1): -1j}

    def test_higher_derivative(self):
        p = poly(2, {(3, 1): 1.0, (1, 0): 5.0})
        assert dict(p.derivative(1, times=2).terms) == {(1, 1): 6.0}
        assert p.derivative(2, times=2).is_zero

    def test_compose_identity(self):
        p = poly(2, {(2, 1): 1.5, (0, 1): -2j, (0, 0): 1.0})
        assert poly_discrepancy(compose_linear(p, np.eye(2)), p) == 0.0

    def test_compose_affine(self):
        """Test p = y, M = 2, shift = 1 gives 2y + 1."""
        q = compose_linear(poly(1, {(1,): 1.0}), 2.0, [1.0])
        assert dict(q.terms) == {(0,): 1.0, (1,): 2.0}

    @pytest.mark.parametrize("seed", range(4))
    def test_chain_rule_first_order(self, seed):
        """Test grad(p o M) = M^t (grad p) o M at random points."""
        rng = np.random.default_rng(seed)
        d = 3
        terms = {
            tuple(rng.integers(0, 3, size=d)): complex(rng.standard_normal(), rng.standard_normal())
            for _ in range(8)
        }
        p = poly(d, terms)
        M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q = p.compose_linear(M)

        for _ in range(5):
            v = rng.standard_normal(d)
            outer = np.array([q.derivative(j).evaluate(v) for j in range(1, d + 1)])
            inner = np.array([p.derivative(i).evaluate(M @ v) for i in range(1, d + 1)])
            np.testing.assert_allclose(outer, M.T @ inner, rtol=1e-12, atol=1e-12 * np.abs(inner).max())

    def test_evaluate_many_matches_evaluate(self):
        p = poly(2, {(2, 1): 1.5, (0, 1): -2j, (0, 0): 1.0})
        points = np.array([[0.5, -1.0], [2.0, 0.25], [0.0, 0.0]])
        expected = [p.evaluate(point) for point in points]
        np.testing.assert_allclose(p.evaluate_many(points), expected, rtol=1e-14)

    def test_discrepancy_metric(self):
        """Test max|c1 - c2| / (1 + max|c|) over the union of exponents."""
        p = poly(1, {(1,): 4.0})
        q = poly(1, {(1,): 4.0, (0,): 1.0})
        assert poly_discrepancy(p, q) == pytest.approx(1.0 / 5.0)

    def test_list_serialization(self):
        p = poly(2, {(1, 0): 1 + 2j, (0, 0): -1.0})
        items = p.to_list()
        assert items[0] == {'exp': [0, 0], 're': -1.0, 'im': 0.0}
        assert poly_discrepancy(SparsePoly.from_list(2, Y, items), p) == 0.0

    def test_malformed_term(self):
        with pytest.raises(ValidationError):
            SparsePoly.from_list(1, Y, [{'exp': [1], 're': 'x'}])


class TestPolyTable:
    """Test cases for PolyTable invariants and serialization."""

    def setup_method(self):
        """Set up test fixtures."""
        self.params = hermite_params()
        self.table = build_recurrence(self.params, 3)

    def test_coverage(self):
        assert self.table.indices() == [(0,), (1,), (2,), (3,)]
        assert (2,) in self.table
        assert (4,) not in self.table

    def test_missing_entry(self):
        entries = dict(self.table.entries)
        del entries[(2,)]
        with pytest.raises(TableIntegrityError):
            PolyTable(1, 3, Y, ConstructionMethod.RECURRENCE, entries)

    def test_wrong_degree(self):
        entries = dict(self.table.entries)
        entries[(2,)] = poly(1, {(1,): 1.0})
        with pytest.raises(TableIntegrityError) as exc_info:
            PolyTable(1, 3, Y, ConstructionMethod.RECURRENCE, entries)
        assert exc_info.value.context['index'] == '(2,)'

    def test_zero_entry(self):
        entries = dict(self.table.entries)
        entries[(0,)] = SparsePoly.zero(1, Y)
        with pytest.raises(TableIntegrityError):
            PolyTable(1, 3, Y, ConstructionMethod.RECURRENCE, entries)

    def test_lookup_outside(self):
        with pytest.raises(ValidationError):
            self.table[(5,)]

    def test_json_dump_format(self):
        """Test the documented JSON layout with graded-lex terms."""
        data = json.loads(self.table.to_json())
        assert data['method'] == 'recurrence'
        assert data['frame'] == 'y'
        assert data['K'] == 3
        assert list(data['entries']) == ['[0]', '[1]', '[2]', '[3]']
        terms = data['entries']['[2]']
        assert [term['exp'] for term in terms] == [[0], [2]]
        assert [term['re'] for term in terms] == pytest.approx([-2.0, 4.0], abs=1e-14)
        assert [term['im'] for term in terms] == pytest.approx([0.0, 0.0], abs=1e-14)

    def test_json_reload(self):
        reloaded = PolyTable.from_dict(json.loads(self.table.to_json()))
        assert reloaded.d == 1 and reloaded.K == 3
        for k in self.table.indices():
            assert poly_discrepancy(reloaded[k], self.table[k]) == 0.0

    def test_corrupted_document(self):
        data = json.loads(self.table.to_json())
        data['entries']['[3]'] = [{'exp': [1], 're': 1.0, 'im': 0.0}]
        with pytest.raises(TableIntegrityError):
            PolyTable.from_dict(data)

    @pytest.mark.parametrize("mutation", [
        lambda data: data.pop('method'),
        lambda data: data.update(frame='z'),
        lambda data: data.update(K=-1),
    ])
    def test_schema_errors(self, mutation):
        data = json.loads(self.table.to_json())
        mutation(data)
        with pytest.raises(ValidationError):
            PolyTable.from_dict(data)

    def test_to_x_frame(self):
        """Test P_k(x) = p_k(|A|^{-1} x / sqrt(hbar)) for a random pair."""
        params = random_params(2, 2, hbar=0.25)
        table = build_recurrence(params, 2)
        x_table = table.to_x_frame()
        assert x_table.frame == Frame.X_FRAME

        x = np.array([0.3, -0.7])
        y = np.linalg.solve(params.polar.absA, x) / np.sqrt(params.hbar)
        for k in table.indices():
            assert x_table[k].evaluate(x) == pytest.approx(table[k].evaluate(y), rel=1e-12, abs=1e-12)

    def test_summary(self):
        summary = self.table.get_summary()
        assert summary['entries'] == 4
        assert summary['method'] == 'recurrence'
