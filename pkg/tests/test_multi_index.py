"""
Unit tests for MultiIndex and the graded-lex enumeration
"""

import json
import math

import pytest

from wavepacket_sdk.core.exceptions import CapacityError, ValidationError
from wavepacket_sdk.models.multi_index import (
    MultiIndex,
    add_unit,
    enumerate_upto,
    enumeration_size,
    order_and_factorial,
)


class TestMultiIndex:
    """Test cases for MultiIndex."""

    @pytest.mark.parametrize("k, expected", [
        ((0, 0, 0), (0, 1)),
        ((2, 1), (3, 2)),
        ((3, 3), (6, 36)),
    ])
    def test_order_and_factorial(self, k, expected):
        """Test order and exact factorial."""
        assert order_and_factorial(MultiIndex(k)) == expected

    def test_factorial_is_exact_integer(self):
        """Test that factorials stay exact at the cap."""
        k = MultiIndex((10, 10))
        assert k.factorial() == math.factorial(10) ** 2
        assert isinstance(k.factorial(), int)

    def test_factorial_above_cap(self):
        """Test capacity error beyond the factorial cap."""
        with pytest.raises(CapacityError) as exc_info:
            MultiIndex((15, 6)).factorial()
        assert exc_info.value.context['requested'] == 21
        assert exc_info.value.context['limit'] == 20

    @pytest.mark.parametrize("k, l, expected", [
        ((0, 0), 1, (1, 0)),
        ((2, 5), 2, (2, 6)),
        ((4,), 1, (5,)),
    ])
    def test_add_unit(self, k, l, expected):
        """Test adding a unit vector."""
        assert add_unit(MultiIndex(k), l) == expected

    @pytest.mark.parametrize("l", [0, 3, -1, True])
    def test_add_unit_out_of_range(self, l):
        """Test that invalid directions are rejected."""
        with pytest.raises(ValidationError):
            MultiIndex((1, 2)).add_unit(l)

    @pytest.mark.parametrize("components", [(), (1, -1), (1.5, 0), (True, 0)])
    def test_invalid_components(self, components):
        """Test validation of components."""
        with pytest.raises(ValidationError):
            MultiIndex(components)

    def test_parent_uses_first_nonzero_component(self):
        """Test parent selection."""
        parent, l = MultiIndex((0, 2, 1)).parent()
        assert parent == (0, 1, 1)
        assert l == 2

    def test_zero_has_no_parent(self):
        """Test that the zero index has no parent."""
        with pytest.raises(ValidationError):
            MultiIndex.zero(2).parent()

    @pytest.mark.parametrize("text", ["[2,0,1]", "2,0,1", "2_0_1", " [2, 0, 1] "])
    def test_parse(self, text):
        """Test parsing of keys, labels and plain lists."""
        assert MultiIndex.parse(text) == (2, 0, 1)

    def test_serialization(self):
        """Test JSON key and CSV label forms."""
        k = MultiIndex((2, 0, 1))
        assert k.to_key() == "[2,0,1]"
        assert json.loads(k.to_key()) == [2, 0, 1]
        assert k.label == "2_0_1"

    def test_tuple_lookup(self):
        """Test that plain tuples find MultiIndex keys."""
        table = {MultiIndex((1, 0)): 'x'}
        assert table[(1, 0)] == 'x'

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("l", [1, 2])
    def test_unit_properties(self, d, l):
        """Test order and factorial growth under add_unit."""
        if l > d:
            pytest.skip("direction outside dimension")
        k = MultiIndex(range(d))
        bumped = k.add_unit(l)
        assert bumped.order == k.order + 1
        assert bumped.factorial() == k.factorial() * (k[l - 1] + 1)


class TestEnumeration:
    """Test cases for enumerate_upto."""

    def test_small_cases(self):
        """Test the documented examples."""
        assert enumerate_upto(1, 2) == [(0,), (1,), (2,)]
        assert enumerate_upto(2, 1) == [(0, 0), (1, 0), (0, 1)]
        assert len(enumerate_upto(2, 2)) == 6

    def test_graded_lex_order(self):
        """Test ordering within one total degree."""
        assert enumerate_upto(2, 2)[3:] == [(2, 0), (1, 1), (0, 2)]
        assert enumerate_upto(3, 1)[1:] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    @pytest.mark.parametrize("d", range(1, 6))
    @pytest.mark.parametrize("N", range(0, 9))
    def test_count_and_uniqueness(self, d, N):
        """Test binomial count and absence of duplicates."""
        indices = enumerate_upto(d, N)
        assert len(indices) == enumeration_size(d, N) == math.comb(d + N, d)
        assert len(set(indices)) == len(indices)
        assert indices == sorted(indices, key=MultiIndex.sort_key)

    @pytest.mark.parametrize("d, N", [(0, 1), (2, -1), (1.0, 2), (2, True)])
    def test_invalid_arguments(self, d, N):
        """Test argument validation."""
        with pytest.raises(ValidationError):
            enumerate_upto(d, N)
