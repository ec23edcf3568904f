# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the Clifford module construction of pinchcert."""
from typing import List

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinchcert.common.errors import DomainError
from pinchcert.lie_arith.clifford import (
    cayley_dickson_product,
    clifford_generators,
    clifford_residuals,
    verify_clifford_oracle,
)
from pinchcert.lie_arith.exclusion import radon_hurwitz

octonions = st.lists(st.integers(-5, 5), min_size=8, max_size=8)


class TestCayleyDickson:
    """Tests for cayley_dickson_product"""

    def test_units(self):
        one = (1, 0, 0, 0)
        i, j, k = (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)

        assert cayley_dickson_product(one, j) == j
        assert cayley_dickson_product(i, i) == (-1, 0, 0, 0)
        assert cayley_dickson_product(i, j) == tuple(-c for c in cayley_dickson_product(j, i))
        assert cayley_dickson_product(i, j) in (k, tuple(-c for c in k))

    @settings(max_examples=200, deadline=None)
    @given(octonions, octonions)
    def test_norm_is_multiplicative(self, x: List[int], y: List[int]):
        product = cayley_dickson_product(tuple(x), tuple(y))

        assert sum(c * c for c in product) == sum(c * c for c in x) * sum(c * c for c in y)


class TestCliffordGenerators:
    """Tests for clifford_generators"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 8, 12, 16, 32, 48])
    def test_generators(self, n: int):
        generators = clifford_generators(n)

        assert len(generators) == radon_hurwitz(n) - 1
        assert all(generator.shape == (n, n) for generator in generators)
        assert all(clifford_residuals(generators).values())

    def test_domain(self):
        with pytest.raises(DomainError):
            clifford_generators(0)

    def test_oracle(self):
        certificate = verify_clifford_oracle(64)

        assert certificate.holds
        assert certificate.witnesses == {"generators_on_r16": 8}
