import numpy as np
import pytest

from weightsys.core.exceptions import BoundExceeded
from weightsys.diagrams.oracle import casimir_matrix
from weightsys.diagrams.oracle import defining_sum
from weightsys.diagrams.oracle import gl_generators
from weightsys.diagrams.oracle import operator_oracle_gl
from weightsys.diagrams.oracle import operator_oracle_so
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import parse_permutation
from weightsys.diagrams.perm import standard_cycle


class TestGenerators:
    def test_first_casimir_counts_factors(self):
        generators = gl_generators(2, 3)
        c1 = casimir_matrix(1, generators, 2)
        assert np.array_equal(c1.astype(np.int64), 3 * np.eye(8, dtype=np.int64))

    def test_standard_cycle_is_casimir(self):
        generators = gl_generators(2, 2)
        lhs = defining_sum(standard_cycle(2), generators, 2)
        rhs = casimir_matrix(2, generators, 2)
        assert np.array_equal(lhs, rhs.astype(np.int64))


class TestOracle:
    @pytest.mark.parametrize('n, t', [(2, 2), (3, 1), (2, 3)])
    def test_gl(self, n, t):
        for m in (1, 2, 3):
            for alpha in all_permutations(m):
                assert operator_oracle_gl(alpha, n, t)

    def test_gl_four_legs(self):
        for alpha in all_permutations(4):
            assert operator_oracle_gl(alpha, 2, 2)

    @pytest.mark.parametrize('n, t', [(2, 2), (3, 1), (3, 2)])
    def test_so(self, n, t):
        for m in (1, 2, 3):
            for alpha in all_permutations(m):
                assert operator_oracle_so(alpha, n, t)

    @pytest.mark.parametrize('n', [3, 4, 5])
    def test_so_vector_representation(self, n):
        for m in (1, 2, 3, 4):
            for alpha in all_permutations(m):
                assert operator_oracle_so(alpha, n, 1), alpha

    @pytest.mark.slow
    def test_so_four_legs(self):
        for alpha in all_permutations(4):
            assert operator_oracle_so(alpha, 3, 2)

    def test_worked_example(self, alpha_1):
        assert operator_oracle_gl(alpha_1, 2, 1)


class TestGuard:
    @pytest.mark.parametrize('n, t', [(9, 2), (0, 1), (2, 0)])
    def test_rejects(self, n, t):
        with pytest.raises(BoundExceeded):
            operator_oracle_gl(parse_permutation('(1,2)'), n, t)

    def test_too_many_index_tuples(self):
        with pytest.raises(BoundExceeded):
            operator_oracle_so(standard_cycle(9), 3, 1)
