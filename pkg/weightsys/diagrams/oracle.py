"""Dense operator checks on tensor powers of the vector representation.

The defining sums of the weight systems are evaluated as integer matrices on
(C^N)^{(x)t} and compared with the symbolic values, where N becomes the integer
and C_k the matrix of the corresponding standard cycle sum.
"""
import itertools
from fractions import Fraction

import numpy as np
from loguru import logger

from weightsys.core.config import ORACLE_DIM_LIMIT
from weightsys.core.config import ORACLE_TERM_LIMIT
from weightsys.core.exceptions import BoundExceeded
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.wgl import eval_wgl
from weightsys.diagrams.wso import eval_wso


def _guard(alpha: Permutation, n: int, t: int):
    if n < 1 or t < 1:
        raise BoundExceeded(f'Oracle needs N >= 1 and t >= 1, got N={n}, t={t}')
    if n ** t > ORACLE_DIM_LIMIT or n ** alpha.m > ORACLE_TERM_LIMIT:
        err_msg = (
            f'Oracle too large for {alpha} at N={n}, t={t}: '
            f'dimension {n ** t} (limit {ORACLE_DIM_LIMIT}), '
            f'{n ** alpha.m} index tuples (limit {ORACLE_TERM_LIMIT})'
        )
        logger.error(err_msg)
        raise BoundExceeded(err_msg)


def matrix_unit(n: int, a: int, b: int) -> np.ndarray:
    unit = np.zeros((n, n), dtype=np.int64)
    unit[a, b] = 1
    return unit


def tensor_action(single: np.ndarray, t: int) -> np.ndarray:
    """Action of a Lie algebra element on the t-th tensor power: sum over the factors."""
    n = single.shape[0]
    identity = np.eye(n, dtype=np.int64)
    total = np.zeros((n ** t, n ** t), dtype=np.int64)
    for position in range(t):
        term = np.ones((1, 1), dtype=np.int64)
        for factor in range(t):
            term = np.kron(term, single if factor == position else identity)
        total += term
    return total


def gl_generators(n: int, t: int) -> dict[tuple[int, int], np.ndarray]:
    return {
        (a, b): tensor_action(matrix_unit(n, a, b), t)
        for a, b in itertools.product(range(n), repeat=2)
    }


def so_generators(n: int, t: int) -> dict[tuple[int, int], np.ndarray]:
    """F_ab = E_ab - E_{b'a'} with a' = n - 1 - a."""
    return {
        (a, b): tensor_action(matrix_unit(n, a, b) - matrix_unit(n, n - 1 - b, n - 1 - a), t)
        for a, b in itertools.product(range(n), repeat=2)
    }


def defining_sum(alpha: Permutation, generators: dict, n: int) -> np.ndarray:
    """Sum over all index tuples of the ordered product of generators along alpha."""
    dim = next(iter(generators.values())).shape[0]
    total = np.zeros((dim, dim), dtype=np.int64)
    for indices in itertools.product(range(n), repeat=alpha.m):
        term = np.eye(dim, dtype=np.int64)
        for j in range(1, alpha.m + 1):
            term = term @ generators[(indices[j - 1], indices[alpha(j) - 1])]
        total += term
    return total


def casimir_matrix(k: int, generators: dict, n: int) -> np.ndarray:
    """Block trace of the k-th power of the block matrix (generator_ab)_ab."""
    dim = next(iter(generators.values())).shape[0]
    blocks = np.block([[generators[(a, b)] for b in range(n)] for a in range(n)])
    power = np.linalg.matrix_power(blocks.astype(object), k)
    return sum(power[a * dim:(a + 1) * dim, a * dim:(a + 1) * dim] for a in range(n))


def evaluate_on_matrices(value: Poly, generators: dict, n: int) -> np.ndarray:
    dim = next(iter(generators.values())).shape[0]
    total = np.zeros((dim, dim), dtype=object)
    total[:, :] = Fraction(0)
    casimirs: dict[int, np.ndarray] = {}
    for mono, coeff in value:
        term = np.eye(dim, dtype=np.int64).astype(object) * coeff
        for var, e in mono:
            if var == N:
                term = term * n ** e
            elif var.kind == 'C':
                if var.index not in casimirs:
                    casimirs[var.index] = casimir_matrix(var.index, generators, n)
                term = term.dot(np.linalg.matrix_power(casimirs[var.index], e))
            else:
                raise ValueError(f'Unexpected variable {var} in a weight system value')
        total = total + term
    return total


def _compare(name: str, alpha: Permutation, value: Poly, generators: dict, n: int, t: int) -> bool:
    lhs = defining_sum(alpha, generators, n).astype(object)
    rhs = evaluate_on_matrices(value, generators, n)
    agrees = bool(np.all(lhs == rhs))
    if not agrees:
        logger.warning('{} oracle disagrees on {} at N={}, t={}', name, alpha, n, t)
    return agrees


def operator_oracle_gl(alpha: Permutation, n: int, t: int) -> bool:
    _guard(alpha, n, t)
    return _compare('gl', alpha, eval_wgl(alpha), gl_generators(n, t), n, t)


def operator_oracle_so(alpha: Permutation, n: int, t: int) -> bool:
    _guard(alpha, n, t)
    return _compare('so', alpha, eval_wso(alpha), so_generators(n, t), n, t)
