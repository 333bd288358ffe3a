"""Rotational Hopf algebras: permutations up to cyclic shifts of their connected blocks.

No relations are imposed, so the algebra is free commutative on the connected
rotational classes and its primitives are counted by them.  Subalgebras are cut
out by a set of allowed cycle lengths and a positivity filter.
"""
import math
from fractions import Fraction
from typing import Iterable

from loguru import logger

from weightsys.core.config import ROTATIONAL_BOUND
from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.hopf import set_partitions
from weightsys.diagrams.hopf import pi_projection
from weightsys.diagrams.linalg import RowSpace
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import RotationalClass
from weightsys.diagrams.perm import canonical_rotational_class
from weightsys.diagrams.perm import concatenate
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import permutations_with_cycles
from weightsys.diagrams.perm import restrict_legs
from weightsys.diagrams.relations import DiagramCombo
from weightsys.diagrams.schema import DimRow
from weightsys.diagrams.series import TruncatedSeries

# table number -> (allowed cycle lengths, degrees, with positive columns)
ROTATIONAL_TABLES = {
    2: (frozenset({2}), (2, 4, 6, 8), False),
    3: (frozenset({3}), (3, 6, 9), True),
    4: (frozenset({2, 3}), tuple(range(1, 10)), True),
}


def rotational_form(combo: DiagramCombo) -> DiagramCombo:
    """The same combination with every permutation replaced by its rotational representative."""
    return DiagramCombo(
        ((coeff, canonical_rotational_class(perm).representative()) for perm, coeff in combo),
        source=combo.source,
    )


def pi_prime_projection(alpha: Permutation) -> DiagramCombo:
    """Projection to primitives for the coproduct splitting the set of legs."""
    combo = DiagramCombo(source=f'pi-prime {format_cycles(alpha)}')
    if alpha.m == 0:
        return combo
    for blocks in set_partitions(list(range(1, alpha.m + 1))):
        k = len(blocks)
        coeff = (-1) ** (k - 1) * math.factorial(k - 1)
        product = concatenate(*(restrict_legs(alpha, block) for block in blocks))
        combo.add(canonical_rotational_class(product).representative(), coeff)
    return combo


def _check_bound(m: int, bound: int):
    if m > bound:
        err_msg = f'Rotational dimensions for m={m} exceed the bound {bound}'
        logger.error(err_msg)
        raise BoundExceeded(err_msg)


def rotational_classes(
    m: int, nu: Iterable[int] | None = None, positivity: str | None = None
) -> list[RotationalClass]:
    alphas = permutations_with_cycles(m, nu, positivity)
    return sorted({canonical_rotational_class(alpha) for alpha in alphas})


def rotational_dims(
    m: int,
    nu: Iterable[int] | None = None,
    positivity: str | None = None,
    bound: int = ROTATIONAL_BOUND,
) -> tuple[int, int]:
    """(dim A_m, dim P(A_m)) for the classes of permutations with cycle lengths in ``nu``."""
    _check_bound(m, bound)
    classes = rotational_classes(m, nu, positivity)
    column: dict[Permutation, int] = {}
    span = RowSpace()
    for cls in classes:
        image = rotational_form(pi_projection(cls.representative()))
        row = {column.setdefault(perm, len(column)): coeff for perm, coeff in image}
        span.add(row)
    logger.debug(
        'Rotational m={} nu={} {}: {} classes, {} primitive',
        m, nu, positivity, len(classes), span.rank,
    )
    return len(classes), span.rank


def connected_class_count(
    m: int, nu: Iterable[int] | None = None, positivity: str | None = None
) -> int:
    return sum(1 for cls in rotational_classes(m, nu, positivity) if len(cls.components) == 1)


def rotational_table(table: int, bound: int = ROTATIONAL_BOUND) -> list[DimRow]:
    if table not in ROTATIONAL_TABLES:
        raise WeightSystemError(
            f'Unknown rotational table {table}, expected one of {sorted(ROTATIONAL_TABLES)}'
        )
    nu, degrees, with_positive = ROTATIONAL_TABLES[table]
    label = '{' + ','.join(str(part) for part in sorted(nu)) + '}'
    rows = []
    for m in degrees:
        dim, primitive = rotational_dims(m, nu, bound=bound)
        row = DimRow(label=label, m=m, dim=dim, primitive=primitive)
        if with_positive:
            row.dim_positive, row.primitive_positive = rotational_dims(m, nu, 'positive', bound)
        rows.append(row)
    logger.bind(payload=[row.model_dump() for row in rows]).info(f'Rotational table {table}')
    return rows


# generating series of positive permutations

def partition_series(nu: Iterable[int] | None, order: int) -> TruncatedSeries:
    """Set partitions of {1..m} with block sizes in ``nu``, equivalently positive permutations."""
    allowed = None if nu is None else set(nu)
    counts = [1]
    for m in range(1, order + 1):
        counts.append(sum(
            math.comb(m - 1, k - 1) * counts[m - k]
            for k in range(1, m + 1)
            if allowed is None or k in allowed
        ))
    return TruncatedSeries(counts, order)


def bell_rational_series(order: int) -> TruncatedSeries:
    """sum over k of x^k / ((1 - x)(1 - 2x)...(1 - kx))."""
    x = TruncatedSeries.variable(order)
    total = TruncatedSeries.constant(1, order)
    term = TruncatedSeries.constant(1, order)
    for k in range(1, order + 1):
        term = term * x / TruncatedSeries.linear(1, -k, order)
        total = total + term
    return total


def connected_series(nu: Iterable[int] | None, order: int) -> TruncatedSeries:
    """A with P(x) = 1 + A(x P(x)), solved coefficient by coefficient."""
    p_series = partition_series(nu, order)
    inner = p_series.shift(1)
    powers = [TruncatedSeries.constant(1, order)]
    for _ in range(order):
        powers.append(powers[-1] * inner)
    coeffs = [Fraction(0)]
    for n in range(1, order + 1):
        known = sum((coeffs[k] * powers[k][n].constant_term() for k in range(1, n)), Fraction(0))
        coeffs.append(p_series[n].constant_term() - known)
    return TruncatedSeries(coeffs, order)


def prime_degree_generators(connected_count: int, p: int) -> int:
    """Generators of prime degree p: the standard cycle is the only fixed point of the rotation."""
    quotient, remainder = divmod(connected_count - 1, p)
    if remainder:
        raise WeightSystemError(f'{connected_count} - 1 is not divisible by {p}')
    return quotient + 1
