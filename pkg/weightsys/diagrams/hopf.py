"""Homogeneous pieces of the Hopf algebra of permutations modulo the generalized relations.

A piece is indexed by the cycle type of its permutations.  It is spanned by
cyclic classes (the quotient by cyclic shifts) modulo the two-hyper-arc
elements; one-hyper-arc elements already lie in that span and are only used to
validate it.  The product is concatenation, the coproduct splits the set of
cycles, and primitives are the image of the projection

    pi(alpha) = sum over partitions {I_1..I_k} of the cycles of
                (-1)^(k-1) (k-1)! alpha|I_1 # ... # alpha|I_k.
"""
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Iterator
from typing import Sequence
from typing import TypeVar

from loguru import logger

from weightsys.core.config import DEFAULT_BOUND
from weightsys.core.config import DEFAULT_THREADS
from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.linalg import RowSpace
from weightsys.diagrams.perm import CyclicClass
from weightsys.diagrams.perm import Partition
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import RotationalClass
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import canonical_rotational_class
from weightsys.diagrams.perm import concatenate
from weightsys.diagrams.perm import cycles
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import permutations_of_type
from weightsys.diagrams.perm import restrict_cycles
from weightsys.diagrams.relations import DiagramCombo
from weightsys.diagrams.relations import relation_elements
from weightsys.diagrams.schema import CheckReport
from weightsys.diagrams.schema import DimRow

T = TypeVar('T')


def set_partitions(items: Sequence[T]) -> Iterator[list[list[T]]]:
    """Unordered partitions into nonempty blocks; blocks come ordered by their first item."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        yield [[first]] + smaller
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]


def _ordered_blocks(blocks: list[list[T]]) -> list[list[T]]:
    return sorted(blocks, key=min)


def partitions_of(m: int) -> list[Partition]:
    """Partitions of m, by number of parts then lexicographically."""
    def build(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for tail in build(remaining - part, part):
                yield (part,) + tail

    partitions = (Partition(parts) for parts in build(m, m))
    return sorted(partitions, key=lambda p: (len(p.parts), p.parts))


# coproduct and projection

class TensorCombo:
    """Rational combination of pairs of rotational classes."""

    def __init__(self):
        self.terms: dict[tuple[RotationalClass, RotationalClass], Fraction] = {}

    def add(self, left: RotationalClass, right: RotationalClass, coeff: Fraction | int = 1):
        key = (left, right)
        total = self.terms.get(key, 0) + Fraction(coeff)
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorCombo):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' '.join(
            f'{"+" if c > 0 else "-"}{abs(c)}*{left}(x){right}' for (left, right), c in self
        )


def coproduct_cycles(alpha: Permutation) -> TensorCombo:
    """Sum of alpha|U (x) alpha|W over ordered splittings of the cycle set."""
    cycs = cycles(alpha)
    result = TensorCombo()
    for mask in range(2 ** len(cycs)):
        left = [c for i, c in enumerate(cycs) if mask >> i & 1]
        right = [c for i, c in enumerate(cycs) if not mask >> i & 1]
        result.add(
            canonical_rotational_class(restrict_cycles(alpha, left)),
            canonical_rotational_class(restrict_cycles(alpha, right)),
        )
    return result


def pi_projection(alpha: Permutation) -> DiagramCombo:
    combo = DiagramCombo(source=f'pi {format_cycles(alpha)}')
    if alpha.m == 0:
        return combo
    for blocks in set_partitions(cycles(alpha)):
        k = len(blocks)
        coeff = (-1) ** (k - 1) * math.factorial(k - 1)
        factors = [restrict_cycles(alpha, block) for block in _ordered_blocks(blocks)]
        combo.add(concatenate(*factors), coeff)
    return combo


# the quotient by the relations

def _check_bound(partition: Partition, bound: int):
    if partition.weight > bound:
        err_msg = f'Cycle type {partition} has weight {partition.weight}, above the bound {bound}'
        logger.error(err_msg)
        raise BoundExceeded(err_msg)


class DiagramSpace:
    """Cyclic classes of one cycle type and the span of the two-hyper-arc elements among them."""

    def __init__(
        self, partition: Partition, threads: int = DEFAULT_THREADS, bound: int = DEFAULT_BOUND
    ):
        _check_bound(partition, bound)
        self.partition = partition
        perms = list(permutations_of_type(partition))
        self.basis: list[CyclicClass] = sorted({canonical_cyclic_class(alpha) for alpha in perms})
        self.index = {cls: i for i, cls in enumerate(self.basis)}
        self.relations = RowSpace()

        def rows(alpha: Permutation) -> list[dict[int, Fraction]]:
            return [self.coordinates(element) for element in relation_elements(alpha, ('two',))]

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                batches = list(pool.map(rows, perms))
        else:
            batches = [rows(alpha) for alpha in perms]
        for batch in batches:
            for row in batch:
                if row:
                    self.relations.add(row)
        logger.debug(
            'Space {}: {} classes, relation rank {}',
            partition, len(self.basis), self.relations.rank,
        )

    def coordinates(self, combo: DiagramCombo) -> dict[int, Fraction]:
        row = {}
        for cls, coeff in combo.by_class().items():
            if cls not in self.index:
                raise WeightSystemError(f'{cls} is not of cycle type {self.partition}')
            row[self.index[cls]] = coeff
        return row

    def in_relation_span(self, combo: DiagramCombo) -> bool:
        return self.relations.contains(self.coordinates(combo))

    @property
    def dim(self) -> int:
        return len(self.basis) - self.relations.rank

    def primitive_dim(self) -> int:
        """Rank of pi on the quotient."""
        if not self.partition.parts:
            return 0
        images = self.relations.copy().extend(
            self.coordinates(pi_projection(cls.canonical)) for cls in self.basis
        )
        return images.rank - self.relations.rank

    def one_arc_report(self) -> CheckReport:
        """Every one-hyper-arc element lies in the span of the two-hyper-arc elements."""
        report = CheckReport(name=f'one-arc elements in span, type {self.partition}')
        for alpha in permutations_of_type(self.partition):
            for element in relation_elements(alpha, ('one',)):
                report.checked += 1
                if not self.in_relation_span(element):
                    report.violations.append(element.source)
        return report


@lru_cache(maxsize=256)
def diagram_space(partition: Partition, bound: int = DEFAULT_BOUND) -> DiagramSpace:
    return DiagramSpace(partition, DEFAULT_THREADS, bound)


def dim_H(partition: Partition, bound: int = DEFAULT_BOUND) -> int:
    return diagram_space(partition, bound).dim


def dim_P(partition: Partition, bound: int = DEFAULT_BOUND) -> int:
    return diagram_space(partition, bound).primitive_dim()


def hopf_table(m: int, bound: int = DEFAULT_BOUND) -> list[DimRow]:
    """One row per cycle type of weight m, then the total."""
    rows = []
    for partition in partitions_of(m):
        space = diagram_space(partition, bound)
        rows.append(
            DimRow(label=str(partition), m=m, dim=space.dim, primitive=space.primitive_dim())
        )
    rows.append(DimRow(
        label='total',
        m=m,
        dim=sum(row.dim for row in rows),
        primitive=sum(row.primitive for row in rows),
    ))
    logger.bind(payload=[row.model_dump() for row in rows]).info(f'Dimensions of H_{m}')
    return rows


# closed forms for a single cycle

def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def dim_single_cycle(m: int) -> int:
    """Number of cyclic classes of m-cycles: (1/m^2) sum over d | m of phi(d)^2 (m/d)! d^(m/d)."""
    if m < 1:
        raise WeightSystemError(f'dim_single_cycle needs m >= 1, got {m}')
    total = sum(
        euler_phi(d) ** 2 * math.factorial(m // d) * d ** (m // d)
        for d in range(1, m + 1) if m % d == 0
    )
    quotient, remainder = divmod(total, m * m)
    if remainder:
        raise WeightSystemError(f'Orbit count for m={m} is not an integer: {total}/{m * m}')
    return quotient


def dim_single_cycle_lower_bound(m: int) -> Fraction:
    return Fraction(math.factorial(m - 1), m)


def _is_prime(m: int) -> bool:
    return m >= 2 and all(m % d for d in range(2, math.isqrt(m) + 1))


def dim_single_cycle_prime(m: int) -> int:
    """((m-1)! - (m-1))/m + m - 1: the free orbits plus the m-1 powers of the standard cycle."""
    if not _is_prime(m):
        raise WeightSystemError(f'dim_single_cycle_prime needs a prime, got {m}')
    return (math.factorial(m - 1) - (m - 1)) // m + m - 1


# Milnor-Moore inversion

def _sub_partitions(partition: Partition) -> list[Partition]:
    """Nonempty proper sub-multisets of the parts."""
    mult = partition.multiplicities()
    sizes = list(mult)
    out = []
    for counts in itertools.product(*(range(mult[s] + 1) for s in sizes)):
        parts = [s for s, c in zip(sizes, counts) for _ in range(c)]
        if parts and len(parts) < len(partition.parts):
            out.append(Partition.of(parts))
    return out


def _merge(a: Partition, b: Partition) -> Partition:
    return Partition.of(a.parts + b.parts)


def _fits(candidate: Partition, whole: Partition) -> bool:
    have = whole.multiplicities()
    return all(have.get(s, 0) >= c for s, c in candidate.multiplicities().items())


def primitive_dims_from_dims(dims: dict[Partition, int]) -> dict[Partition, int]:
    """
    Primitive dimensions from full ones, by sum dim(l) x^l = prod (1 - x^mu)^(-p_mu).

    ``dims`` must contain every sub-multiset of each of its keys.
    """
    primitive: dict[Partition, int] = {}
    for partition in sorted(dims, key=lambda p: (p.weight, p.parts)):
        if not partition.parts:
            continue
        series = {Partition(()): 1}
        for sub in _sub_partitions(partition):
            if sub not in primitive:
                raise WeightSystemError(f'Missing dimension of {sub}, needed for {partition}')
            p = primitive[sub]
            if not p:
                continue
            grown: dict[Partition, int] = {}
            for key, coeff in series.items():
                power, n = key, 0
                while _fits(power, partition):
                    grown[power] = grown.get(power, 0) + coeff * math.comb(p + n - 1, n)
                    power, n = _merge(power, sub), n + 1
            series = grown
        primitive[partition] = dims[partition] - series.get(partition, 0)
    return primitive
