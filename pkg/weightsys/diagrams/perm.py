"""Permutations as hyper arc diagrams: topology, canonical classes and derived graphs."""
import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable
from typing import Iterator
from typing import Sequence

import networkx as nx
from loguru import logger

from weightsys.core.exceptions import PermutationError
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import Var

CHROMATIC = Var('x', 0)


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """One-line form: ``map[i - 1]`` is the image of leg ``i``."""

    map: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i - 1]

    def __str__(self) -> str:
        return format_cycles(self)


@dataclass(frozen=True, order=True, slots=True)
class Partition:
    parts: tuple[int, ...]

    @classmethod
    def of(cls, parts: Iterable[int]) -> 'Partition':
        parts = tuple(sorted(parts, reverse=True))
        if any(part <= 0 for part in parts):
            raise PermutationError(f'Partition parts must be positive, got {parts}')
        return cls(parts)

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """Accepts ``2^1 3^2`` (multiplicative) or ``3,3,2`` (list) notation."""
        text = text.strip()
        try:
            if '^' in text:
                parts = []
                for chunk in text.split():
                    base, _, mult = chunk.partition('^')
                    parts += [int(base)] * int(mult)
                return cls.of(parts)
            return cls.of(int(part) for part in re.split(r'[,\s]+', text) if part)
        except ValueError as e:
            raise PermutationError(f'Cannot parse partition "{text}"') from e

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    def without_ones(self) -> 'Partition':
        return Partition(tuple(part for part in self.parts if part != 1))

    def __str__(self) -> str:
        if not self.parts:
            return '0'
        return ' '.join(f'{part}^{mult}' for part, mult in self.multiplicities().items())


@dataclass(frozen=True, order=True, slots=True)
class CyclicClass:
    canonical: Permutation

    def __str__(self) -> str:
        return format_one_line(self.canonical)


@dataclass(frozen=True, order=True, slots=True)
class RotationalClass:
    components: tuple[CyclicClass, ...]

    @property
    def m(self) -> int:
        return sum(component.canonical.m for component in self.components)

    def representative(self) -> Permutation:
        return concatenate(*(component.canonical for component in self.components))

    def __str__(self) -> str:
        return '{' + ' '.join(str(component) for component in self.components) + '}'


# construction and formatting

def identity(m: int) -> Permutation:
    return Permutation(tuple(range(1, m + 1)))


def standard_cycle(m: int) -> Permutation:
    return Permutation(tuple(list(range(2, m + 1)) + [1])) if m else identity(0)


def chord_diagram_k(n: int) -> Permutation:
    """The involution (1,n+1)(2,n+2)...(n,2n): n pairwise crossing chords."""
    return from_cycles([(i, i + n) for i in range(1, n + 1)], 2 * n)


def from_cycles(cycles: Iterable[Sequence[int]], m: int) -> Permutation:
    images = list(range(1, m + 1))
    seen = set()
    for cycle in cycles:
        for i, leg in enumerate(cycle):
            if not 1 <= leg <= m:
                raise PermutationError(f'Element {leg} out of range 1..{m}')
            if leg in seen:
                raise PermutationError(f'Element {leg} repeated')
            seen.add(leg)
            images[leg - 1] = cycle[(i + 1) % len(cycle)]
    return Permutation(tuple(images))


def from_one_line(values: Sequence[int]) -> Permutation:
    m = len(values)
    if sorted(values) != list(range(1, m + 1)):
        if any(not 1 <= v <= m for v in values):
            raise PermutationError(f'Value out of range 1..{m} in {list(values)}')
        raise PermutationError(f'Not a bijection: {list(values)}')
    return Permutation(tuple(values))


_ONE_LINE_RE = re.compile(r'^\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]$')
_CYCLES_RE = re.compile(r'^(?:\(\s*\d+(?:\s*,\s*\d+)*\s*\))+$|^\(\s*\)$')
_SIZE_RE = re.compile(r'^m\s*=\s*(\d+)\s*[:;,]?\s*(.*)$')


def parse_permutation(text: str) -> Permutation:
    """Parse ``[4,5,6,1,2,3]``, ``(1,8)(2,7,4)(3,6,5)`` or ``m=5 (1,3)``."""
    raw = text
    text = text.strip()
    size = None
    size_match = _SIZE_RE.match(text)
    if size_match:
        size = int(size_match.group(1))
        text = size_match.group(2).strip()
    compact = re.sub(r'\s+', '', text)

    if _ONE_LINE_RE.match(text):
        values = [int(v) for v in re.findall(r'\d+', text)]
        perm = from_one_line(values)
        if size is not None and size != perm.m:
            raise PermutationError(f'Size prefix m={size} disagrees with "{raw}"')
        return perm

    if compact == '' and size is not None:
        return identity(size)
    if not _CYCLES_RE.match(compact):
        err_msg = f'Malformed permutation "{raw}"'
        logger.error(err_msg)
        raise PermutationError(err_msg)

    cycles = [tuple(int(v) for v in body.split(',')) for body in re.findall(r'\(([^()]+)\)', compact)]
    legs = [leg for cycle in cycles for leg in cycle]
    if len(legs) != len(set(legs)):
        raise PermutationError(f'Repeated element in "{raw}"')
    m = size if size is not None else max(legs, default=0)
    if size is None and sorted(legs) != list(range(1, m + 1)):
        raise PermutationError(
            f'Elements of "{raw}" do not cover 1..{m}; give the size with an m=... prefix'
        )
    return from_cycles(cycles, m)


def format_one_line(alpha: Permutation) -> str:
    return '[' + ','.join(str(v) for v in alpha.map) + ']'


def format_cycles(alpha: Permutation) -> str:
    if alpha.m == 0:
        return '[]'
    return ''.join('(' + ','.join(str(leg) for leg in cycle) + ')' for cycle in cycles(alpha))


# cycle structure

def cycles(alpha: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its minimum, ordered by minimum."""
    seen = set()
    out = []
    for start in range(1, alpha.m + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = alpha(start)
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = alpha(nxt)
        out.append(tuple(cycle))
    return out


def cycle_count(alpha: Permutation) -> int:
    return len(cycles(alpha))


def cycle_type(alpha: Permutation) -> Partition:
    return Partition.of(len(cycle) for cycle in cycles(alpha))


def fixed_points(alpha: Permutation) -> list[int]:
    return [i for i in range(1, alpha.m + 1) if alpha(i) == i]


def inverse(alpha: Permutation) -> Permutation:
    images = [0] * alpha.m
    for i, v in enumerate(alpha.map, start=1):
        images[v - 1] = i
    return Permutation(tuple(images))


def concatenate(*perms: Permutation) -> Permutation:
    images = []
    offset = 0
    for perm in perms:
        images += [v + offset for v in perm.map]
        offset += perm.m
    return Permutation(tuple(images))


def is_standard_cycle(alpha: Permutation) -> bool:
    return alpha.m > 0 and alpha == standard_cycle(alpha.m)


# topology of the hypermap surface

def face_count(alpha: Permutation) -> int:
    """Number of cycles of sigma^-1 alpha, i.e. boundary components of the surface."""
    if alpha.m == 0:
        raise PermutationError('face_count needs a nonempty permutation')
    m = alpha.m
    seen = [False] * (m + 1)
    faces = 0
    for start in range(1, m + 1):
        if seen[start]:
            continue
        faces += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = alpha(i) - 1 or m
    return faces


def euler_genus(alpha: Permutation) -> int:
    twice = alpha.m - cycle_count(alpha) - face_count(alpha) + 1
    if twice < 0 or twice % 2:
        err_msg = f'Odd Euler characteristic for {alpha}: m - c - f + 1 = {twice}'
        logger.error(err_msg)
        raise WeightSystemError(err_msg)
    return twice // 2


def exponent_genus(alpha: Permutation) -> int:
    """The convention g = m - f + 2, which makes N^(f-1) = N^(m-g+1)."""
    return alpha.m - face_count(alpha) + 2


# connectivity

def _first_invariant_interval(alpha: Permutation) -> tuple[int, int] | None:
    m = alpha.m
    for a in range(1, m + 1):
        low, high = m + 1, 0
        for b in range(a, m + 1):
            low = min(low, alpha(b))
            high = max(high, alpha(b))
            if (a, b) == (1, m):
                break
            if low >= a and high <= b:
                return a, b
    return None


def is_connected(alpha: Permutation) -> bool:
    """True iff no proper interval of legs is mapped into itself."""
    return alpha.m > 0 and _first_invariant_interval(alpha) is None


@lru_cache(maxsize=65536)
def interval_decomposition(alpha: Permutation) -> tuple[Permutation, ...]:
    """Connected blocks: the leftmost shortest invariant interval first, then its complement."""
    if alpha.m == 0:
        return ()
    interval = _first_invariant_interval(alpha)
    if interval is None:
        return (alpha,)
    a, b = interval
    inside = range(a, b + 1)
    outside = [i for i in range(1, alpha.m + 1) if not a <= i <= b]
    return interval_decomposition(restrict_legs(alpha, inside)) + interval_decomposition(
        restrict_legs(alpha, outside)
    )


# canonical classes

def shift_conjugate(alpha: Permutation, k: int) -> Permutation:
    """sigma^-k alpha sigma^k for the standard cycle sigma."""
    m = alpha.m
    if m == 0:
        return alpha
    return Permutation(
        tuple((alpha((i - 1 + k) % m + 1) - 1 - k) % m + 1 for i in range(1, m + 1))
    )


@lru_cache(maxsize=65536)
def canonical_cyclic_class(alpha: Permutation) -> CyclicClass:
    if alpha.m == 0:
        return CyclicClass(alpha)
    return CyclicClass(min(shift_conjugate(alpha, k) for k in range(alpha.m)))


@lru_cache(maxsize=65536)
def canonical_rotational_class(alpha: Permutation) -> RotationalClass:
    return RotationalClass(
        tuple(sorted(canonical_cyclic_class(block) for block in interval_decomposition(alpha)))
    )


# restriction

def restrict_legs(alpha: Permutation, legs: Iterable[int]) -> Permutation:
    """Each kept leg goes to the next element of its orbit that is kept; relabel in order."""
    kept = sorted(set(legs))
    if not kept:
        return identity(0)
    position = {leg: i for i, leg in enumerate(kept, start=1)}
    images = []
    for leg in kept:
        nxt = alpha(leg)
        while nxt not in position:
            nxt = alpha(nxt)
        images.append(position[nxt])
    return Permutation(tuple(images))


def restrict_cycles(alpha: Permutation, chosen: Iterable[Sequence[int]]) -> Permutation:
    return restrict_legs(alpha, (leg for cycle in chosen for leg in cycle))


def transposition_conjugate(alpha: Permutation, k: int) -> Permutation:
    """tau alpha tau for tau = (k, k+1)."""
    def tau(i: int) -> int:
        return k + 1 if i == k else k if i == k + 1 else i

    return Permutation(tuple(tau(alpha(tau(i))) for i in range(1, alpha.m + 1)))


def block_labels(alpha: Permutation, by_length: bool = False) -> tuple[Permutation, list[int]]:
    """Target concatenation of standard cycles and the label of every leg in it.

    The cycles of ``alpha`` become consecutive blocks, ordered by minimum (or by
    length, then minimum); inside a block the cycle is read from its minimum.
    """
    ordered = cycles(alpha)
    if by_length:
        ordered = sorted(ordered, key=lambda cycle: (len(cycle), cycle[0]))
    labels = [0] * alpha.m
    start = 1
    for cycle in ordered:
        for j, leg in enumerate(cycle):
            labels[leg - 1] = start + j
        start += len(cycle)
    target = concatenate(*(standard_cycle(len(cycle)) for cycle in ordered))
    return target, labels


def bubble_positions(labels: Sequence[int]) -> Iterator[int]:
    """Adjacent swaps sorting ``labels``; yields the 1-based k of each swap of k and k+1."""
    current = list(labels)
    swapped = True
    while swapped:
        swapped = False
        for k in range(1, len(current)):
            if current[k - 1] > current[k]:
                yield k
                current[k - 1], current[k] = current[k], current[k - 1]
                swapped = True


# accents and monotonicity

def accents(alpha: Permutation) -> int:
    return sum(1 for i in range(1, alpha.m + 1) if alpha(i) > i)


def cycle_accents(alpha: Permutation, cycle: Sequence[int]) -> int:
    return sum(1 for leg in cycle if alpha(leg) > leg)


def cycle_is_positive(cycle: Sequence[int]) -> bool:
    return len(cycle) == 1 or _sequence_accents(cycle) == len(cycle) - 1


def cycle_is_negative(cycle: Sequence[int]) -> bool:
    return len(cycle) == 1 or _sequence_accents(cycle) == 1


def _sequence_accents(cycle: Sequence[int]) -> int:
    return sum(1 for i, leg in enumerate(cycle) if cycle[(i + 1) % len(cycle)] > leg)


def is_positive(alpha: Permutation) -> bool:
    return all(cycle_is_positive(cycle) for cycle in cycles(alpha))


def is_negative(alpha: Permutation) -> bool:
    return all(cycle_is_negative(cycle) for cycle in cycles(alpha))


def is_monotone(alpha: Permutation) -> bool:
    return all(cycle_is_positive(c) or cycle_is_negative(c) for c in cycles(alpha))


def monotonicity_class(alpha: Permutation) -> str:
    """``positive`` or ``negative`` when exactly one applies, ``monotone`` when
    every cycle is one of the two (including permutations that are both), else ``mixed``."""
    positive, negative = is_positive(alpha), is_negative(alpha)
    if positive and not negative:
        return 'positive'
    if negative and not positive:
        return 'negative'
    if is_monotone(alpha):
        return 'monotone'
    return 'mixed'


# enumeration

def _cycles_through(first: int, rest: Sequence[int], length: int) -> Iterator[tuple[int, ...]]:
    for others in itertools.permutations(rest, length - 1):
        yield (first,) + others


def _generate(remaining: list[int], choose_lengths, positivity: str | None) -> Iterator[list]:
    if not remaining:
        yield []
        return
    first, rest = remaining[0], remaining[1:]
    for length, next_chooser in choose_lengths(len(remaining)):
        for cycle in _cycles_through(first, rest, length):
            if positivity == 'positive' and not cycle_is_positive(cycle):
                continue
            if positivity == 'negative' and not cycle_is_negative(cycle):
                continue
            if positivity == 'monotone' and not (
                cycle_is_positive(cycle) or cycle_is_negative(cycle)
            ):
                continue
            used = set(cycle)
            left = [leg for leg in rest if leg not in used]
            for tail in _generate(left, next_chooser, positivity):
                yield [cycle] + tail


def permutations_of_type(partition: Partition, positivity: str | None = None) -> Iterator[Permutation]:
    """All permutations of cycle type ``partition``."""
    def chooser(counts: Counter):
        def choose(available: int):
            for length in sorted(counts):
                if counts[length] and length <= available:
                    left = counts.copy()
                    left[length] -= 1
                    yield length, chooser(+left)
        return choose

    m = partition.weight
    for cyc in _generate(list(range(1, m + 1)), chooser(Counter(partition.parts)), positivity):
        yield from_cycles(cyc, m)


def permutations_with_cycles(
    m: int, lengths: Iterable[int] | None = None, positivity: str | None = None
) -> Iterator[Permutation]:
    """Permutations of m legs whose cycle lengths lie in ``lengths`` (all when None)."""
    allowed = None if lengths is None else set(lengths)

    def choose(available: int):
        for length in range(1, available + 1):
            if allowed is None or length in allowed:
                yield length, choose

    for cyc in _generate(list(range(1, m + 1)), choose, positivity):
        yield from_cycles(cyc, m)


def all_permutations(m: int) -> Iterator[Permutation]:
    for values in itertools.permutations(range(1, m + 1)):
        yield Permutation(values)


# intersection graph

def intersection_graph(alpha: Permutation) -> nx.Graph:
    """Cycles as vertices; an edge joins two cycles whose restriction is connected."""
    graph = nx.Graph()
    cycs = cycles(alpha)
    for i, cycle in enumerate(cycs):
        graph.add_node(i, cycle=cycle)
    for i, j in itertools.combinations(range(len(cycs)), 2):
        if is_connected(restrict_cycles(alpha, [cycs[i], cycs[j]])):
            graph.add_edge(i, j)
    return graph


def chromatic_polynomial(graph: nx.Graph, var: Var = CHROMATIC) -> Poly:
    """Deletion-contraction: chi(G) = chi(G - e) - chi(G / e)."""
    x = Poly.var(var)
    if graph.number_of_edges() == 0:
        return x ** graph.number_of_nodes()
    if not nx.is_connected(graph):
        result = Poly.one()
        for component in nx.connected_components(graph):
            result = result * chromatic_polynomial(graph.subgraph(component).copy(), var)
        return result
    u, v = next(iter(graph.edges()))
    deleted = graph.copy()
    deleted.remove_edge(u, v)
    contracted = nx.contracted_nodes(graph, u, v, self_loops=False)
    return chromatic_polynomial(deleted, var) - chromatic_polynomial(contracted, var)
