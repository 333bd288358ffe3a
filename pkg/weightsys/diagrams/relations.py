"""Generalized Vassiliev elements: moving a free leg around the legs of a cycle.

A term is built by deleting the free leg (its cycle neighbours are joined)
and inserting a fresh leg into a gap of the remaining m-1 legs, with the old
neighbours restored.  Gap g means the new leg gets label g and every label
from g on moves up by one, so "before leg y" is gap pos(y) and "after leg y"
is gap pos(y) + 1.
"""
import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable
from typing import Iterable
from typing import Iterator

from loguru import logger

from weightsys.core.config import DEFAULT_BOUND
from weightsys.core.config import DEFAULT_THREADS
from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import RelationError
from weightsys.diagrams.linalg import RowSpace
from weightsys.diagrams.perm import CyclicClass
from weightsys.diagrams.perm import Partition
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import cycles
from weightsys.diagrams.perm import face_count
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import permutations_of_type
from weightsys.diagrams.perm import shift_conjugate
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import n_poly
from weightsys.diagrams.schema import CheckReport

Term = tuple[int, Permutation]


class DiagramCombo:
    """Rational combination of permutations with a common number of legs."""

    def __init__(self, terms: Iterable[tuple[Fraction | int, Permutation]] = (), source: str = ''):
        self.terms: dict[Permutation, Fraction] = {}
        self.source = source
        for coeff, perm in terms:
            self.add(perm, coeff)

    def add(self, perm: Permutation, coeff: Fraction | int):
        total = self.terms.get(perm, 0) + Fraction(coeff)
        if total:
            self.terms[perm] = total
        else:
            self.terms.pop(perm, None)

    def __iter__(self) -> Iterator[tuple[Permutation, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def by_class(self) -> dict[CyclicClass, Fraction]:
        classes: dict[CyclicClass, Fraction] = {}
        for perm, coeff in self.terms.items():
            cls = canonical_cyclic_class(perm)
            classes[cls] = classes.get(cls, 0) + coeff
        return {cls: c for cls, c in sorted(classes.items()) if c}

    def term_key(self) -> tuple:
        """Permutation terms up to an overall sign, for deduplication."""
        items = list(self)
        if not items:
            return ()
        sign = 1 if items[0][1] > 0 else -1
        return tuple((perm, coeff * sign) for perm, coeff in items)

    def apply(self, functional: Callable[[Permutation], Poly]) -> Poly:
        total = Poly.zero()
        for perm, coeff in self:
            total = total + functional(perm) * coeff
        return total

    def to_json(self) -> list[dict]:
        return [{'coeff': str(coeff), 'permutation': format_cycles(perm)} for perm, coeff in self]

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return ' '.join(
            f'{"+" if coeff > 0 else "-"}{abs(coeff)}*{format_cycles(perm)}' for perm, coeff in self
        )


def delete_leg(alpha: Permutation, leg: int) -> tuple[Permutation, int | None, int | None]:
    """Remove ``leg``, joining its cycle neighbours; returns the new neighbours (None for a fixed leg)."""
    if alpha(leg) == leg:
        pred = succ = None
    else:
        back = {v: i for i, v in enumerate(alpha.map, start=1)}
        pred, succ = back[leg], alpha(leg)
    images = {}
    for i in range(1, alpha.m + 1):
        if i == leg:
            continue
        images[i] = succ if i == pred else alpha(i)

    def relabel(i: int) -> int:
        return i - 1 if i > leg else i

    beta = Permutation(tuple(relabel(images[i]) for i in range(1, alpha.m + 1) if i != leg))
    return beta, (relabel(pred) if pred else None), (relabel(succ) if succ else None)


def insert_leg(beta: Permutation, gap: int, pred: int | None, succ: int | None) -> Permutation:
    """Insert a leg with label ``gap`` between ``pred`` and ``succ`` (a fixed leg when both are None)."""
    def shift(i: int) -> int:
        return i + 1 if i >= gap else i

    images = {shift(i): shift(beta(i)) for i in range(1, beta.m + 1)}
    if pred is None:
        images[gap] = gap
    else:
        images[shift(pred)] = gap
        images[gap] = shift(succ)
    return Permutation(tuple(images[i] for i in range(1, beta.m + 2)))


def _cycle_of(alpha: Permutation, leg: int) -> tuple[int, ...]:
    for cycle in cycles(alpha):
        if leg in cycle:
            return cycle
    raise RelationError(f'Leg {leg} is not in 1..{alpha.m}')


def _moves(alpha: Permutation, free_leg: int, around: Iterable[int]) -> list[Term]:
    beta, pred, succ = delete_leg(alpha, free_leg)

    def relabel(i: int) -> int:
        return i - 1 if i > free_leg else i

    out = []
    for y in sorted(relabel(leg) for leg in around):
        out.append((1, insert_leg(beta, y, pred, succ)))
        out.append((-1, insert_leg(beta, y + 1, pred, succ)))
    return out


def one_hyper_arc_terms(alpha: Permutation, free_leg: int) -> list[Term]:
    cycle = _cycle_of(alpha, free_leg)
    return _moves(alpha, free_leg, (leg for leg in cycle if leg != free_leg))


def two_hyper_arc_terms(alpha: Permutation, free_leg: int, target: tuple[int, ...]) -> list[Term]:
    if free_leg in target:
        err_msg = f'Free leg {free_leg} lies on the target cycle {target} of {alpha}'
        logger.error(err_msg)
        raise RelationError(err_msg)
    return _moves(alpha, free_leg, target)


def one_hyper_arc_element(alpha: Permutation, cycle: int, free_leg: int) -> DiagramCombo:
    """Free leg moved around the other legs of its own cycle (number ``cycle`` of ``cycles(alpha)``)."""
    chosen = _select_cycle(alpha, cycle)
    if free_leg not in chosen:
        err_msg = f'Leg {free_leg} is not in cycle {chosen} of {alpha}'
        logger.error(err_msg)
        raise RelationError(err_msg)
    return DiagramCombo(
        one_hyper_arc_terms(alpha, free_leg),
        source=f'one-arc {format_cycles(alpha)} leg {free_leg}',
    )


def two_hyper_arc_element(alpha: Permutation, free: tuple[int, int], target: int) -> DiagramCombo:
    """Free leg ``free = (cycle, leg)`` moved around the legs of cycle number ``target``."""
    free_cycle, free_leg = free
    if free_cycle == target:
        err_msg = f'Free leg and target lie on the same cycle {target} of {alpha}'
        logger.error(err_msg)
        raise RelationError(err_msg)
    own = _select_cycle(alpha, free_cycle)
    if free_leg not in own:
        raise RelationError(f'Leg {free_leg} is not in cycle {own} of {alpha}')
    target_cycle = _select_cycle(alpha, target)
    return DiagramCombo(
        two_hyper_arc_terms(alpha, free_leg, target_cycle),
        source=f'two-arc {format_cycles(alpha)} leg {free_leg} around {target_cycle}',
    )


def _select_cycle(alpha: Permutation, index: int) -> tuple[int, ...]:
    cycs = cycles(alpha)
    if not 0 <= index < len(cycs):
        raise RelationError(f'{alpha} has no cycle number {index}')
    return cycs[index]


def relation_elements(alpha: Permutation, kinds: tuple[str, ...] = ('one', 'two')) -> Iterator[DiagramCombo]:
    cycs = cycles(alpha)
    for i, own in enumerate(cycs):
        for leg in own:
            if 'one' in kinds and len(own) > 1:
                yield one_hyper_arc_element(alpha, i, leg)
            if 'two' in kinds:
                for j in range(len(cycs)):
                    if j != i:
                        yield two_hyper_arc_element(alpha, (i, leg), j)


def _check_bound(m: int, bound: int):
    if m > bound:
        err_msg = f'm={m} exceeds the bound {bound} for exhaustive enumeration'
        logger.error(err_msg)
        raise BoundExceeded(err_msg)


def enumerate_relations(
    m: int,
    partition: Partition | None = None,
    kinds: tuple[str, ...] = ('one', 'two'),
    bound: int = DEFAULT_BOUND,
) -> Iterator[DiagramCombo]:
    """Every relation element on m legs, once up to an overall sign; elements whose terms cancel are skipped."""
    _check_bound(m, bound)
    perms = permutations_of_type(partition) if partition else all_permutations(m)
    seen = set()
    for alpha in perms:
        for element in relation_elements(alpha, kinds):
            key = element.term_key()
            if not key or key in seen:
                continue
            seen.add(key)
            yield element


def face_count_functional(alpha: Permutation) -> Poly:
    """N^f(alpha): the weight system given by the number of boundary components."""
    if alpha.m == 0:
        return Poly.one()
    return n_poly() ** face_count(alpha)


def check_functional(
    functional: Callable[[Permutation], Poly],
    m: int,
    threads: int = DEFAULT_THREADS,
    partition: Partition | None = None,
    name: str = 'functional',
    bound: int = DEFAULT_BOUND,
) -> CheckReport:
    """Evaluate ``functional`` on every relation element on m legs and collect the nonzero ones."""
    elements = list(enumerate_relations(m, partition, bound=bound))

    def value(element: DiagramCombo) -> Poly:
        return element.apply(functional)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(value, elements))
    else:
        values = [value(element) for element in elements]
    report = CheckReport(
        name=f'{name} relations m={m}',
        checked=len(elements),
        violations=[f'{e.source}: {v}' for e, v in zip(elements, values) if v],
    )
    logger.bind(payload=report.model_dump()).info(
        f'{report.name}: {report.checked} elements, {len(report.violations)} violations'
    )
    return report


def face_count_pairing(terms: list[Term]) -> bool:
    """The signed terms cancel in pairs with equal numbers of boundary components."""
    balance = Counter()
    for sign, perm in terms:
        balance[face_count(perm)] += sign
    return not any(balance.values())


def pairing_report(m: int, bound: int = DEFAULT_BOUND) -> CheckReport:
    _check_bound(m, bound)
    report = CheckReport(name=f'two-arc face pairing m={m}')
    for alpha in all_permutations(m):
        cycs = cycles(alpha)
        for own, target in itertools.permutations(cycs, 2):
            for leg in own:
                report.checked += 1
                if not face_count_pairing(two_hyper_arc_terms(alpha, leg, target)):
                    report.violations.append(f'{format_cycles(alpha)} leg {leg} around {target}')
    return report


def shift_elements_in_span(m: int, bound: int = DEFAULT_BOUND) -> CheckReport:
    """alpha - (its cyclic shift) lies in the span of the relation elements, in permutation coordinates."""
    _check_bound(m, bound)
    perms = list(all_permutations(m))
    column = {perm: i for i, perm in enumerate(perms)}
    span = RowSpace()
    for alpha in perms:
        for element in relation_elements(alpha):
            span.add({column[p]: c for p, c in element.terms.items()})
    report = CheckReport(name=f'shift in relation span m={m}')
    for alpha in perms:
        shifted = shift_conjugate(alpha, 1)
        if shifted == alpha:
            continue
        report.checked += 1
        if not span.contains({column[alpha]: 1, column[shifted]: -1}):
            report.violations.append(format_cycles(alpha))
    return report
