"""Universal gl-weight system on permutations.

Values live in Q[N, C_1, C_2, ...].  Evaluation splits a permutation into its
connected blocks, and reduces every connected block to a concatenation of
standard cycles by adjacent transpositions, collecting the commutator terms of

    E_ab E_cd = E_cd E_ab + d_bc E_ad - d_da E_cb

at every step.  Each commutator term has one leg less, so the recursion ends.
"""
from dataclasses import dataclass
from dataclasses import field
from typing import Iterator
from typing import Sequence

from loguru import logger

from weightsys.core.exceptions import SwapError
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.cache import MemoStore
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import block_labels
from weightsys.diagrams.perm import bubble_positions
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import format_one_line
from weightsys.diagrams.perm import interval_decomposition
from weightsys.diagrams.perm import is_standard_cycle
from weightsys.diagrams.perm import transposition_conjugate
from weightsys.diagrams.poly import C
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import Var
from weightsys.diagrams.poly import n_poly

STRATEGIES = ('bubble', 'length')

GL_MEMO = MemoStore('gl')


def merge_terms(alpha: Permutation, k: int) -> list[tuple[Poly, Permutation]]:
    """
    The two commutator terms of the swap at positions k, k+1, with signs.

    The first identifies the column index of k with the row index of k+1 and
    drops leg k+1; the second identifies the column index of k+1 with the row
    index of k and drops leg k.  An index that loses both of its occurrences is
    summed freely and contributes a factor N.
    """
    p, q = alpha(k), alpha(k + 1)
    plus = _merge(alpha, keep=k, drop=k + 1, keep_image=q, drop_image=p)
    minus = _merge(alpha, keep=k + 1, drop=k, keep_image=p, drop_image=q)
    n = n_poly()
    return [
        (n if p == k + 1 else Poly.one(), plus),
        (-n if q == k else -Poly.one(), minus),
    ]


def _merge(alpha: Permutation, keep: int, drop: int, keep_image: int, drop_image: int) -> Permutation:
    images = {i: alpha(i) for i in range(1, alpha.m + 1) if i != drop}
    images[keep] = keep_image
    for i, v in images.items():
        if v == drop:
            images[i] = drop_image
    legs = sorted(images)
    position = {leg: j for j, leg in enumerate(legs, start=1)}
    return Permutation(tuple(position[images[leg]] for leg in legs))


def is_adjacent_two_cycle(alpha: Permutation, k: int) -> bool:
    return alpha(k) == k + 1 and alpha(k + 1) == k


def swap_step(alpha: Permutation, k: int) -> tuple[Permutation, list[tuple[Poly, Permutation]]]:
    """w(alpha) = w(tau alpha tau) + sum of coefficient * w(term) for tau = (k, k+1)."""
    if not 1 <= k < alpha.m:
        err_msg = f'Swap position {k} out of range for m={alpha.m}'
        logger.error(err_msg)
        raise SwapError(err_msg)
    if is_adjacent_two_cycle(alpha, k):
        err_msg = f'Swap at {k} is vacuous on {alpha}: ({k},{k + 1}) is a cycle'
        logger.error(err_msg)
        raise SwapError(err_msg)
    return transposition_conjugate(alpha, k), merge_terms(alpha, k)


def swap_chain(alpha: Permutation, labels: Sequence[int]) -> Iterator[tuple[int, Permutation]]:
    """
    Walk from ``alpha`` to its relabeling by ``labels`` with adjacent swaps.

    Yields ``(k, current)`` before every swap that changes the permutation;
    adjacent 2-cycles only exchange their labels.
    """
    current = alpha
    for k in bubble_positions(labels):
        if is_adjacent_two_cycle(current, k):
            continue
        yield k, current
        current = transposition_conjugate(current, k)


@dataclass
class TraceStep:
    k: int
    before: str
    corrections: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class ReductionTrace:
    permutation: str
    blocks: list[str]
    targets: list[str] = field(default_factory=list)
    steps: list[TraceStep] = field(default_factory=list)
    value: Poly | None = None


def _check_strategy(strategy: str):
    if strategy not in STRATEGIES:
        err_msg = f'Unknown reduction strategy "{strategy}", expected one of {STRATEGIES}'
        logger.error(err_msg)
        raise WeightSystemError(err_msg)


def memo_key(alpha: Permutation, strategy: str = 'bubble') -> str:
    key = format_one_line(canonical_cyclic_class(alpha).canonical)
    return key if strategy == 'bubble' else f'{strategy}:{key}'


def eval_wgl(alpha: Permutation, strategy: str = 'bubble') -> Poly:
    _check_strategy(strategy)
    result = Poly.one()
    for block in interval_decomposition(alpha):
        result = result * _eval_connected(block, strategy)
    return result


def _eval_connected(block: Permutation, strategy: str) -> Poly:
    if block.m == 1:
        return C(1)
    if is_standard_cycle(block):
        return C(block.m)
    canonical = canonical_cyclic_class(block).canonical
    return GL_MEMO.get_or_compute(
        memo_key(canonical, strategy), lambda: _reduce(canonical, strategy)
    )


def _reduce(alpha: Permutation, strategy: str) -> Poly:
    target, labels = block_labels(alpha, by_length=strategy == 'length')
    value = eval_wgl(target, strategy)
    steps = 0
    for k, current in swap_chain(alpha, labels):
        for coefficient, term in merge_terms(current, k):
            value = value + coefficient * eval_wgl(term, strategy)
        steps += 1
    logger.debug('gl reduced {} in {} swaps', alpha, steps)
    return value


def reduce_strategy(alpha: Permutation, strategy: str = 'bubble') -> ReductionTrace:
    """Evaluation with the swap chain of every non-standard block spelled out."""
    _check_strategy(strategy)
    blocks = interval_decomposition(alpha)
    trace = ReductionTrace(permutation=str(alpha), blocks=[str(b) for b in blocks])
    for block in blocks:
        if block.m == 1 or is_standard_cycle(block):
            continue
        target, labels = block_labels(block, by_length=strategy == 'length')
        trace.targets.append(str(target))
        for k, current in swap_chain(block, labels):
            trace.steps.append(TraceStep(
                k=k,
                before=str(current),
                corrections=[(str(c), str(term)) for c, term in merge_terms(current, k)],
            ))
    trace.value = eval_wgl(alpha, strategy)
    logger.bind(payload=[(s.k, s.before, s.corrections) for s in trace.steps]).debug(
        'gl trace of {}: {} swaps', alpha, len(trace.steps)
    )
    return trace


def casimir_vars(value: Poly) -> list[Var]:
    return sorted((v for v in value.variables() if v.kind == 'C'), key=lambda v: v.index)


def standard_substitution(value: Poly) -> Poly:
    """C_k -> N^(k-1): the action on the standard representation."""
    n = n_poly()
    return value.substitute({v: n ** (v.index - 1) for v in casimir_vars(value)})


def gl1_specialization(value: Poly, c: Poly | int) -> Poly:
    """N -> 1 and C_k -> c^k; every permutation of m legs gives c^m."""
    c = Poly.coerce(c)
    rules = {v: c ** v.index for v in casimir_vars(value)}
    rules[N] = Poly.one()
    return value.substitute(rules)
