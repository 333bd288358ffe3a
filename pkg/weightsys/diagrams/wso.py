"""Universal so-weight system on permutations.

A vertex j of the extended permutation graph carries the generator
F_{x y} of so(N): its head half-edge holds the row index x, its tail the
column index y.  An edge identifies the indices at its two ends; edges joining
two heads or two tails identify an index with its bar.  Swapping two adjacent
vertices produces four commutator terms

    [F_ab, F_cd] = d_bc F_ad - d_ad F_cb - d_{b,d'} F_{a,c'} + d_{a',c} F_{d',b}

each one a surgery on the graph: the two vertices merge into one, the two
consumed half-edges are glued, and a glued pair that was already an edge closes
into a free index loop, worth N.  Flipping a vertex (F_xy = -F_y'x') turns
every extended graph into an ordinary one up to sign.
"""
import itertools
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
from loguru import logger

from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.cache import MemoStore
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import block_labels
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import cycles
from weightsys.diagrams.perm import fixed_points
from weightsys.diagrams.perm import format_one_line
from weightsys.diagrams.perm import interval_decomposition
from weightsys.diagrams.perm import inverse
from weightsys.diagrams.perm import standard_cycle
from weightsys.diagrams.poly import C
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import n_poly
from weightsys.diagrams.wgl import casimir_vars
from weightsys.diagrams.wgl import swap_chain

HEAD, TAIL = 0, 1

SO_MEMO = MemoStore('so')


def head(v: int) -> int:
    return 2 * v + HEAD


def tail(v: int) -> int:
    return 2 * v + TAIL


@dataclass(frozen=True, slots=True)
class ExtendedPermGraph:
    """``mate[h]`` is the half-edge joined to ``h``; half-edge ``2v + slot`` sits on vertex v (0-based)."""

    mate: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.mate) // 2

    @classmethod
    def from_permutation(cls, alpha: Permutation) -> 'ExtendedPermGraph':
        mate = [0] * (2 * alpha.m)
        for j in range(1, alpha.m + 1):
            t, h = tail(j - 1), head(alpha(j) - 1)
            mate[t], mate[h] = h, t
        return cls(tuple(mate))

    def edges(self) -> list[tuple[int, int]]:
        return [(h, g) for h, g in enumerate(self.mate) if h < g]

    def two_head_count(self) -> int:
        return sum(1 for h, g in self.edges() if h % 2 == HEAD and g % 2 == HEAD)

    def two_tail_count(self) -> int:
        return sum(1 for h, g in self.edges() if h % 2 == TAIL and g % 2 == TAIL)

    def validate(self):
        for h, g in enumerate(self.mate):
            if g == h or self.mate[g] != h:
                raise WeightSystemError(f'Half-edge {h} is not properly paired in {self.mate}')
        if self.two_head_count() != self.two_tail_count():
            raise WeightSystemError(
                f'Unbalanced graph: {self.two_head_count()} two-head edges, '
                f'{self.two_tail_count()} two-tail edges'
            )

    def is_ordinary(self) -> bool:
        return all((h % 2) != (g % 2) for h, g in self.edges())

    def merge(self, A: int, head_src: int, tail_src: int, P: int, Q: int) -> tuple[int, 'ExtendedPermGraph']:
        """
        Replace vertices A and A+1 by one vertex at position A.

        The new head takes the edge of ``head_src``, the new tail the edge of
        ``tail_src``; half-edges P and Q are glued.  Returns the number of closed
        loops (0 or 1) and the graph on m-1 vertices.
        """
        B = A + 1

        def rename(h: int) -> int:
            if h == head_src:
                return head(A)
            if h == tail_src:
                return tail(A)
            v, slot = divmod(h, 2)
            return h if v < A else 2 * (v - 1) + slot

        def partner(h: int) -> int:
            g = self.mate[h]
            if g == P:
                return self.mate[Q]
            if g == Q:
                return self.mate[P]
            return g

        loops = 1 if self.mate[P] == Q else 0
        mate = [0] * (2 * (self.m - 1))
        for h in range(2 * self.m):
            if h in (P, Q) or (h // 2 in (A, B) and h not in (head_src, tail_src)):
                continue
            mate[rename(h)] = rename(partner(h))
        return loops, ExtendedPermGraph(tuple(mate))


def normalize_extended(graph: ExtendedPermGraph, orient: bool = True) -> tuple[int, Permutation]:
    """
    Flip vertices until every edge runs from a tail to a head.

    Each cycle is walked from its smallest vertex, leaving through its tail;
    a vertex entered through its tail is flipped (sign -1).  With ``orient``
    a cycle whose minimum maps to the larger of its two neighbours is
    reversed, at the cost of (-1)^length.
    """
    graph.validate()
    m = graph.m
    images = [0] * m
    seen = [False] * m
    sign = 1
    for start in range(m):
        if seen[start]:
            continue
        v = start
        exit_half = tail(v)
        seen[v] = True
        while True:
            entered = graph.mate[exit_half]
            w, slot = divmod(entered, 2)
            images[v] = w + 1
            if w == start:
                break
            seen[w] = True
            if slot == TAIL:
                sign = -sign
                exit_half = head(w)
            else:
                exit_half = tail(w)
            v = w
    beta = Permutation(tuple(images))
    if orient:
        sign, beta = _orient_cycles(sign, beta)
    return sign, beta


def _orient_cycles(sign: int, beta: Permutation) -> tuple[int, Permutation]:
    images = list(beta.map)
    back = inverse(beta)
    for cycle in cycles(beta):
        start = cycle[0]
        if back(start) < beta(start):
            for i in cycle:
                images[i - 1] = back(i)
            sign *= (-1) ** len(cycle)
    return sign, Permutation(tuple(images))


def so_swap_terms(alpha: Permutation, k: int) -> list[tuple[Poly, Permutation]]:
    """
    The four commutator terms of the swap at positions k, k+1, normalized.

    Together with the swapped permutation they give
    w(alpha) = w(tau alpha tau) + sum of coefficient * w(term).
    """
    graph = ExtendedPermGraph.from_permutation(alpha)
    A, B = k - 1, k
    a, b, c, d = head(A), tail(A), head(B), tail(B)
    n = n_poly()
    out = []
    for sign, head_src, tail_src, P, Q in (
        (1, a, d, b, c),
        (-1, c, b, a, d),
        (-1, a, c, b, d),
        (1, d, b, a, c),
    ):
        loops, merged = graph.merge(A, head_src, tail_src, P, Q)
        flip_sign, beta = normalize_extended(merged)
        out.append((n ** loops * (sign * flip_sign), beta))
    return out


def memo_key(alpha: Permutation) -> str:
    return format_one_line(canonical_cyclic_class(alpha).canonical)


def eval_wso(alpha: Permutation) -> Poly:
    if fixed_points(alpha):
        return Poly.zero()
    result = Poly.one()
    for block in interval_decomposition(alpha):
        result = result * _eval_connected(block)
        if not result:
            break
    return result


def _eval_connected(block: Permutation) -> Poly:
    canonical = canonical_cyclic_class(block).canonical
    return SO_MEMO.get_or_compute(memo_key(canonical), lambda: _reduce(canonical))


def _reduce(alpha: Permutation) -> Poly:
    if alpha == standard_cycle(alpha.m):
        if alpha.m % 2 == 0:
            return C(alpha.m)
        return odd_cycle_bootstrap(alpha.m)
    target, labels = block_labels(alpha)
    value = eval_wso(target)
    value = value + _chain_corrections(alpha, labels)
    logger.debug('so reduced {}', alpha)
    return value


def _chain_corrections(alpha: Permutation, labels: Sequence[int]) -> Poly:
    total = Poly.zero()
    for k, current in swap_chain(alpha, labels):
        for coefficient, term in so_swap_terms(current, k):
            total = total + coefficient * eval_wso(term)
    return total


def odd_cycle_bootstrap(m: int) -> Poly:
    """
    w_so of the standard cycle of odd length m.

    The chain of swaps from the reversed cycle to the standard one gives
    w(reversed) = w(standard) + D, and w(reversed) = -w(standard).
    """
    if m % 2 == 0:
        err_msg = f'Odd cycle bootstrap called with even m={m}'
        logger.error(err_msg)
        raise WeightSystemError(err_msg)
    if m == 1:
        return Poly.zero()
    reversed_cycle = inverse(standard_cycle(m))
    labels = [1] + list(range(m, 1, -1))
    delta = _chain_corrections(reversed_cycle, labels)
    value = -delta / 2
    logger.debug('so odd cycle {}: {}', m, value)
    return value


# the standard representation

def boundary_count_state(alpha: Permutation, state: Sequence[int]) -> int:
    """
    Boundary components of the surface where legs in state -1 carry a half-twist.

    Every leg j has two boundary points j- and j+; the arc between legs joins
    j+ to (j+1)-, and the band of leg i runs from i+ (i- when twisted) to
    alpha(i)- (alpha(i)+ when that leg is twisted).
    """
    m = alpha.m
    graph = nx.MultiGraph()
    for j in range(1, m + 1):
        graph.add_edge((j, '+'), (j % m + 1, '-'))
    for i in range(1, m + 1):
        start = (i, '+') if state[i - 1] == 1 else (i, '-')
        j = alpha(i)
        end = (j, '-') if state[j - 1] == 1 else (j, '+')
        graph.add_edge(start, end)
    return nx.number_connected_components(graph)


def so_state_sum(alpha: Permutation) -> Poly:
    """Sum over all 2^m states of sign(s) * N^(f(alpha_s) - 1)."""
    if alpha.m == 0:
        return Poly.one()
    n = n_poly()
    total = Poly.zero()
    for state in itertools.product((1, -1), repeat=alpha.m):
        sign = -1 if state.count(-1) % 2 else 1
        total = total + n ** (boundary_count_state(alpha, state) - 1) * sign
    return total


def standard_cycle_value(k: int) -> Poly:
    """Trace of the standard cycle of length k on the vector representation of so(N)."""
    n = n_poly()
    if k % 2 == 0:
        numerator = (n - 1) ** k - 1 + n ** 2
    else:
        numerator = (n - 1) ** k + 1 - n
    quotient, remainder = numerator.divmod_univariate(n, N)
    if remainder:
        raise WeightSystemError(f'Standard cycle value of length {k} is not a polynomial')
    return quotient


def so_standard_substitution(value: Poly) -> Poly:
    """C_k -> P_k(N) for the even Casimirs."""
    return value.substitute({v: standard_cycle_value(v.index) for v in casimir_vars(value)})
