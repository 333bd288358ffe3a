"""Specializations of the weight systems to polynomials in power sums.

X0 keeps the leading part of w_gl after C_k -> p_k N^(k-1); Y0 does the same
for w_so after C_k -> p_k P_k(N).  Both are Hopf algebra homomorphisms when
every p_k is primitive, and at p_k = x they give chromatic polynomials of the
intersection graph.
"""
import itertools
import math
from typing import Callable
from typing import Iterator

from loguru import logger

from weightsys.core.config import DEFAULT_BOUND
from weightsys.core.exceptions import BoundExceeded
from weightsys.diagrams.perm import CHROMATIC
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import chromatic_polynomial
from weightsys.diagrams.perm import concatenate
from weightsys.diagrams.perm import cycle_accents
from weightsys.diagrams.perm import cycle_count
from weightsys.diagrams.perm import cycle_is_negative
from weightsys.diagrams.perm import cycle_is_positive
from weightsys.diagrams.perm import cycles
from weightsys.diagrams.perm import fixed_points
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import intersection_graph
from weightsys.diagrams.perm import is_monotone
from weightsys.diagrams.perm import is_positive
from weightsys.diagrams.perm import permutations_with_cycles
from weightsys.diagrams.perm import restrict_cycles
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import Var
from weightsys.diagrams.poly import aux
from weightsys.diagrams.poly import n_poly
from weightsys.diagrams.poly import p
from weightsys.diagrams.schema import CheckReport
from weightsys.diagrams.wgl import casimir_vars
from weightsys.diagrams.wgl import eval_wgl
from weightsys.diagrams.wso import eval_wso
from weightsys.diagrams.wso import standard_cycle_value

Map = Callable[[Permutation], Poly]


def _leading_part(alpha: Permutation, value: Poly) -> Poly:
    """Coefficient of N^0 in N^(c - m) * value."""
    if alpha.m == 0:
        return value
    return value.laurent_coefficient(N, cycle_count(alpha) - alpha.m, 0)


def X0(alpha: Permutation) -> Poly:
    value = eval_wgl(alpha)
    n = n_poly()
    rules = {v: p(v.index) * n ** (v.index - 1) for v in casimir_vars(value)}
    return _leading_part(alpha, value.substitute(rules))


def Y0(alpha: Permutation) -> Poly:
    if not is_monotone(alpha):
        logger.warning('Y0 of the non-monotone permutation {} is outside the homomorphism range', alpha)
    value = eval_wso(alpha)
    rules = {v: p(v.index) * standard_cycle_value(v.index) for v in casimir_vars(value)}
    return _leading_part(alpha, value.substitute(rules))


def power_sum_vars(value: Poly) -> list[Var]:
    return sorted((v for v in value.variables() if v.kind == 'p'), key=lambda v: v.index)


def coproduct_poly(value: Poly) -> Poly:
    """Coproduct with every p_k primitive: p_k -> p_k (x) 1 + 1 (x) p_k, the right factor written aux_k."""
    return value.substitute({v: p(v.index) + aux(v.index) for v in power_sum_vars(value)})


def to_right_factor(value: Poly) -> Poly:
    return value.substitute({v: aux(v.index) for v in power_sum_vars(value)})


def filtered_weight(v: Var) -> int:
    return v.index - 2 if v.kind == 'p' else 0


def _domain(kind: str, m: int) -> Iterator[Permutation]:
    if kind == 'Y0':
        return permutations_with_cycles(m, positivity='monotone')
    return all_permutations(m)


def hopf_hom_check(kind: str, m: int, bound: int = DEFAULT_BOUND) -> CheckReport:
    """
    Multiplicativity over concatenation, coproduct compatibility and the degree filtration of X0 or Y0.

    Y0 is checked on monotone permutations only.
    """
    if m > bound:
        raise BoundExceeded(f'Homomorphism check for m={m} exceeds the bound {bound}')
    mapping: Map = X0 if kind == 'X0' else Y0
    report = CheckReport(name=f'{kind} homomorphism m={m}')
    for alpha in _domain(kind, m):
        report.checked += 1
        value = mapping(alpha)
        cycs = cycles(alpha)
        split = Poly.zero()
        for mask in range(2 ** len(cycs)):
            left = restrict_cycles(alpha, [c for i, c in enumerate(cycs) if mask >> i & 1])
            right = restrict_cycles(alpha, [c for i, c in enumerate(cycs) if not mask >> i & 1])
            split = split + mapping(left) * to_right_factor(mapping(right))
        if coproduct_poly(value) != split:
            report.violations.append(f'coproduct {format_cycles(alpha)}')
        if kind == 'X0' and value.weighted_degree(filtered_weight) > m:
            report.violations.append(f'degree {format_cycles(alpha)}: {value}')
    for m1 in range(1, m):
        for alpha, beta in itertools.product(_domain(kind, m1), _domain(kind, m - m1)):
            report.checked += 1
            if mapping(concatenate(alpha, beta)) != mapping(alpha) * mapping(beta):
                report.violations.append(f'product {format_cycles(alpha)} # {format_cycles(beta)}')
    logger.bind(payload=report.model_dump()).info(
        f'{report.name}: {report.checked} checks, {len(report.violations)} violations'
    )
    return report


# chromatic specializations

def at_chromatic(value: Poly) -> Poly:
    """p_k -> x for every k."""
    x = Poly.var(CHROMATIC)
    return value.substitute({v: x for v in power_sum_vars(value)})


def chromatic_of(alpha: Permutation) -> Poly:
    return chromatic_polynomial(intersection_graph(alpha))


def x0_chromatic_expected(alpha: Permutation) -> Poly:
    return chromatic_of(alpha) if is_positive(alpha) else Poly.zero()


def y0_chromatic_expected(alpha: Permutation) -> Poly:
    """sign * 2^(number of 2-cycles) * chi; sign (-1)^l for every negative cycle of length l >= 3."""
    cycs = cycles(alpha)
    sign = 1
    for cycle in cycs:
        if len(cycle) >= 3 and cycle_is_negative(cycle) and not cycle_is_positive(cycle):
            sign *= (-1) ** len(cycle)
    two_cycles = sum(1 for cycle in cycs if len(cycle) == 2)
    return chromatic_of(alpha) * (sign * 2 ** two_cycles)


def chromatic_report(kind: str, m: int, bound: int = DEFAULT_BOUND) -> CheckReport:
    if m > bound:
        raise BoundExceeded(f'Chromatic check for m={m} exceeds the bound {bound}')
    report = CheckReport(name=f'{kind} chromatic m={m}')
    for alpha in _domain(kind, m):
        if kind == 'Y0' and fixed_points(alpha):
            continue
        report.checked += 1
        if kind == 'X0':
            actual, expected = at_chromatic(X0(alpha)), x0_chromatic_expected(alpha)
        else:
            actual, expected = at_chromatic(Y0(alpha)), y0_chromatic_expected(alpha)
        if actual != expected:
            report.violations.append(f'{format_cycles(alpha)}: {actual} vs {expected}')
    return report


# X0 on a single cycle

def x0_cycle_pattern(m: int, k: int) -> Poly:
    """sum over j < k of (-1)^j binom(k-1, j) p_(m-j)."""
    return sum((p(m - j) * ((-1) ** j * math.comb(k - 1, j)) for j in range(k)), Poly.zero())


def x0_cycle_pattern_report(max_m: int = 6) -> CheckReport:
    """X0 of every m-cycle against the binomial pattern for k = m - accents."""
    report = CheckReport(name=f'X0 cycle pattern m<={max_m}')
    for m in range(1, max_m + 1):
        for alpha in permutations_with_cycles(m, [m]):
            report.checked += 1
            k = m - cycle_accents(alpha, cycles(alpha)[0])
            value = X0(alpha)
            if value != x0_cycle_pattern(m, k):
                report.violations.append(f'{format_cycles(alpha)} (k={k}): {value}')
    logger.bind(payload=report.violations).info(
        f'{report.name}: {len(report.violations)} of {report.checked} cycles off the pattern'
    )
    return report
