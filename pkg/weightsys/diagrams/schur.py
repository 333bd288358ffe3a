"""Casimir and one-part Schur generators of the centre of U(gl(N)).

The two bases are related by the generating series identity

    1 - N u - sum_k C_k u^(k+1)
        = (a/b)^N * (1 + sum_i S_i (u/b)^i) / (1 + sum_i S_i (u/a)^i)

with a = 1 - (N+1)u/2 and b = 1 - (N-1)u/2, where C_k stands for its
Harish-Chandra image.  On a highest weight module the image of C_k is read
from the product of (1 - (x_i + (N+1)/2)u) / (1 - (x_i + (N-1)/2)u) over the
shifted weights x_i, and S_k becomes the complete homogeneous polynomial h_k(x).
"""
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from loguru import logger

from weightsys.core.config import AVERAGE_BOUND
from weightsys.core.config import DEFAULT_THREADS
from weightsys.core.exceptions import BasisOrderError
from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import face_count
from weightsys.diagrams.perm import inverse
from weightsys.diagrams.poly import C
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import S
from weightsys.diagrams.poly import Var
from weightsys.diagrams.poly import n_poly
from weightsys.diagrams.schema import FitReport
from weightsys.diagrams.series import TruncatedSeries
from weightsys.diagrams.wgl import eval_wgl

DEFAULT_ORDER = 8

# reference values of a_4 and a_6 that the fit is compared with
REFERENCE_A4 = Fraction(1, 240) * (n_poly() - 1) * (5 * n_poly() - 3)
REFERENCE_A6 = Fraction(1, 4032) * (n_poly() - 1) * (35 * n_poly() ** 2 - 28 * n_poly() + 9)


@dataclass(frozen=True)
class BasisTable:
    """``c_of_s[k]`` is C_k in N and S_1..S_k; ``s_of_c[k]`` is S_k in N and C_1..C_k (index 0 unused)."""

    order: int
    c_of_s: tuple[Poly, ...]
    s_of_c: tuple[Poly, ...]


def _series_identity(order: int) -> TruncatedSeries:
    n = n_poly()
    a = TruncatedSeries.linear(1, -(n + 1) / 2, order)
    b = TruncatedSeries.linear(1, -(n - 1) / 2, order)
    u = TruncatedSeries.variable(order)
    t1, t2 = u / b, u / a
    numerator = TruncatedSeries.constant(1, order)
    denominator = TruncatedSeries.constant(1, order)
    p1, p2 = t1, t2
    for i in range(1, order + 1):
        numerator = numerator + p1 * S(i)
        denominator = denominator + p2 * S(i)
        p1, p2 = p1 * t1, p2 * t2
    return (a / b).power(n) * numerator / denominator


@lru_cache(maxsize=16)
def build_basis_table(order: int = DEFAULT_ORDER) -> BasisTable:
    if order < 1:
        raise BasisOrderError(f'Basis table order must be positive, got {order}')
    series = _series_identity(order + 1)
    if series[1] != -n_poly():
        raise WeightSystemError(f'Series identity broken at u^1: {series[1]}')
    c_of_s = [Poly.one()] + [-series[k + 1] for k in range(1, order + 1)]

    s_of_c = [Poly.one()]
    for k in range(1, order + 1):
        s_var = Var('S', k)
        lead = c_of_s[k].coefficient_of(s_var, 1)
        if not lead.is_constant() or lead.constant_term() != k or c_of_s[k].degree_in(s_var) != 1:
            raise WeightSystemError(f'C_{k} is not k*S_{k} plus lower terms: {c_of_s[k]}')
        rest = c_of_s[k] - lead * S(k)
        lower = rest.substitute({Var('S', j): s_of_c[j] for j in range(1, k)})
        s_of_c.append((C(k) - lower) / k)
    logger.debug('Basis table built to order {}', order)
    return BasisTable(order=order, c_of_s=tuple(c_of_s), s_of_c=tuple(s_of_c))


def _table_for(value: Poly, kind: str) -> BasisTable:
    needed = max((v.index for v in value.variables() if v.kind == kind), default=1)
    return build_basis_table(max(needed, DEFAULT_ORDER))


def to_schur_basis(value: Poly, order: int | None = None) -> Poly:
    table = build_basis_table(order) if order else _table_for(value, 'C')
    rules = {}
    for v in value.variables():
        if v.kind != 'C':
            continue
        if v.index > table.order:
            err_msg = f'{v} exceeds the basis table order {table.order}'
            logger.error(err_msg)
            raise BasisOrderError(err_msg)
        rules[v] = table.c_of_s[v.index]
    return value.substitute(rules)


def to_casimir_basis(value: Poly, order: int | None = None) -> Poly:
    table = build_basis_table(order) if order else _table_for(value, 'S')
    rules = {}
    for v in value.variables():
        if v.kind != 'S':
            continue
        if v.index > table.order:
            err_msg = f'{v} exceeds the basis table order {table.order}'
            logger.error(err_msg)
            raise BasisOrderError(err_msg)
        rules[v] = table.s_of_c[v.index]
    return value.substitute(rules)


def alternate_schur(value: Poly) -> Poly:
    """S_i -> (-1)^i S_i."""
    return value.substitute({v: S(v.index) * (-1) ** v.index for v in value.variables() if v.kind == 'S'})


def inverse_sign_check(alpha: Permutation) -> bool:
    forward = to_schur_basis(eval_wgl(alpha))
    backward = to_schur_basis(eval_wgl(inverse(alpha)))
    return backward == alternate_schur(forward) * (-1) ** alpha.m


def odd_schur_parity(value: Poly) -> set[int]:
    """Parities of the number of odd-indexed S factors over the monomials."""
    return {
        sum(e for v, e in mono if v.kind == 'S' and v.index % 2) % 2
        for mono, _ in value
    }


# evaluation on highest weight modules

def complete_homogeneous(sample: Sequence[Fraction], order: int) -> list[Fraction]:
    """h_0..h_order of the sample, from the product of 1/(1 - x_i u)."""
    series = TruncatedSeries.constant(1, order)
    for value in sample:
        series = series / TruncatedSeries.linear(1, -Fraction(value), order)
    return [series[k].constant_term() for k in range(order + 1)]


def pp_casimir_values(n: int, sample: Sequence[Fraction], order: int) -> list[Fraction]:
    """phi(C_1..C_order) from the product formula; index 0 unused."""
    if len(sample) != n:
        raise WeightSystemError(f'Need {n} shifted weights, got {len(sample)}')
    series = TruncatedSeries.constant(1, order + 1)
    for value in sample:
        x = Fraction(value)
        top = TruncatedSeries.linear(1, -(x + Fraction(n + 1, 2)), order + 1)
        bottom = TruncatedSeries.linear(1, -(x + Fraction(n - 1, 2)), order + 1)
        series = series * top / bottom
    return [Fraction(0)] + [-series[k + 1].constant_term() for k in range(1, order + 1)]


def table_casimir_values(n: int, sample: Sequence[Fraction], order: int) -> list[Fraction]:
    table = build_basis_table(max(order, 1))
    h = complete_homogeneous(sample, order)
    point = {N: n}
    point.update({Var('S', j): h[j] for j in range(1, order + 1)})
    return [Fraction(0)] + [table.c_of_s[k].evaluate(point) for k in range(1, order + 1)]


def pp_oracle(k: int, n: int, sample: Sequence[Fraction]) -> bool:
    if n > 6:
        raise BoundExceeded(f'Product formula check limited to N <= 6, got {n}')
    return pp_casimir_values(n, sample, k)[k] == table_casimir_values(n, sample, k)[k]


def trivial_representation_check(n: int, order: int = DEFAULT_ORDER) -> bool:
    """Every C_k acts by zero on the trivial module, whose shifted weights are (N+1)/2 - i."""
    sample = [Fraction(n + 1, 2) - i for i in range(1, n + 1)]
    return all(value == 0 for value in table_casimir_values(n, sample, order)[1:])


# averaging over the symmetric group

def _check_average_bound(m: int, bound: int):
    if m > bound:
        err_msg = f'Averaging over S_{m} exceeds the bound {bound}'
        logger.error(err_msg)
        raise BoundExceeded(err_msg)


def average_wgl(m: int, threads: int = DEFAULT_THREADS, bound: int = AVERAGE_BOUND) -> Poly:
    """(1/m!) * sum of w_gl over S_m, evaluating each cyclic class once."""
    _check_average_bound(m, bound)
    classes = Counter(canonical_cyclic_class(alpha) for alpha in all_permutations(m))
    ordered = sorted(classes)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(lambda cls: eval_wgl(cls.canonical), ordered))
    else:
        values = [eval_wgl(cls.canonical) for cls in ordered]
    total = Poly.zero()
    for cls, value in zip(ordered, values):
        total = total + value * classes[cls]
    return total / math.factorial(m)


def schur_average(m: int, threads: int = DEFAULT_THREADS, bound: int = AVERAGE_BOUND) -> list[tuple[int, Poly]]:
    """Coefficients of S_(m-j) in the Schur form of the average, by gap j."""
    value = to_schur_basis(average_wgl(m, threads, bound))
    by_gap: dict[int, Poly] = {}
    for mono, coeff in value:
        s_part = [(v, e) for v, e in mono if v.kind == 'S']
        if len(s_part) > 1 or (s_part and s_part[0][1] != 1):
            raise WeightSystemError(f'Average A_{m} has a product of Schur generators: {value}')
        index = s_part[0][0].index if s_part else 0
        rest = Poly({tuple((v, e) for v, e in mono if v.kind != 'S'): coeff})
        gap = m - index
        by_gap[gap] = by_gap.get(gap, Poly.zero()) + rest
    if any(gap % 2 for gap, coeff in by_gap.items() if coeff):
        raise WeightSystemError(f'Average A_{m} has odd gaps: {sorted(by_gap)}')
    if by_gap.get(0) != 1:
        raise WeightSystemError(f'Average A_{m} has leading coefficient {by_gap.get(0)}')
    return sorted((gap, coeff) for gap, coeff in by_gap.items() if coeff)


def falling_factorial(top: Poly, length: int) -> Poly:
    result = Poly.one()
    for i in range(length):
        result = result * (top - i)
    return result


def averaging_quotients(m: int, threads: int = DEFAULT_THREADS) -> dict[int, Poly]:
    """Coefficient of S_(m-2j) divided by (N+m-1)_(2j), for j >= 1."""
    out = {}
    for gap, coeff in schur_average(m, threads):
        if gap == 0:
            continue
        divisor = falling_factorial(n_poly() + m - 1, gap)
        quotient, remainder = coeff.divmod_univariate(divisor, N)
        if remainder:
            raise WeightSystemError(f'A_{m}: coefficient of S_{m - gap} not divisible by {divisor}')
        if quotient.degree_in(N) != gap // 2:
            raise WeightSystemError(f'A_{m}: quotient {quotient} does not have degree {gap // 2} in N')
        out[gap // 2] = quotient
    return out


# closed form

def sinhc_series(order: int) -> TruncatedSeries:
    """sinh(v/2) / (v/2) = sum v^(2i) / (4^i (2i+1)!)."""
    return TruncatedSeries(
        [
            Fraction(1, 4 ** (i // 2) * math.factorial(i + 1)) if i % 2 == 0 else 0
            for i in range(order + 1)
        ],
        order,
    )


def _candidates(order: int):
    base = sinhc_series(order)
    n = n_poly()
    for label, exponent in (('N-1', n - 1), ('1-N', 1 - n)):
        powered = base.power(exponent)
        for convention in ('ordinary', 'exponential'):
            for alternating in (False, True):
                coefficients = {}
                for j in range(1, order // 2 + 1):
                    c = powered[2 * j]
                    if convention == 'exponential':
                        c = c * math.factorial(2 * j)
                    if alternating:
                        c = c * (-1) ** j
                    coefficients[j] = c
                yield label, convention, alternating, coefficients


def averaging_closed_form_fit(max_m: int = AVERAGE_BOUND, threads: int = DEFAULT_THREADS) -> FitReport:
    """
    Which power of sinh(v/2)/(v/2) produces the averaging quotients.

    The quotients must not depend on m; every candidate is compared on all of
    them and the first match is reported together with the reference a_4 and a_6.
    """
    extracted: dict[int, Poly] = {}
    for m in range(2, max_m + 1):
        for j, quotient in averaging_quotients(m, threads).items():
            if j in extracted and extracted[j] != quotient:
                raise WeightSystemError(f'Quotient b_{2 * j} depends on m: {extracted[j]} vs {quotient}')
            extracted.setdefault(j, quotient)
    order = 2 * max(extracted, default=1)

    chosen = None
    for label, convention, alternating, coefficients in _candidates(order):
        if all(coefficients[j] == value for j, value in extracted.items()):
            chosen = (label, convention, alternating, coefficients)
            break
    if chosen is None:
        logger.warning('No closed form candidate matches {}', extracted)
        return FitReport(
            exponent='', convention='ordinary', alternating=False, matched=False,
            coefficients={f'b_{2 * j}': str(v) for j, v in sorted(extracted.items())},
        )

    label, convention, alternating, _ = chosen
    deviations = {}
    for j, reference in ((2, REFERENCE_A4), (3, REFERENCE_A6)):
        if j not in extracted:
            continue
        engine = extracted[j] * (-1) ** j
        if engine != reference:
            ratio = _constant_ratio(reference, engine)
            deviations[f'a_{2 * j}'] = (
                f'reference {reference}, engine {engine}' + (f', ratio {ratio}' if ratio else '')
            )
    report = FitReport(
        exponent=label,
        convention=convention,
        alternating=alternating,
        matched=True,
        coefficients={f'b_{2 * j}': str(v) for j, v in sorted(extracted.items())},
        reference_deviations=deviations,
    )
    logger.bind(payload=report.model_dump()).info('Averaging closed form fitted')
    return report


def _constant_ratio(a: Poly, b: Poly) -> Fraction | None:
    if not b:
        return None
    mono, coeff = next(iter(b))
    ratio = a.terms.get(mono, Fraction(0)) / coeff
    return ratio if a == b * ratio else None


# the standard representation count

def stirling_first_unsigned(m: int, k: int) -> int:
    """Number of permutations of m elements with k cycles."""
    table = [[1]]
    for n in range(1, m + 1):
        prev = table[-1]
        row = [0] * (n + 1)
        for j in range(1, n + 1):
            row[j] = (prev[j - 1] if j - 1 < len(prev) else 0) + (n - 1) * (prev[j] if j < len(prev) else 0)
        table.append(row)
    return table[m][k] if 0 <= k <= m else 0


def jucys_stirling_check(m: int, bound: int = 7) -> bool:
    """sum over S_m of N^(f - 1) equals (N+1)(N+2)...(N+m-1)."""
    if m > bound:
        raise BoundExceeded(f'Exhaustive face count over S_{m} exceeds the bound {bound}')
    n = n_poly()
    total = Poly.zero()
    for alpha in all_permutations(m):
        total = total + n ** (face_count(alpha) - 1)
    expected = Poly.one()
    for i in range(1, m):
        expected = expected * (n + i)
    return total == expected
