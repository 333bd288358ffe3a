"""Truncated power series in one formal parameter with polynomial coefficients."""
from fractions import Fraction
from typing import Sequence
from typing import Union

from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp
from sympy.polys.ring_series import rs_log
from sympy.polys.ring_series import rs_series_inversion
from sympy.polys.ring_series import rs_subs
from sympy.polys.rings import ring

from weightsys.core.exceptions import SeriesError
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import Var

Coefficient = Union[Poly, int, Fraction]


def _ring_elements(*series: 'TruncatedSeries'):
    """
    The series as elements of QQ[u, g0, g1, ...], one generator g_i per
    coefficient variable, for the truncated routines of ``sympy.polys.ring_series``.
    """
    variables = sorted(
        {v for s in series for c in s.coeffs for v in c.variables()}, key=lambda v: v.sort_key
    )
    _, u, *_ = ring(','.join(['u', *(f'g{i}' for i in range(len(variables)))]), QQ)
    position = {v: i for i, v in enumerate(variables, start=1)}

    def convert(s: 'TruncatedSeries'):
        terms = {}
        for k, c in enumerate(s.coeffs):
            for mono, coeff in c:
                exponents = [0] * (len(variables) + 1)
                exponents[0] = k
                for v, e in mono:
                    exponents[position[v]] = e
                terms[tuple(exponents)] = QQ(coeff.numerator, coeff.denominator)
        return u.ring.from_dict(terms)

    return u, variables, [convert(s) for s in series]


def _from_ring(element, variables: list[Var], order: int) -> 'TruncatedSeries':
    coeffs: list[dict] = [{} for _ in range(order + 1)]
    for exponents, coeff in element.items():
        if exponents[0] > order:
            continue
        mono = tuple((v, e) for v, e in zip(variables, exponents[1:]) if e)
        coeffs[exponents[0]][mono] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return TruncatedSeries([Poly(terms) for terms in coeffs], order)


class TruncatedSeries:
    """``coeffs[i]`` is the coefficient of ``u**i`` for ``0 <= i <= order``."""

    __slots__ = ('order', 'coeffs')

    def __init__(self, coeffs: Sequence[Coefficient], order: int):
        padded = [Poly.coerce(c) for c in list(coeffs)[: order + 1]]
        padded += [Poly()] * (order + 1 - len(padded))
        self.order = order
        self.coeffs: tuple[Poly, ...] = tuple(padded)

    @classmethod
    def constant(cls, value: Coefficient, order: int) -> 'TruncatedSeries':
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> 'TruncatedSeries':
        """The formal parameter ``u`` itself."""
        return cls([0, 1], order)

    @classmethod
    def linear(cls, c0: Coefficient, c1: Coefficient, order: int) -> 'TruncatedSeries':
        return cls([c0, c1], order)

    def __getitem__(self, i: int) -> Poly:
        return self.coeffs[i] if i <= self.order else Poly()

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        shown = ', '.join(str(c) for c in self.coeffs)
        return f'TruncatedSeries([{shown}], order={self.order})'

    def _check_order(self, other: 'TruncatedSeries'):
        if self.order != other.order:
            err_msg = f'Series orders differ: {self.order} and {other.order}'
            logger.error(err_msg)
            raise SeriesError(err_msg)

    def _lift(self, other) -> 'TruncatedSeries':
        if isinstance(other, TruncatedSeries):
            self._check_order(other)
            return other
        return TruncatedSeries.constant(Poly.coerce(other), self.order)

    def __add__(self, other) -> 'TruncatedSeries':
        other = self._lift(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self) -> 'TruncatedSeries':
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other) -> 'TruncatedSeries':
        return self + (-self._lift(other))

    def __rsub__(self, other) -> 'TruncatedSeries':
        return self._lift(other) - self

    def __mul__(self, other) -> 'TruncatedSeries':
        if isinstance(other, (Poly, int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs], self.order)
        self._check_order(other)
        out = [Poly() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, self.order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'TruncatedSeries':
        if isinstance(exponent, int) and exponent >= 0:
            result = TruncatedSeries.constant(1, self.order)
            for _ in range(exponent):
                result = result * self
            return result
        if isinstance(exponent, int):
            return self.reciprocal() ** (-exponent)
        return self.power(Poly.coerce(exponent))

    def shift(self, k: int = 1) -> 'TruncatedSeries':
        """Multiply by ``u**k``."""
        return TruncatedSeries([Poly()] * k + list(self.coeffs), self.order)

    def _unit_constant(self, what: str) -> Fraction:
        c0 = self.coeffs[0]
        if not c0.is_constant() or not c0:
            err_msg = f'{what} needs a nonzero numeric constant term, got {c0}'
            logger.error(err_msg)
            raise SeriesError(err_msg)
        return c0.constant_term()

    def reciprocal(self) -> 'TruncatedSeries':
        self._unit_constant('reciprocal')
        u, variables, (p,) = _ring_elements(self)
        return _from_ring(rs_series_inversion(p, u, self.order + 1), variables, self.order)

    def __truediv__(self, other) -> 'TruncatedSeries':
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * self._lift(other).reciprocal()

    def log(self) -> 'TruncatedSeries':
        if self._unit_constant('log') != 1:
            err_msg = f'log needs constant term 1, got {self.coeffs[0]}'
            logger.error(err_msg)
            raise SeriesError(err_msg)
        u, variables, (p,) = _ring_elements(self)
        return _from_ring(rs_log(p, u, self.order + 1), variables, self.order)

    def exp(self) -> 'TruncatedSeries':
        if self.coeffs[0]:
            err_msg = f'exp needs constant term 0, got {self.coeffs[0]}'
            logger.error(err_msg)
            raise SeriesError(err_msg)
        u, variables, (p,) = _ring_elements(self)
        return _from_ring(rs_exp(p, u, self.order + 1), variables, self.order)

    def power(self, exponent: Poly) -> 'TruncatedSeries':
        """``self ** exponent`` as ``exp(exponent * log(self))``."""
        return (self.log() * exponent).exp()

    def compose(self, inner: 'TruncatedSeries') -> 'TruncatedSeries':
        """``self(inner(u))``; the inner series must have zero constant term."""
        self._check_order(inner)
        if inner.coeffs[0]:
            err_msg = f'compose needs an inner series without constant term, got {inner.coeffs[0]}'
            logger.error(err_msg)
            raise SeriesError(err_msg)
        u, variables, (outer, p) = _ring_elements(self, inner)
        return _from_ring(rs_subs(outer, {u: p}, u, self.order + 1), variables, self.order)
