"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is stored as a dictionary from monomials to nonzero
``Fraction`` coefficients.  A monomial is a tuple of ``(Var, exponent)``
pairs sorted by variable order, for example::

    {((Var('N'), 1), (Var('C', 2), 1)): Fraction(-1),
     ((Var('C', 3), 1),): Fraction(1)}

is ``C_3 - N*C_2``.
"""
import re
from fractions import Fraction
from typing import Callable
from typing import Iterator
from typing import Mapping
from typing import NamedTuple
from typing import Union

from loguru import logger

from weightsys.core.exceptions import PolyParseError

KIND_RANK = {'N': 0, 'C': 1, 'S': 2, 'p': 3, 'x': 4, 'aux': 5}


class Var(NamedTuple):
    kind: str
    index: int = 0

    @property
    def sort_key(self) -> tuple[int, int]:
        return KIND_RANK[self.kind], self.index

    def __str__(self) -> str:
        if self.kind == 'N':
            return 'N'
        return f'{self.kind}_{self.index}'


Monomial = tuple[tuple[Var, int], ...]
Scalar = Union[int, Fraction]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: item[0].sort_key))


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _term_order(mono: Monomial):
    # graded, then lexicographic with the first variable largest
    return -_mono_degree(mono), tuple((v.sort_key, -e) for v, e in mono)


class Poly:
    __slots__ = ('terms', '_hash')

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        cleaned = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                cleaned[mono] = Fraction(coeff)
        self.terms: dict[Monomial, Fraction] = cleaned
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, value: Scalar) -> 'Poly':
        return cls({(): value})

    @classmethod
    def var(cls, v: Var) -> 'Poly':
        return cls({((v, 1),): 1})

    @classmethod
    def zero(cls) -> 'Poly':
        return cls()

    @classmethod
    def one(cls) -> 'Poly':
        return cls.constant(1)

    @classmethod
    def coerce(cls, other) -> 'Poly':
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.constant(other)
        raise TypeError(f'Cannot use {type(other).__name__} as a polynomial')

    # ring operations

    def __add__(self, other) -> 'Poly':
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other) -> 'Poly':
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'Poly':
        return Poly.coerce(other) - self

    def __mul__(self, other) -> 'Poly':
        if isinstance(other, (int, Fraction)):
            return Poly({mono: coeff * other for mono, coeff in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Poly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> 'Poly':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / other)

    def __pow__(self, exponent: int) -> 'Poly':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f'Polynomial powers need a nonnegative integer exponent, got {exponent}')
        result = Poly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # comparison and hashing

    def __eq__(self, other) -> bool:
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda item: _term_order(item[0])))

    # inspection

    def is_constant(self) -> bool:
        return all(not mono for mono in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[Var]:
        return {v for mono in self.terms for v, _ in mono}

    def degree_in(self, v: Var) -> int:
        return max((dict(mono).get(v, 0) for mono in self.terms), default=0)

    def total_degree(self) -> int:
        return max((_mono_degree(mono) for mono in self.terms), default=0)

    def weighted_degree(self, weight: Callable[[Var], int]) -> int:
        return max(
            (sum(weight(v) * e for v, e in mono) for mono in self.terms),
            default=0,
        )

    def coefficient_of(self, v: Var, power: int) -> 'Poly':
        """Coefficient of ``v**power`` as a polynomial free of ``v``."""
        terms = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if exps.pop(v, 0) == power:
                rest = tuple(sorted(exps.items(), key=lambda item: item[0].sort_key))
                terms[rest] = coeff
        return Poly(terms)

    # substitution

    def substitute(self, rules: Mapping[Var, Union['Poly', Scalar]]) -> 'Poly':
        """Simultaneous substitution; variables without a rule are kept."""
        images = {v: Poly.coerce(image) for v, image in rules.items()}
        powers: dict[tuple[Var, int], Poly] = {}
        result = Poly()
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            kept = []
            factor = None
            for v, e in mono:
                if v in images:
                    if (v, e) not in powers:
                        powers[(v, e)] = images[v] ** e
                    factor = powers[(v, e)] if factor is None else factor * powers[(v, e)]
                else:
                    kept.append((v, e))
            if factor is None:
                terms[tuple(kept)] = terms.get(tuple(kept), 0) + coeff
            else:
                result = result + Poly({tuple(kept): coeff}) * factor
        return result + Poly(terms)

    def evaluate(self, values: Mapping[Var, Scalar]) -> Union['Poly', Fraction]:
        """Substitute numbers; returns a ``Fraction`` when nothing is left."""
        result = self.substitute(values)
        if result.is_constant():
            return result.constant_term()
        return result

    def laurent_coefficient(self, v: Var, shift: int, target: int) -> 'Poly':
        """Coefficient of ``v**target`` in ``v**shift * self``."""
        return self.coefficient_of(v, target - shift)

    def divmod_univariate(self, divisor: 'Poly', v: Var) -> tuple['Poly', 'Poly']:
        """Long division in ``v``; the leading coefficient of ``divisor`` must be a number."""
        degree = divisor.degree_in(v)
        lead = divisor.coefficient_of(v, degree)
        if not lead or not lead.is_constant():
            raise ValueError(f'Divisor {divisor} needs a numeric leading coefficient in {v}')
        lead_value = lead.constant_term()
        quotient = Poly()
        remainder = self
        x = Poly.var(v)
        while remainder and remainder.degree_in(v) >= degree:
            top = remainder.degree_in(v)
            step = remainder.coefficient_of(v, top) * (x ** (top - degree)) / lead_value
            quotient = quotient + step
            remainder = remainder - step * divisor
        return quotient, remainder

    # serialization

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        pieces = []
        for mono, coeff in self:
            factors = [str(v) if e == 1 else f'{v}^{e}' for v, e in mono]
            magnitude = abs(coeff)
            if not factors:
                body = _format_fraction(magnitude)
            elif magnitude == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([_format_fraction(magnitude)] + factors)
            sign = '-' if coeff < 0 else '+'
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in pieces[1:]:
            text += f' {sign} {body}'
        return text

    def __repr__(self) -> str:
        return f'Poly({str(self)!r})'

    def to_json(self) -> list[dict]:
        return [
            {'coeff': _format_fraction(coeff), 'monomial': {str(v): e for v, e in mono}}
            for mono, coeff in self
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> 'Poly':
        terms = {}
        try:
            for item in data:
                mono = tuple(sorted(
                    ((_parse_var_name(name), int(e)) for name, e in item['monomial'].items()),
                    key=lambda pair: pair[0].sort_key,
                ))
                terms[mono] = terms.get(mono, 0) + Fraction(item['coeff'])
        except (KeyError, TypeError, ValueError) as e:
            raise PolyParseError(f'Malformed polynomial JSON: {data!r}') from e
        return cls(terms)


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


# variable helpers

N = Var('N')


def C(k: int) -> Poly:
    return Poly.var(Var('C', k))


def S(k: int) -> Poly:
    if k == 0:
        return Poly.one()
    return Poly.var(Var('S', k))


def p(k: int) -> Poly:
    return Poly.var(Var('p', k))


def x(i: int) -> Poly:
    return Poly.var(Var('x', i))


def aux(k: int) -> Poly:
    return Poly.var(Var('aux', k))


def n_poly() -> Poly:
    return Poly.var(N)


# text parsing

_TOKEN_RE = re.compile(
    r'\s*(?:(?P<num>\d+)|(?P<var>N|(?:C|S|p|x|aux)_\d+)|(?P<op>\*\*|[-+*/^()]))'
)
_NORMALIZE = str.maketrans({'−': '-', '·': '*', '×': '*'})


def _parse_var_name(name: str) -> Var:
    if name == 'N':
        return N
    kind, _, index = name.partition('_')
    if kind not in KIND_RANK or not index.isdigit():
        raise PolyParseError(f'Unknown variable "{name}"')
    return Var(kind, int(index))


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = text.translate(_NORMALIZE)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            raise PolyParseError(f'Unexpected input at position {pos} in "{text}"')
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise PolyParseError(f'Unexpected end of input in "{self.text}"')
        self.pos += 1
        return token

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError('Empty polynomial text')
        result = self.expr()
        if self.peek() is not None:
            raise PolyParseError(f'Trailing input "{self.peek()[1]}" in "{self.text}"')
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.peek() in (('op', '+'), ('op', '-')):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Poly:
        result = self.unary()
        while self.peek() in (('op', '*'), ('op', '/')):
            _, op = self.take()
            rhs = self.unary()
            if op == '*':
                result = result * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise PolyParseError(f'Division by a non-constant or zero in "{self.text}"')
                result = result / rhs.constant_term()
        return result

    def unary(self) -> Poly:
        if self.peek() in (('op', '-'), ('op', '+')):
            _, op = self.take()
            operand = self.unary()
            return -operand if op == '-' else operand
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() in (('op', '^'), ('op', '**')):
            self.take()
            kind, value = self.take()
            if kind != 'num':
                raise PolyParseError(f'Exponent must be an integer in "{self.text}"')
            return base ** int(value)
        return base

    def atom(self) -> Poly:
        kind, value = self.take()
        if kind == 'num':
            return Poly.constant(int(value))
        if kind == 'var':
            return Poly.var(_parse_var_name(value))
        if value == '(':
            inner = self.expr()
            if self.take() != ('op', ')'):
                raise PolyParseError(f'Unbalanced parenthesis in "{self.text}"')
            return inner
        raise PolyParseError(f'Unexpected "{value}" in "{self.text}"')


def parse_poly(text: str) -> Poly:
    """Parse the canonical text form (``C_3 - N*C_2 + 1/24*N^3``) and common variants."""
    try:
        return _Parser(text).parse()
    except PolyParseError as e:
        logger.error(str(e))
        raise
