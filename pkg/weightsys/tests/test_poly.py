from fractions import Fraction

import pytest

from weightsys.core.exceptions import PolyParseError
from weightsys.diagrams.poly import C
from weightsys.diagrams.poly import N
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import S
from weightsys.diagrams.poly import Var
from weightsys.diagrams.poly import n_poly
from weightsys.diagrams.poly import parse_poly


class TestArithmetic:
    def test_zero_coefficients_dropped(self):
        assert not (C(2) - C(2))
        assert (C(1) + 0) == C(1)

    def test_product_commutes(self):
        a = C(1) + n_poly() * 2
        b = C(3) - S(2)
        assert a * b == b * a

    def test_power(self):
        assert (n_poly() + 1) ** 2 == n_poly() ** 2 + n_poly() * 2 + 1
        assert (C(2) ** 0) == 1

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            C(1) ** -1

    def test_division_by_scalar(self):
        assert (C(2) * 3) / 6 == C(2) * Fraction(1, 2)

    def test_s_zero_is_one(self):
        assert S(0) == Poly.one()

    def test_hash_matches_equality(self):
        assert hash(C(1) + C(2)) == hash(C(2) + C(1))


class TestInspection:
    def test_degrees(self):
        value = parse_poly('C_3*N^2 - C_1^2 + 4')
        assert value.degree_in(N) == 2
        assert value.total_degree() == 3
        assert value.variables() == {N, Var('C', 3), Var('C', 1)}

    def test_coefficient_of(self):
        value = parse_poly('C_3 - N*C_2 + C_1^2')
        assert value.coefficient_of(N, 1) == -C(2)
        assert value.coefficient_of(N, 0) == C(3) + C(1) ** 2

    def test_laurent_coefficient(self):
        value = parse_poly('C_3*N^2 - N^2*C_2 + C_1^2')
        assert value.laurent_coefficient(N, -2, 0) == C(3) - C(2)

    def test_weighted_degree(self):
        value = parse_poly('C_4 + C_1^3')
        assert value.weighted_degree(lambda v: v.index - 2) == 2

    def test_evaluate(self):
        value = parse_poly('N^2 - 1/2*N')
        assert value.evaluate({N: 3}) == Fraction(15, 2)

    def test_evaluate_partial(self):
        value = parse_poly('N*C_2')
        assert value.evaluate({N: 2}) == C(2) * 2

    def test_substitute_is_simultaneous(self):
        value = parse_poly('C_1 + 2*C_2')
        swapped = value.substitute({Var('C', 1): C(2), Var('C', 2): C(1)})
        assert swapped == C(2) + C(1) * 2


class TestDivision:
    @pytest.mark.parametrize(
        'dividend, divisor, quotient, remainder',
        [
            ('N^3 - N', 'N + 1', 'N^2 - N', '0'),
            ('N^2 + 1', 'N', 'N', '1'),
            ('C_2*N^2 - C_2', 'N - 1', 'C_2*N + C_2', '0'),
        ],
    )
    def test_divmod_univariate(self, dividend, divisor, quotient, remainder):
        q, r = parse_poly(dividend).divmod_univariate(parse_poly(divisor), N)
        assert q == parse_poly(quotient)
        assert r == parse_poly(remainder)

    def test_non_numeric_leading_coefficient(self):
        with pytest.raises(ValueError):
            n_poly().divmod_univariate(C(1) * n_poly(), N)


class TestText:
    @pytest.mark.parametrize(
        'text, expected',
        [
            ('C_3', C(3)),
            ('C_3 - N*C_2 + C_1^2', C(3) - n_poly() * C(2) + C(1) ** 2),
            ('1/24*N^3', n_poly() ** 3 * Fraction(1, 24)),
            ('2*(N - 1)', n_poly() * 2 - 2),
            ('C_1**2', C(1) ** 2),
            ('S_2 − N·S_1', S(2) - n_poly() * S(1)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_poly(text) == expected

    @pytest.mark.parametrize('text', ['', 'C_', 'N +', '(N', 'N / C_1', 'Q_1'])
    def test_parse_errors(self, text):
        with pytest.raises(PolyParseError):
            parse_poly(text)

    @pytest.mark.parametrize(
        'value, expected',
        [
            (C(3), 'C_3'),
            (Poly.zero(), '0'),
            (Poly.constant(Fraction(-1, 24)), '-1/24'),
            (n_poly() * C(2) * -1, '-N*C_2'),
        ],
    )
    def test_str(self, value, expected):
        assert str(value) == expected

    def test_str_parses_back(self):
        value = parse_poly('C_3 - N*C_2 + C_1^2 - 1/12*N^3 + 7')
        assert parse_poly(str(value)) == value

    def test_json_form(self):
        value = parse_poly('C_2*N - 1/2*C_1^2')
        assert Poly.from_json(value.to_json()) == value

    def test_malformed_json(self):
        with pytest.raises(PolyParseError):
            Poly.from_json([{'coeff': '1'}])
