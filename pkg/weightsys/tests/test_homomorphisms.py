import math

import pytest

from weightsys.core.exceptions import BoundExceeded
from weightsys.diagrams.homomorphisms import X0
from weightsys.diagrams.homomorphisms import Y0
from weightsys.diagrams.homomorphisms import at_chromatic
from weightsys.diagrams.homomorphisms import chromatic_report
from weightsys.diagrams.homomorphisms import coproduct_poly
from weightsys.diagrams.homomorphisms import hopf_hom_check
from weightsys.diagrams.homomorphisms import x0_cycle_pattern
from weightsys.diagrams.homomorphisms import x0_cycle_pattern_report
from weightsys.diagrams.perm import CHROMATIC
from weightsys.diagrams.perm import parse_permutation
from weightsys.diagrams.perm import standard_cycle
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import aux
from weightsys.diagrams.poly import p
from weightsys.diagrams.poly import parse_poly

x = Poly.var(CHROMATIC)


class TestX0:
    @pytest.mark.parametrize('m', [1, 2, 3, 5])
    def test_standard_cycle(self, m):
        assert X0(standard_cycle(m)) == p(m)

    def test_negative_three_cycle(self):
        assert X0(parse_permutation('(1,3,2)')) == p(3) - p(2)

    def test_crossing_chords(self):
        assert at_chromatic(X0(parse_permutation('(1,3)(2,4)'))) == x * (x - 1)

    def test_cycle_pattern(self):
        assert x0_cycle_pattern(3, 2) == p(3) - p(2)
        assert x0_cycle_pattern(5, 1) == p(5)
        assert x0_cycle_pattern(4, 3) == parse_poly('p_4 - 2*p_3 + p_2')

    def test_cycle_pattern_report_covers_all_cycles(self):
        report = x0_cycle_pattern_report(5)
        assert report.checked == 1 + 1 + 2 + 6 + 24


class TestY0:
    def test_single_chord(self):
        assert Y0(standard_cycle(2)) == 2 * p(2)

    def test_crossing_chords(self):
        assert at_chromatic(Y0(parse_permutation('(1,3)(2,4)'))) == 4 * x * (x - 1)

    def test_negative_three_cycle(self):
        assert at_chromatic(Y0(parse_permutation('(1,3,2)'))) == -x

    def test_fixed_point(self):
        assert not Y0(parse_permutation('m=3 (1,2)'))


class TestHomomorphism:
    def test_coproduct_poly(self):
        assert coproduct_poly(p(2) * p(3)) == (p(2) + aux(2)) * (p(3) + aux(3))

    @pytest.mark.parametrize('m', [1, 2, 3, 4])
    def test_x0(self, m):
        report = hopf_hom_check('X0', m)
        assert report.checked > 0
        assert report.passed, report.violations[:3]

    @pytest.mark.slow
    def test_x0_five(self):
        assert hopf_hom_check('X0', 5).passed

    @pytest.mark.parametrize('m', [2, 3, 4])
    def test_y0(self, m):
        assert hopf_hom_check('Y0', m).passed

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            hopf_hom_check('X0', 8)
        with pytest.raises(BoundExceeded):
            chromatic_report('Y0', 8)


class TestChromatic:
    @pytest.mark.parametrize('m', [1, 2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
    def test_x0(self, m):
        report = chromatic_report('X0', m)
        assert report.checked == math.factorial(m)
        assert report.passed, report.violations[:3]

    @pytest.mark.parametrize('m', [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_y0(self, m):
        report = chromatic_report('Y0', m)
        assert report.checked > 0
        assert report.passed, report.violations[:3]
