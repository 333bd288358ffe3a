from fractions import Fraction

import pytest

from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import WeightSystemError
from weightsys.diagrams.hopf import DiagramSpace
from weightsys.diagrams.hopf import coproduct_cycles
from weightsys.diagrams.hopf import diagram_space
from weightsys.diagrams.hopf import dim_H
from weightsys.diagrams.hopf import dim_P
from weightsys.diagrams.hopf import dim_single_cycle
from weightsys.diagrams.hopf import dim_single_cycle_lower_bound
from weightsys.diagrams.hopf import dim_single_cycle_prime
from weightsys.diagrams.hopf import euler_phi
from weightsys.diagrams.hopf import hopf_table
from weightsys.diagrams.hopf import partitions_of
from weightsys.diagrams.hopf import pi_projection
from weightsys.diagrams.hopf import primitive_dims_from_dims
from weightsys.diagrams.hopf import set_partitions
from weightsys.diagrams.perm import Partition
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import parse_permutation
from weightsys.diagrams.perm import standard_cycle

# cycle type -> (dim H, dim P)
DIMENSIONS = {
    (1,): (1, 1),
    (2,): (1, 1),
    (1, 1): (1, 0),
    (3,): (2, 2),
    (2, 1): (1, 0),
    (1, 1, 1): (1, 0),
    (4,): (3, 3),
    (2, 2): (2, 1),
    (3, 1): (2, 0),
    (2, 1, 1): (1, 0),
    (1, 1, 1, 1): (1, 0),
    (5,): (8, 8),
    (3, 2): (4, 2),
    (4, 1): (3, 0),
    (2, 2, 1): (2, 0),
    (3, 1, 1): (2, 0),
    (2, 1, 1, 1): (1, 0),
    (1, 1, 1, 1, 1): (1, 0),
}
TOTALS = {1: (1, 1), 2: (2, 1), 3: (4, 2), 4: (9, 4), 5: (21, 10), 6: (66, 37)}


class TestCombinatorics:
    def test_set_partitions(self):
        blocks = list(set_partitions([1, 2, 3]))
        assert len(blocks) == 5
        assert [[1], [2], [3]] in blocks
        assert list(set_partitions([])) == [[]]

    @pytest.mark.parametrize('m, count', [(1, 1), (4, 5), (6, 11)])
    def test_partitions_of(self, m, count):
        partitions = partitions_of(m)
        assert len(partitions) == count
        assert partitions[0] == Partition((m,))
        assert all(p.weight == m for p in partitions)


class TestCoproduct:
    def test_single_chord(self):
        assert len(coproduct_cycles(standard_cycle(2))) == 2

    def test_equal_cycles_collect(self):
        combo = coproduct_cycles(parse_permutation('(1,2)(3,4)'))
        assert len(combo) == 3
        assert sorted(c for _, c in combo) == [1, 1, 2]

    def test_single_cycle_is_primitive(self):
        combo = pi_projection(standard_cycle(3))
        assert combo.terms == {standard_cycle(3): 1}

    def test_products_are_killed(self):
        assert not pi_projection(parse_permutation('(1,2)(3,4,5)'))

    def test_empty(self):
        assert not pi_projection(Permutation(()))


class TestDiagramSpace:
    @pytest.mark.parametrize('parts', list(DIMENSIONS))
    def test_dimensions(self, parts):
        partition = Partition.of(parts)
        assert (dim_H(partition), dim_P(partition)) == DIMENSIONS[parts]

    def test_adding_a_fixed_leg(self):
        partition = Partition.of((2, 2))
        with_one = Partition.of((2, 2, 1))
        assert dim_H(with_one) == dim_H(partition)
        assert dim_P(with_one) == 0

    @pytest.mark.parametrize('parts', [(2, 2), (3, 2), (2, 2, 1)])
    def test_one_arc_elements_in_span(self, parts):
        assert diagram_space(Partition.of(parts)).one_arc_report().passed

    def test_threads_agree(self):
        partition = Partition.of((3, 2))
        assert DiagramSpace(partition, threads=3).dim == dim_H(partition)

    def test_coordinates_reject_other_types(self):
        space = diagram_space(Partition.of((2, 2)))
        with pytest.raises(WeightSystemError):
            space.coordinates(pi_projection(standard_cycle(4)))

    def test_empty_partition(self):
        space = DiagramSpace(Partition(()))
        assert space.dim == 1
        assert space.primitive_dim() == 0

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            DiagramSpace(Partition.of((5, 3)), bound=7)


class TestHopfTable:
    @pytest.mark.parametrize('m', [1, 2, 3, 4, 5])
    def test_rows(self, m):
        rows = hopf_table(m)
        by_label = {row.label: (row.dim, row.primitive) for row in rows}
        for parts, expected in DIMENSIONS.items():
            if sum(parts) == m:
                assert by_label[str(Partition.of(parts))] == expected
        assert rows[-1].label == 'total'
        assert (rows[-1].dim, rows[-1].primitive) == TOTALS[m]

    @pytest.mark.slow
    def test_six_legs(self):
        rows = hopf_table(6)
        by_label = {row.label: (row.dim, row.primitive) for row in rows}
        assert by_label['6^1'] == (24, 24)
        assert by_label['2^1 4^1'] == (9, 6)
        assert by_label['3^2'] == (9, 6)
        assert by_label['2^3'] == (3, 1)
        assert (rows[-1].dim, rows[-1].primitive) == TOTALS[6]


class TestSingleCycle:
    @pytest.mark.parametrize('n, phi', [(1, 1), (6, 2), (7, 6), (12, 4)])
    def test_euler_phi(self, n, phi):
        assert euler_phi(n) == phi

    @pytest.mark.parametrize(
        'm, count', [(1, 1), (2, 1), (3, 2), (4, 3), (5, 8), (6, 24), (7, 108), (8, 640), (9, 4492)]
    )
    def test_orbit_count(self, m, count):
        assert dim_single_cycle(m) == count

    @pytest.mark.parametrize('m', [3, 4, 5])
    def test_orbit_count_matches_space(self, m):
        assert dim_H(Partition((m,))) == dim_single_cycle(m)

    @pytest.mark.parametrize('m', [5, 7])
    def test_prime_formula(self, m):
        assert dim_single_cycle_prime(m) == dim_single_cycle(m)

    def test_prime_formula_needs_prime(self):
        with pytest.raises(WeightSystemError):
            dim_single_cycle_prime(6)

    def test_lower_bound(self):
        assert dim_single_cycle_lower_bound(5) == Fraction(24, 5)
        assert all(dim_single_cycle(m) >= dim_single_cycle_lower_bound(m) for m in range(2, 10))

    def test_invalid(self):
        with pytest.raises(WeightSystemError):
            dim_single_cycle(0)


class TestMilnorMoore:
    def test_primitives_from_table(self):
        dims = {
            Partition.of((2,)): 1,
            Partition.of((3,)): 2,
            Partition.of((4,)): 3,
            Partition.of((5,)): 8,
            Partition.of((6,)): 24,
            Partition.of((2, 2)): 2,
            Partition.of((3, 2)): 4,
            Partition.of((4, 2)): 9,
            Partition.of((3, 3)): 9,
            Partition.of((2, 2, 2)): 3,
        }
        primitive = primitive_dims_from_dims(dims)
        assert primitive[Partition.of((5,))] == 8
        assert primitive[Partition.of((2, 2))] == 1
        assert primitive[Partition.of((3, 2))] == 2
        assert primitive[Partition.of((4, 2))] == 6
        assert primitive[Partition.of((3, 3))] == 6
        assert primitive[Partition.of((2, 2, 2))] == 1

    def test_agrees_with_projection(self):
        dims = {Partition.of(parts): dim_H(Partition.of(parts)) for parts in DIMENSIONS}
        primitive = primitive_dims_from_dims(dims)
        for parts in DIMENSIONS:
            assert primitive[Partition.of(parts)] == dim_P(Partition.of(parts))

    def test_missing_sub_partition(self):
        with pytest.raises(WeightSystemError):
            primitive_dims_from_dims({Partition.of((2, 2)): 2})
