import pytest

from weightsys.core.exceptions import PermutationError
from weightsys.diagrams.perm import CHROMATIC
from weightsys.diagrams.perm import Partition
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import accents
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import block_labels
from weightsys.diagrams.perm import bubble_positions
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import canonical_rotational_class
from weightsys.diagrams.perm import chord_diagram_k
from weightsys.diagrams.perm import chromatic_polynomial
from weightsys.diagrams.perm import concatenate
from weightsys.diagrams.perm import cycle_type
from weightsys.diagrams.perm import cycles
from weightsys.diagrams.perm import euler_genus
from weightsys.diagrams.perm import face_count
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import format_one_line
from weightsys.diagrams.perm import identity
from weightsys.diagrams.perm import intersection_graph
from weightsys.diagrams.perm import interval_decomposition
from weightsys.diagrams.perm import inverse
from weightsys.diagrams.perm import is_connected
from weightsys.diagrams.perm import monotonicity_class
from weightsys.diagrams.perm import exponent_genus
from weightsys.diagrams.perm import parse_permutation
from weightsys.diagrams.perm import permutations_of_type
from weightsys.diagrams.perm import permutations_with_cycles
from weightsys.diagrams.perm import restrict_legs
from weightsys.diagrams.perm import shift_conjugate
from weightsys.diagrams.perm import standard_cycle
from weightsys.diagrams.perm import transposition_conjugate
from weightsys.diagrams.poly import Poly


class TestParsing:
    @pytest.mark.parametrize(
        'text, expected',
        [
            ('(1,3,2)', (3, 1, 2)),
            ('[2,3,1]', (2, 3, 1)),
            ('(1,2)(3,4)', (2, 1, 4, 3)),
            ('m=4 (1,3)', (3, 2, 1, 4)),
            ('m=3', (1, 2, 3)),
            (' ( 1 , 2 ) ', (2, 1)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_permutation(text).map == expected

    @pytest.mark.parametrize('text', ['(1,2)(2,3)', '[1,1]', '[0,1]', '(1,3)', '1,2', 'm=2 [2,1,3]'])
    def test_parse_errors(self, text):
        with pytest.raises(PermutationError):
            parse_permutation(text)

    @pytest.mark.parametrize('text', ['(1,8)(2,7,4)(3,6,5)', '(1,3)(2,4)', '(1,2,3)'])
    def test_format_round_trip(self, text):
        alpha = parse_permutation(text)
        assert format_cycles(alpha) == text
        assert parse_permutation(format_one_line(alpha)) == alpha

    def test_empty_permutation(self):
        assert format_cycles(identity(0)) == '[]'

    def test_partition_notations(self):
        assert Partition.parse('2^1 3^2') == Partition.parse('3,3,2') == Partition((3, 3, 2))
        assert str(Partition((3, 3, 2))) == '2^1 3^2'
        assert Partition((3, 3, 2)).weight == 8

    def test_partition_rejects_garbage(self):
        with pytest.raises(PermutationError):
            Partition.parse('2^x')


class TestCycleStructure:
    def test_cycles_start_at_minimum(self):
        assert cycles(parse_permutation('(4,2,7)(1,8)(3,6,5)')) == [(1, 8), (2, 7, 4), (3, 6, 5)]

    def test_cycle_type(self):
        assert cycle_type(parse_permutation('(1,8)(2,7,4)(3,6,5)')) == Partition((3, 3, 2))

    def test_inverse(self):
        alpha = parse_permutation('(1,3,2)')
        assert inverse(alpha) == parse_permutation('(1,2,3)')

    def test_concatenate(self):
        assert concatenate(Permutation((2, 1)), Permutation((1,))) == Permutation((2, 1, 3))

    def test_chord_diagram(self):
        assert chord_diagram_k(2) == parse_permutation('(1,3)(2,4)')


class TestTopology:
    @pytest.mark.parametrize('m', [1, 2, 5])
    def test_standard_cycle_faces(self, m):
        assert face_count(standard_cycle(m)) == m
        assert euler_genus(standard_cycle(m)) == 0

    @pytest.mark.parametrize('m', [1, 3, 6])
    def test_identity_has_one_face(self, m):
        assert face_count(identity(m)) == 1

    def test_crossing_chords_have_genus_one(self):
        alpha = parse_permutation('(1,3)(2,4)')
        assert face_count(alpha) == 1
        assert euler_genus(alpha) == 1
        assert exponent_genus(alpha) == 5

    def test_face_count_of_empty(self):
        with pytest.raises(PermutationError):
            face_count(identity(0))

    @pytest.mark.parametrize('m', [3, 4, 5])
    def test_genus_is_integral(self, m):
        for alpha in all_permutations(m):
            assert euler_genus(alpha) >= 0


class TestConnectivity:
    @pytest.mark.parametrize(
        'text, connected',
        [
            ('(1,2,3)', True),
            ('(1,3)(2,4)', True),
            ('(1,2)(3,4)', False),
            ('(1,4)(2,3)', False),
            ('m=3 (1,3)', False),
        ],
    )
    def test_is_connected(self, text, connected):
        assert is_connected(parse_permutation(text)) is connected

    def test_nested_decomposition(self):
        blocks = interval_decomposition(parse_permutation('(1,4)(2,3)'))
        assert blocks == (Permutation((2, 1)), Permutation((2, 1)))

    def test_decomposition_sizes_add_up(self):
        for alpha in all_permutations(5):
            assert sum(block.m for block in interval_decomposition(alpha)) == 5


class TestClasses:
    def test_shift_by_m_is_identity(self):
        alpha = parse_permutation('(1,8)(2,7,4)(3,6,5)')
        assert shift_conjugate(alpha, 8) == alpha

    def test_shift_moves_labels(self):
        assert shift_conjugate(parse_permutation('(1,2)(3,4)'), 1) == parse_permutation('(1,4)(2,3)')

    def test_cyclic_class(self):
        a = canonical_cyclic_class(parse_permutation('(1,2)(3,4)'))
        b = canonical_cyclic_class(parse_permutation('(1,4)(2,3)'))
        c = canonical_cyclic_class(parse_permutation('(1,3)(2,4)'))
        assert a == b != c

    def test_canonical_is_idempotent(self):
        for alpha in all_permutations(4):
            cls = canonical_cyclic_class(alpha)
            assert canonical_cyclic_class(cls.canonical) == cls

    def test_rotational_class_sorts_blocks(self):
        left = canonical_rotational_class(parse_permutation('(1,2)(3)'))
        right = canonical_rotational_class(parse_permutation('(1)(2,3)'))
        assert left == right
        assert left.m == 3


class TestSwaps:
    def test_restrict_legs(self):
        assert restrict_legs(parse_permutation('(1,2,3)'), [1, 3]) == Permutation((2, 1))

    def test_transposition_conjugate(self):
        alpha = parse_permutation('(1,2,3)')
        assert transposition_conjugate(alpha, 2) == parse_permutation('(1,3,2)')

    def test_block_labels(self):
        target, labels = block_labels(parse_permutation('(1,3,2)'))
        assert target == standard_cycle(3)
        assert labels == [1, 3, 2]

    def test_block_labels_conjugate(self):
        alpha = parse_permutation('(1,8)(2,7,4)(3,6,5)')
        target, labels = block_labels(alpha)
        for i in range(1, alpha.m + 1):
            assert labels[alpha(i) - 1] == target(labels[i - 1])

    def test_bubble_positions(self):
        assert list(bubble_positions([1, 3, 2])) == [2]
        assert list(bubble_positions([3, 2, 1])) == [1, 2, 1]


class TestMonotonicity:
    @pytest.mark.parametrize(
        'text, expected',
        [
            ('(1,2,3)', 'positive'),
            ('(1,3,2)', 'negative'),
            ('(1,2)(3,4)', 'monotone'),
            ('m=3', 'monotone'),
            ('(1,2,4,3)', 'mixed'),
        ],
    )
    def test_monotonicity_class(self, text, expected):
        assert monotonicity_class(parse_permutation(text)) == expected

    def test_accents(self):
        assert accents(standard_cycle(5)) == 4
        assert accents(identity(5)) == 0


class TestEnumeration:
    def test_of_type(self):
        perms = list(permutations_of_type(Partition((2, 2))))
        assert len(perms) == 3
        assert all(cycle_type(alpha) == Partition((2, 2)) for alpha in perms)

    @pytest.mark.parametrize('m, count', [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_positive_permutations_are_set_partitions(self, m, count):
        assert len(list(permutations_with_cycles(m, positivity='positive'))) == count

    def test_restricted_lengths(self):
        assert len(list(permutations_with_cycles(4, [2]))) == 3
        assert list(permutations_with_cycles(3, [2])) == []

    def test_all(self):
        assert len(set(all_permutations(4))) == 24


class TestIntersectionGraph:
    def test_crossing_chords(self):
        graph = intersection_graph(parse_permutation('(1,3)(2,4)'))
        assert graph.number_of_edges() == 1
        x = Poly.var(CHROMATIC)
        assert chromatic_polynomial(graph) == x * (x - 1)

    def test_separated_chords(self):
        graph = intersection_graph(parse_permutation('(1,2)(3,4)'))
        assert graph.number_of_edges() == 0
        assert chromatic_polynomial(graph) == Poly.var(CHROMATIC) ** 2

    def test_triangle(self):
        graph = intersection_graph(chord_diagram_k(3))
        x = Poly.var(CHROMATIC)
        assert chromatic_polynomial(graph) == x * (x - 1) * (x - 2)
