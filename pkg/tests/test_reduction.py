import pytest
from hypothesis import given

from nilkit.algebra import groups
from nilkit.algebra.gsystem import GSystem
from nilkit.algebra.nilseq import NilSeq, int_matmul
from nilkit.core.exceptions import StructureError
from nilkit.reduction.calculus import (
    alpha_shift, as_coordinate_element, at_sequence_index, bracket,
    difference, difference_via_alpha, evaluate_bracket,
)
from nilkit.reduction.system_ops import (
    canonicalize, count_nonconstant, dedupe, is_trivial, reduce, reduce_at,
    reorder,
)
from tests.strategies import group_sequences, sequence_pairs, small_ints


def inverse_int(matrix):
    return NilSeq([list(row) for row in matrix]).inverse().evaluate({})


class TestCalculus(object):
    @given(group_sequences())
    def test_bracket_with_identity_is_difference(self, p):
        e = NilSeq.identity(p.dim)
        assert bracket(p, e) == difference(p)

    @given(group_sequences())
    def test_bracket_with_itself_is_constant(self, p):
        assert bracket(p, p) == p.embed()

    @given(group_sequences())
    def test_difference_through_alpha(self, p):
        assert difference_via_alpha(p) == difference(p)

    @given(group_sequences(), small_ints(), small_ints())
    def test_difference_values(self, p, n, m):
        expected = int_matmul(inverse_int(p.evaluate({'n': n + m})),
                              p.evaluate({'n': n}))
        assert difference(p).evaluate({'n': n, 'm1': m}) == expected

    @given(sequence_pairs(), small_ints(), small_ints())
    def test_bracket_values(self, pair, n, m):
        p, q = pair
        expected = int_matmul(q.evaluate({'n': n + m}),
                              difference(p).evaluate({'n': n, 'm1': m}))
        assert bracket(p, q).evaluate({'n': n, 'm1': m}) == expected

    @given(group_sequences(), small_ints())
    def test_alpha_shift(self, p, n):
        assert alpha_shift(p).evaluate({'n': n}) == p.evaluate({'n': n - 1})
        assert alpha_shift(alpha_shift(p), power=-1) == p

    def test_fresh_variable(self):
        p = groups.first_row('n')
        assert difference(p, newvar='m1') == difference(p)
        with pytest.raises(StructureError):
            difference(p, newvar='m2')
        with pytest.raises(StructureError):
            bracket(p, groups.heisenberg('n', 0, 0))

    def test_coordinate_element(self):
        p = groups.heisenberg('n', 'n^2', 0)
        element = as_coordinate_element(p)
        assert at_sequence_index(element, 4) == p.specialize({'n': 4})
        with pytest.raises(StructureError):
            as_coordinate_element(p.embed())

    def test_evaluate_bracket_is_a_coordinate(self):
        p = groups.first_row('2*n')
        value = evaluate_bracket(p, NilSeq.identity(2), 5)
        assert value.is_independent_of('n')
        assert value == groups.first_row('-2*m1', level=1)


class TestSystemOps(object):
    def test_reduce_single_linear(self):
        reduced = reduce(GSystem([groups.first_row('n')]))
        assert reduced.level == 1
        assert reduced.entries == (groups.first_row('-m1', level=1),)
        assert is_trivial(reduced)

    def test_reduce_shape(self):
        system = GSystem([groups.first_row('n'), groups.first_row('n^2'),
                          groups.first_row('2*n')])
        reduced = reduce(system)
        assert len(reduced) == 2 * len(system) - 1
        assert reduced[0] == system[0].embed()
        assert reduced[2] == difference(system.last)
        assert reduced[3] == bracket(system.last, system[0])

    @given(sequence_pairs())
    def test_reduce_never_raises_filtered_degree(self, pair):
        system = GSystem(list(pair))
        before = max(p.filtered_degree('n') for p in system)
        after = max(p.filtered_degree('n') for p in reduce(system))
        assert after <= before

    @given(small_ints())
    def test_reduce_at(self, m):
        system = GSystem([groups.heisenberg('n', 0, 0),
                          groups.heisenberg(0, 'n', 0)])
        at_m = reduce_at(system, m)
        assert at_m.level == 0
        for entry, full in zip(at_m, reduce(system)):
            assert entry == full.specialize({'m1': m}).relabel(0)

    def test_dedupe_and_reorder(self):
        a, b = groups.first_row('n'), groups.first_row('2*n')
        system = GSystem([b, a, b, a])
        assert dedupe(system) == GSystem([b, a])
        assert reorder(GSystem([b, a]), (1, 0)) == GSystem([a, b])
        assert canonicalize(system) == canonicalize(GSystem([a, b]))
        with pytest.raises(StructureError):
            reorder(system, (0, 0, 1, 2))

    def test_trivial(self):
        constant = GSystem([groups.first_row(3), groups.first_row(-1)])
        assert is_trivial(constant)
        assert count_nonconstant(constant) == 0
        mixed = GSystem([groups.first_row(3), groups.first_row('n')])
        assert not is_trivial(mixed)
        assert count_nonconstant(mixed) == 1
