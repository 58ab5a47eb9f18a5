import json

import pytest

from nilkit.algebra import groups
from nilkit.algebra.gsystem import GSystem
from nilkit.core.exceptions import StructureError
from nilkit.reduction.complexity import (
    EXCEEDED, REDUCE, ComplexitySearch, ReductionTrace, TraceStep, apply_step,
    complexity,
)
from nilkit.reduction.system_ops import count_nonconstant, is_trivial

first_row, heisenberg = groups.first_row, groups.heisenberg

CONSTANT = GSystem([first_row(3), first_row(-1)])
LINEAR = GSystem([first_row('n')])
N_2N = GSystem([first_row('n'), first_row('2*n')])
HEISENBERG_LINEAR = GSystem([heisenberg('n', 0, 0), heisenberg(0, 'n', 0)])
Z2_LINEAR = GSystem([first_row('n', 0), first_row(0, 'n')])
HEISENBERG_QUADRATIC = GSystem([heisenberg('n', 'n^2', 0)])


@pytest.mark.parametrize('system,expected', [
    (CONSTANT, 0),
    (LINEAR, 1),
    (GSystem([first_row('n^2')]), 2),
    (N_2N, 3),
])
def test_known_values(system, expected):
    found = complexity(system, 6)
    assert found is not EXCEEDED
    assert found.value == expected
    assert found.trace.num_reductions == expected
    assert found.trace.verify()
    assert is_trivial(found.trace.final)


def test_heisenberg_linear_is_finite():
    found = complexity(HEISENBERG_LINEAR, 6)
    assert found is not EXCEEDED
    assert 1 <= found.value <= 6
    assert is_trivial(found.trace.final)


def test_exceeded():
    assert complexity(LINEAR, 0) is EXCEEDED
    assert complexity(N_2N, 2) is EXCEEDED


def test_constant_needs_no_search():
    search = ComplexitySearch(CONSTANT, 0)
    found = search.run()
    assert found.value == 0
    assert search.nodes_expanded == 0


def test_duplicates_are_free():
    doubled = GSystem([first_row('n'), first_row('n')])
    assert complexity(doubled, 3).value == 1


@pytest.mark.parametrize('flags', [
    dict(allow_initial_reorder=False),
    dict(prune_dominated=True),
])
def test_search_flags(flags):
    found = complexity(N_2N, 6, **flags)
    assert found is not EXCEEDED
    assert found.value == 3
    assert found.trace.verify()
    assert found.trace.replay()[-1] == found.trace.final
    assert is_trivial(found.trace.final)


@pytest.mark.parametrize('system', [N_2N, HEISENBERG_LINEAR, Z2_LINEAR])
def test_initial_order_does_not_matter(system):
    reversed_system = GSystem(list(reversed(system.entries)))
    assert complexity(reversed_system, 6).value == complexity(system, 6).value


@pytest.mark.parametrize('system', [Z2_LINEAR, HEISENBERG_QUADRATIC])
def test_finite_complexity(system):
    found = complexity(system, 6)
    assert found is not EXCEEDED
    assert count_nonconstant(system) <= found.value <= 6
    assert found.trace.verify()
    assert is_trivial(found.trace.final)


def test_negative_depth():
    with pytest.raises(StructureError):
        complexity(LINEAR, -1)


class TestTrace(object):
    def test_json_round_trip(self):
        trace = complexity(N_2N, 6).trace
        data = json.loads(json.dumps(trace.to_json_dict()))
        loaded = ReductionTrace.from_json_dict(data)
        assert loaded.verify()
        assert loaded.num_reductions == trace.num_reductions
        assert loaded.final == trace.final

    def test_tampered_snapshot_fails(self):
        trace = complexity(N_2N, 6).trace
        step = trace.steps[-1]
        trace.steps[-1] = TraceStep(step.op, step.arg, N_2N)
        assert not trace.verify()

    def test_reduce_acts_on_the_last_entry(self):
        with pytest.raises(StructureError):
            apply_step(N_2N, REDUCE, 0)
        with pytest.raises(StructureError):
            apply_step(N_2N, 'merge', None)
