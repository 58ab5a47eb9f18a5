"""
Complexity of a G-system: the least number of reductions, with free
re-orderings and duplicate removals, needed to reach a trivial system.

The search is an iterative deepening DFS over canonical states (deduped,
entries sorted by serialization). A move picks the entry to put last and
reduces; the child is canonicalized again. Failed (state, budget) pairs are
memoized across deepening rounds.
"""
import enum
from collections import namedtuple

from nilkit.algebra.gsystem import GSystem
from nilkit.core.exceptions import StructureError
from nilkit.reduction import system_ops

REDUCE = 'reduce'
REORDER = 'reorder'
DEDUPE = 'dedupe'
STEP_KINDS = (REDUCE, REORDER, DEDUPE)


class SearchStatus(enum.Enum):
    EXCEEDED = 'exceeded'


EXCEEDED = SearchStatus.EXCEEDED


class TraceStep(namedtuple('TraceStep', ['op', 'arg', 'snapshot'])):
    """
    op: one of reduce / reorder / dedupe.
    arg: for reduce the index of the reduced (last) entry, for reorder the
        permutation, for dedupe the removed indices.
    snapshot: the GSystem after the step.
    """

    def to_json_dict(self):
        if self.op == REDUCE:
            arg = self.arg
        else:
            arg = list(self.arg)
        return {'op': self.op, 'arg': arg,
                'snapshot': self.snapshot.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data):
        op = data['op']
        if op not in STEP_KINDS:
            raise StructureError("Unknown trace step {}".format(op))
        arg = data['arg'] if op == REDUCE else tuple(data['arg'])
        return cls(op, arg, GSystem.from_json_dict(data['snapshot']))


def apply_step(system, op, arg):
    if op == REDUCE:
        if arg != len(system) - 1:
            raise StructureError(
                "Reduction acts on the last entry ({}), not {}".format(
                    len(system) - 1, arg))
        return system_ops.reduce(system)
    elif op == REORDER:
        return system_ops.reorder(system, arg)
    elif op == DEDUPE:
        duplicates = system_ops.duplicate_indices(system)
        if tuple(arg) != duplicates:
            raise StructureError(
                "Entries {} are not exactly the duplicates {}".format(
                    tuple(arg), duplicates))
        return system_ops.remove_indices(system, arg)
    raise StructureError("Unknown trace step {}".format(op))


class ReductionTrace(object):
    def __init__(self, initial, steps=()):
        self.initial = initial
        self.steps = list(steps)

    @property
    def num_reductions(self):
        return sum(1 for step in self.steps if step.op == REDUCE)

    @property
    def final(self):
        return self.steps[-1].snapshot if self.steps else self.initial

    def replay(self):
        """Re-run every step from the initial system; returns the snapshots."""
        system = self.initial
        snapshots = []
        for step in self.steps:
            system = apply_step(system, step.op, step.arg)
            snapshots.append(system)
        return snapshots

    def verify(self):
        return all(replayed == step.snapshot
                   for replayed, step in zip(self.replay(), self.steps))

    def to_json_dict(self):
        return {
            'initial': self.initial.to_json_dict(),
            'steps': [step.to_json_dict() for step in self.steps],
        }

    @classmethod
    def from_json_dict(cls, data):
        return cls(GSystem.from_json_dict(data['initial']),
                   [TraceStep.from_json_dict(s) for s in data['steps']])


ComplexityResult = namedtuple('ComplexityResult', ['value', 'trace'])


def _normalize(system, sort=True):
    """Dedupe then (optionally) sort, recording the non-trivial steps."""
    steps = []
    removed = system_ops.duplicate_indices(system)
    if removed:
        system = system_ops.remove_indices(system, removed)
        steps.append(TraceStep(DEDUPE, removed, system))
    if sort:
        perm = system_ops.sorting_permutation(system)
        if perm != tuple(range(len(system))):
            system = system_ops.reorder(system, perm)
            steps.append(TraceStep(REORDER, perm, system))
    return system, steps


def _move(state, j, sort=True):
    """Put entry j last, reduce, normalize. Returns (child, steps)."""
    steps = []
    k = len(state)
    perm = system_ops.last_moved_permutation(k, j)
    if perm != tuple(range(k)):
        state = system_ops.reorder(state, perm)
        steps.append(TraceStep(REORDER, perm, state))
    state = system_ops.reduce(state)
    steps.append(TraceStep(REDUCE, k - 1, state))
    child, normalize_steps = _normalize(state, sort=sort)
    return child, steps + normalize_steps


def _entry_set(system):
    return frozenset(system.entries)


class ComplexitySearch(object):
    """
    Iterative deepening search for the complexity of a system.

    allow_initial_reorder: the first reduction may act on any entry. When
        False it acts on the last entry of the given (deduped) order.
    prune_dominated: skip a child whose entries strictly contain those of a
        sibling; complexity is monotone under taking sub-systems.
    """

    def __init__(self, system, max_depth, allow_initial_reorder=True,
                 prune_dominated=False):
        if max_depth < 0:
            raise StructureError("max_depth must be nonnegative")
        self.system = system
        self.max_depth = int(max_depth)
        self.allow_initial_reorder = allow_initial_reorder
        self.prune_dominated = prune_dominated
        self.nodes_expanded = 0
        self.depth_reached = 0
        self._failed = {}
        self._children = {}

    def _children_of(self, state):
        if state in self._children:
            return self._children[state]
        self.nodes_expanded += 1
        candidates = {}
        for j in range(len(state)):
            child, steps = _move(state, j)
            if child not in candidates:
                candidates[child] = steps
        children = sorted(candidates.items(),
                          key=lambda item: item[0].serialize())
        if self.prune_dominated:
            sets = [_entry_set(child) for child, _ in children]
            children = [
                item for item, s in zip(children, sets)
                if not any(other < s for other in sets)
            ]
        self._children[state] = children
        return children

    def _dfs(self, state, remaining):
        if system_ops.is_trivial(state):
            return []
        if remaining == 0:
            return None
        # every reduction removes the n dependence of at most one entry
        if system_ops.count_nonconstant(state) > remaining:
            return None
        if self._failed.get(state, -1) >= remaining:
            return None
        for child, steps in self._children_of(state):
            path = self._dfs(child, remaining - 1)
            if path is not None:
                return steps + path
        self._failed[state] = max(self._failed.get(state, -1), remaining)
        return None

    def _first_moves(self, start):
        if self.allow_initial_reorder:
            return None
        child, steps = _move(start, len(start) - 1)
        return [(child, steps)]

    def run(self):
        start, prefix = _normalize(self.system,
                                   sort=self.allow_initial_reorder)
        if system_ops.is_trivial(start):
            return ComplexityResult(0, ReductionTrace(self.system, prefix))
        first_moves = self._first_moves(start)
        for depth in range(1, self.max_depth + 1):
            self.depth_reached = depth
            if first_moves is None:
                path = self._dfs(start, depth)
            else:
                path = None
                for child, steps in first_moves:
                    rest = self._dfs(child, depth - 1)
                    if rest is not None:
                        path = steps + rest
                        break
            if path is not None:
                trace = ReductionTrace(self.system, prefix + path)
                return ComplexityResult(trace.num_reductions, trace)
        return EXCEEDED


def complexity(system, max_depth, allow_initial_reorder=True,
               prune_dominated=False):
    return ComplexitySearch(
        system,
        max_depth,
        allow_initial_reorder=allow_initial_reorder,
        prune_dominated=prune_dominated,
    ).run()
