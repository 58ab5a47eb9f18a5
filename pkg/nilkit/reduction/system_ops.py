"""
Operations on G-systems: reduction, re-ordering, duplicate removal.
"""
from nilkit.algebra.gsystem import GSystem
from nilkit.algebra.nilseq import NilSeq, SEQUENCE_VAR, coordinate_var
from nilkit.core.exceptions import StructureError
from nilkit.reduction.calculus import bracket


def reduce(system):
    """
    p* = (i p_1, ..., i p_{k-1}, <p_k|e>, <p_k|p_1>, ..., <p_k|p_{k-1}>),
    one level up, every bracket in the same fresh variable.
    """
    *head, last = system.entries
    identity = NilSeq.identity(system.dim, level=system.level)
    entries = [p.embed() for p in head]
    entries.append(bracket(last, identity))
    entries.extend(bracket(last, p) for p in head)
    return GSystem(entries)


def reduce_at(system, m):
    """The reduction with the fresh coordinate fixed to the integer m, at the original level."""
    fresh = coordinate_var(system.level + 1)
    reduced = reduce(system)
    return GSystem(
        p.specialize({fresh: m}).relabel(system.level) for p in reduced)


def check_permutation(perm, k):
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(k)):
        raise StructureError(
            "{} is not a permutation of {} entries".format(perm, k))
    return perm


def reorder(system, perm):
    """Entry i of the result is entry perm[i] of the input."""
    perm = check_permutation(perm, len(system))
    return GSystem(system[i] for i in perm)


def duplicate_indices(system):
    seen = set()
    removed = []
    for i, p in enumerate(system):
        if p in seen:
            removed.append(i)
        else:
            seen.add(p)
    return tuple(removed)


def remove_indices(system, removed):
    removed = set(removed)
    return GSystem(p for i, p in enumerate(system) if i not in removed)


def dedupe(system):
    return remove_indices(system, duplicate_indices(system))


def is_trivial(system):
    return all(p.is_independent_of(SEQUENCE_VAR) for p in system)


def count_nonconstant(system):
    return sum(1 for p in system if not p.is_independent_of(SEQUENCE_VAR))


def sorting_permutation(system):
    return tuple(sorted(range(len(system)),
                        key=lambda i: system[i].serialize()))


def canonicalize(system):
    """Dedupe, then sort entries by their serialization."""
    system = dedupe(system)
    return reorder(system, sorting_permutation(system))


def last_moved_permutation(k, j):
    """The permutation that moves entry j to the end and keeps the rest in order."""
    return tuple(i for i in range(k) if i != j) + (j,)
