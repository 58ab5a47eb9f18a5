"""
Random polynomial matrices for the property batteries.

Every sampler takes an explicit numpy Generator so batteries are reproducible
from the experiment seed.
"""
import itertools

from nilkit.algebra.multipoly import MultiPoly
from nilkit.algebra.nilseq import NilSeq, level_varlist
from nilkit.algebra import groups


def random_multipoly(rng, varlist, max_degree=3, max_terms=4, coeff_bound=5):
    varlist = tuple(varlist)
    monomials = [
        e for e in itertools.product(range(max_degree + 1), repeat=len(varlist))
        if sum(e) <= max_degree
    ]
    n_terms = int(rng.integers(0, max_terms + 1))
    terms = {}
    for _ in range(n_terms):
        exponents = monomials[int(rng.integers(0, len(monomials)))]
        terms[exponents] = int(rng.integers(-coeff_bound, coeff_bound + 1))
    return MultiPoly(terms, varlist)


def random_nilseq(rng, dim, level=0, max_degree=3, max_terms=3, coeff_bound=5):
    varlist = level_varlist(level)
    zero = MultiPoly.zero(varlist)
    one = MultiPoly.one(varlist)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if j < i:
                row.append(zero)
            elif j == i:
                row.append(one)
            else:
                row.append(random_multipoly(rng, varlist, max_degree,
                                            max_terms, coeff_bound))
        rows.append(row)
    return NilSeq(rows, level=level)


def random_group_sequence(rng, group_spec, level=0, max_degree=2,
                          max_terms=2, coeff_bound=3):
    """A random element of the given representation with polynomial entries."""
    varlist = level_varlist(level)
    if group_spec.kind == groups.FIRST_ROW:
        return groups.first_row(
            *[random_multipoly(rng, varlist, max_degree, max_terms, coeff_bound)
              for _ in range(group_spec.rank)], level=level)
    elif group_spec.kind == groups.HEISENBERG:
        return groups.heisenberg(
            *[random_multipoly(rng, varlist, max_degree, max_terms, coeff_bound)
              for _ in range(3)], level=level)
    return random_nilseq(rng, group_spec.dim, level, max_degree, max_terms,
                         coeff_bound)


def random_coordinate_element(rng, group_spec, max_degree=2, max_terms=2,
                              coeff_bound=3):
    """A random element of G^Z: level 1 with entries in m1 only."""
    seq = random_group_sequence(rng, group_spec, 0, max_degree, max_terms,
                                coeff_bound)
    return seq.relabel(1, {'n': 'm1'})
