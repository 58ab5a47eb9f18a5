from hypothesis import strategies as st

from nilkit.algebra import groups
from nilkit.algebra.multipoly import MultiPoly
from nilkit.algebra.nilseq import NilSeq, level_varlist

coefficients = st.integers(min_value=-6, max_value=6)


def exponents(nvars, max_degree=3):
    return st.tuples(*[st.integers(0, max_degree)] * nvars).filter(
        lambda e: sum(e) <= max_degree)


def multipolys(varlist=('n',), max_degree=3, max_terms=4):
    varlist = tuple(varlist)
    return st.dictionaries(
        exponents(len(varlist), max_degree), coefficients,
        max_size=max_terms,
    ).map(lambda terms: MultiPoly(terms, varlist))


@st.composite
def nilseqs(draw, dim=None, level=0, max_degree=2, max_terms=3):
    if dim is None:
        dim = draw(st.integers(1, 4))
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
                row.append(draw(multipolys(varlist, max_degree, max_terms)))
        rows.append(row)
    return NilSeq(rows, level=level)


@st.composite
def same_dim_nilseqs(draw, count, level=0, max_degree=2):
    dim = draw(st.integers(1, 4))
    return [draw(nilseqs(dim=dim, level=level, max_degree=max_degree))
            for _ in range(count)]


GROUP_SPECS = [
    groups.make_group_spec(groups.FIRST_ROW, 1),
    groups.make_group_spec(groups.FIRST_ROW, 2),
    groups.make_group_spec(groups.HEISENBERG),
]


def group_specs():
    return st.sampled_from(GROUP_SPECS)


@st.composite
def group_sequences(draw, spec=None, max_degree=2):
    if spec is None:
        spec = draw(group_specs())
    if spec.kind == groups.FIRST_ROW:
        return groups.first_row(*[
            draw(multipolys(max_degree=max_degree, max_terms=2))
            for _ in range(spec.rank)])
    return groups.heisenberg(*[
        draw(multipolys(max_degree=max_degree, max_terms=2))
        for _ in range(3)])


@st.composite
def sequence_pairs(draw, max_degree=2):
    spec = draw(group_specs())
    return (draw(group_sequences(spec, max_degree)),
            draw(group_sequences(spec, max_degree)))


def small_ints(bound=6):
    return st.integers(min_value=-bound, max_value=bound)
