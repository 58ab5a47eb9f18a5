"""
Concrete groups represented inside UT(d, Z).

  * free abelian Z^r: first-row embedding I + sum v_i E_{1,i+1}, dim r + 1
  * discrete Heisenberg group: UT(3, Z), (a, b, c) at entries (1,2), (2,3), (1,3)
  * UT(d, Z) itself, given by its full matrix
"""
from collections import namedtuple

from nilkit.algebra.multipoly import MultiPoly
from nilkit.algebra.nilseq import NilSeq, level_varlist, _as_entry
from nilkit.core.exceptions import StructureError

FIRST_ROW = 'first_row'
HEISENBERG = 'heisenberg'
UNITRIANGULAR = 'unitriangular'
GROUP_KINDS = (FIRST_ROW, HEISENBERG, UNITRIANGULAR)


def first_row(*values, level=0):
    varlist = level_varlist(level)
    d = len(values) + 1
    zero = MultiPoly.zero(varlist)
    rows = [[MultiPoly.one(varlist) if i == j else zero for j in range(d)]
            for i in range(d)]
    for i, value in enumerate(values):
        rows[0][i + 1] = _as_entry(value, varlist)
    return NilSeq(rows, level=level)


def heisenberg(a, b, c, level=0):
    varlist = level_varlist(level)
    a, b, c = (_as_entry(v, varlist) for v in (a, b, c))
    zero = MultiPoly.zero(varlist)
    one = MultiPoly.one(varlist)
    return NilSeq([[one, a, c], [zero, one, b], [zero, zero, one]],
                  level=level)


def unitriangular(rows, level=0):
    return NilSeq(rows, level=level)


def heisenberg_coordinates(x):
    """(a, b, c) of a 3 x 3 unitriangular matrix, symbolic or integer."""
    rows = x.rows if isinstance(x, NilSeq) else x
    return rows[0][1], rows[1][2], rows[0][2]


def first_row_coordinates(x):
    rows = x.rows if isinstance(x, NilSeq) else x
    return tuple(rows[0][1:])


def is_first_row(x):
    """True when every nonzero off-diagonal entry sits in the first row."""
    rows = x.rows if isinstance(x, NilSeq) else x
    d = len(rows)
    for i in range(1, d):
        for j in range(i + 1, d):
            value = rows[i][j]
            if (value.is_zero() if isinstance(value, MultiPoly) else value == 0):
                continue
            return False
    return True


class GroupSpec(namedtuple('GroupSpec', ['kind', 'rank'])):
    """
    How to read coordinate lists as group elements.

    `rank` is the number of free generators for first_row and the matrix
    dimension for unitriangular; it is ignored for heisenberg.
    """

    @property
    def dim(self):
        if self.kind == FIRST_ROW:
            return self.rank + 1
        elif self.kind == HEISENBERG:
            return 3
        return self.rank

    def build(self, coords, level=0):
        if self.kind == FIRST_ROW:
            if len(coords) != self.rank:
                raise StructureError(
                    "Expected {} coordinates, got {}".format(self.rank, coords))
            return first_row(*coords, level=level)
        elif self.kind == HEISENBERG:
            if len(coords) != 3:
                raise StructureError(
                    "Heisenberg elements take (a, b, c), got {}".format(coords))
            return heisenberg(*coords, level=level)
        elif self.kind == UNITRIANGULAR:
            element = unitriangular(coords, level=level)
            if element.dim != self.rank:
                raise StructureError(
                    "Expected a {0}x{0} matrix".format(self.rank))
            return element
        raise StructureError("Unknown group kind: {}".format(self.kind))

    def coordinates(self, element):
        if self.kind == FIRST_ROW:
            return [p.serialize() for p in first_row_coordinates(element)]
        elif self.kind == HEISENBERG:
            return [p.serialize() for p in heisenberg_coordinates(element)]
        return element.to_list()

    def identity(self, level=0):
        return NilSeq.identity(self.dim, level=level)

    def generators(self):
        """Integer generators as level 0 constants."""
        if self.kind == FIRST_ROW:
            return [first_row(*[int(i == j) for j in range(self.rank)])
                    for i in range(self.rank)]
        elif self.kind == HEISENBERG:
            return [heisenberg(1, 0, 0), heisenberg(0, 1, 0)]
        out = []
        for i in range(self.rank - 1):
            rows = [[int(a == b or (a == i and b == i + 1))
                     for b in range(self.rank)] for a in range(self.rank)]
            out.append(unitriangular(rows))
        return out


def make_group_spec(kind, rank=None):
    if kind not in GROUP_KINDS:
        raise StructureError("Unknown group kind: {}".format(kind))
    if kind == HEISENBERG:
        return GroupSpec(kind, 3)
    if rank is None or rank < 1:
        raise StructureError("Group kind {} needs a positive rank".format(kind))
    return GroupSpec(kind, int(rank))
