"""
Upper unitriangular matrices over MultiPoly.

A NilSeq at level r has entries over the variables (n, m1, ..., mr). Read as
a function of n it is a polynomial sequence into UT(d, Z) (level 0), or into
the iterated sequence groups at higher levels, where m1..mr index the
coordinates of G^Z, (G^Z)^Z, ...
"""
import json
import numbers

from nilkit.algebra.multipoly import MultiPoly, parse_multipoly, poly_substitute
from nilkit.core.exceptions import StructureError

SEQUENCE_VAR = 'n'


def level_varlist(level):
    if level < 0:
        raise StructureError("Level must be nonnegative, got {}".format(level))
    return (SEQUENCE_VAR,) + tuple('m{}'.format(i) for i in range(1, level + 1))


def coordinate_var(level):
    """The outermost coordinate variable of a level >= 1 group."""
    if level < 1:
        raise StructureError("Level 0 elements have no coordinate variable")
    return 'm{}'.format(level)


def _as_entry(value, varlist):
    if isinstance(value, MultiPoly):
        if value.varlist != varlist:
            raise StructureError(
                "Entry over {} where {} was expected".format(
                    value.varlist, varlist))
        return value
    if isinstance(value, numbers.Integral) and not isinstance(value, bool):
        return MultiPoly.constant(value, varlist)
    if isinstance(value, str):
        return parse_multipoly(value, varlist)
    raise StructureError("Cannot use {!r} as a matrix entry".format(value))


class NilSeq(object):
    """
    Immutable d x d upper unitriangular matrix of MultiPoly.

    Products and inverses stay in the type; equality is entrywise
    normal-form equality.
    """
    __slots__ = ('_dim', '_level', '_rows', '_hash', '_text')

    def __init__(self, rows, level=0):
        varlist = level_varlist(level)
        rows = tuple(
            tuple(_as_entry(value, varlist) for value in row) for row in rows)
        dim = len(rows)
        if dim < 1:
            raise StructureError("Dimension must be at least 1")
        one = MultiPoly.one(varlist)
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise StructureError("Matrix is not square")
            if row[i] != one:
                raise StructureError(
                    "Diagonal entry ({}, {}) is {}, not 1".format(i, i, row[i]))
            for j in range(i):
                if not row[j].is_zero():
                    raise StructureError(
                        "Entry ({}, {}) below the diagonal is nonzero".format(
                            i, j))
        self._dim = dim
        self._level = level
        self._rows = rows
        self._hash = None
        self._text = None

    @classmethod
    def identity(cls, dim, level=0):
        varlist = level_varlist(level)
        return cls._from_trusted(
            [[MultiPoly.one(varlist) if i == j else MultiPoly.zero(varlist)
              for j in range(dim)] for i in range(dim)], level)

    @classmethod
    def _from_trusted(cls, rows, level):
        """Build from entries already known to be unitriangular over the level."""
        obj = cls.__new__(cls)
        obj._dim = len(rows)
        obj._level = level
        obj._rows = tuple(tuple(row) for row in rows)
        obj._hash = None
        obj._text = None
        return obj

    """
    Accessors
    """

    @property
    def dim(self):
        return self._dim

    @property
    def level(self):
        return self._level

    @property
    def varlist(self):
        return level_varlist(self._level)

    @property
    def rows(self):
        return self._rows

    def entry(self, i, j):
        return self._rows[i][j]

    def upper_entries(self):
        for i in range(self._dim):
            for j in range(i + 1, self._dim):
                yield (i, j), self._rows[i][j]

    def is_identity(self):
        return all(p.is_zero() for _, p in self.upper_entries())

    def is_independent_of(self, var):
        if var not in self.varlist:
            raise StructureError(
                "Variable {} not in {}".format(var, self.varlist))
        return not any(p.depends_on(var) for _, p in self.upper_entries())

    def degree(self, var):
        return max([p.degree(var) for _, p in self.upper_entries()] + [0])

    def filtered_degree(self, var):
        """
        Smallest D with deg_var(entry (i, j)) <= (j - i) * D for all i < j.
        Products and inverses never increase it.
        """
        best = 0
        for (i, j), p in self.upper_entries():
            deg = p.degree(var)
            if deg > 0:
                weight = j - i
                best = max(best, -(-deg // weight))
        return best

    """
    Group law
    """

    def _check_compatible(self, other):
        if not isinstance(other, NilSeq):
            raise StructureError("Expected a NilSeq, got {!r}".format(other))
        if other._dim != self._dim:
            raise StructureError(
                "Dimension mismatch: {} vs {}".format(self._dim, other._dim))
        if other._level != self._level:
            raise StructureError(
                "Level mismatch: {} vs {}".format(self._level, other._level))

    def __mul__(self, other):
        self._check_compatible(other)
        d = self._dim
        a, b = self._rows, other._rows
        varlist = self.varlist
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                if j < i:
                    row.append(MultiPoly.zero(varlist))
                elif j == i:
                    row.append(MultiPoly.one(varlist))
                else:
                    value = a[i][j] + b[i][j]
                    for k in range(i + 1, j):
                        value = value + a[i][k] * b[k][j]
                    row.append(value)
            rows.append(row)
        return NilSeq._from_trusted(rows, self._level)

    def inverse(self):
        """(I + N)^-1 = I - N + N^2 - ... , N strictly upper triangular."""
        d = self._dim
        varlist = self.varlist
        zero = MultiPoly.zero(varlist)
        nilpotent = [[self._rows[i][j] if j > i else zero for j in range(d)]
                     for i in range(d)]
        result = [[MultiPoly.one(varlist) if i == j else zero
                   for j in range(d)] for i in range(d)]
        power = [row[:] for row in result]
        for t in range(1, d):
            power = _matmul_lists(power, nilpotent, zero)
            sign = -1 if t % 2 else 1
            for i in range(d):
                for j in range(i + 1, d):
                    if not power[i][j].is_zero():
                        result[i][j] = result[i][j] + sign * power[i][j]
        return NilSeq._from_trusted(result, self._level)

    def __eq__(self, other):
        if not isinstance(other, NilSeq):
            return NotImplemented
        return (self._level == other._level and self._dim == other._dim
                and self._rows == other._rows)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._level, self._rows))
        return self._hash

    """
    Substitutions and relabelings
    """

    def map_entries(self, fn, level=None):
        level = self._level if level is None else level
        rows = [[fn(p) for p in row] for row in self._rows]
        return NilSeq._from_trusted(rows, level)

    def substitute(self, var, replacement):
        return self.map_entries(lambda p: poly_substitute(p, var, replacement))

    def specialize(self, assignment):
        """Substitute integers for some variables, staying at the same level."""
        return self.map_entries(lambda p: p.specialize(assignment))

    def shift(self, var, offset_var):
        """Replace `var` by `var + offset_var`; both must be declared."""
        if offset_var not in self.varlist:
            raise StructureError(
                "Offset variable {} not in {}".format(offset_var, self.varlist))
        return self.map_entries(lambda p: p.shift(var, offset_var))

    def relabel(self, level, mapping=None):
        """
        Re-express over the variables of `level`, renaming first. With no
        mapping and level = self.level + 1 this is the embedding of a
        group element as a constant sequence.
        """
        varlist = level_varlist(level)
        return self.map_entries(lambda p: p.relabel(varlist, mapping),
                                level=level)

    def embed(self):
        """iota: the same matrix read one level up, with no new-variable dependence."""
        return self.relabel(self._level + 1)

    def evaluate(self, assignment):
        """Exact integer matrix as a tuple of row tuples."""
        return tuple(
            tuple(p.evaluate(assignment) for p in row) for row in self._rows)

    """
    Text form
    """

    def to_list(self):
        return [[p.serialize() for p in row] for row in self._rows]

    def serialize(self):
        if self._text is None:
            self._text = json.dumps(self.to_list())
        return self._text

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return "NilSeq({}, level={})".format(self.serialize(), self._level)


def _matmul_lists(a, b, zero):
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            value = zero
            for k in range(d):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    value = value + a[i][k] * b[k][j]
            row.append(value)
        out.append(row)
    return out


def parse_nilseq(data, level=0):
    """
    Accepts the serialized form (a JSON string) or an already decoded list
    of rows of polynomial strings.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except ValueError as e:
            raise StructureError("Malformed matrix {!r}: {}".format(data, e))
    if not isinstance(data, (list, tuple)) or not all(
            isinstance(row, (list, tuple)) for row in data):
        raise StructureError("A matrix is a list of rows, got {!r}".format(data))
    return NilSeq(data, level=level)


def mat_mul(a, b):
    return a * b


def mat_inv(a):
    return a.inverse()


def mat_eval(a, assignment):
    return a.evaluate(assignment)


def is_independent_of(a, var):
    return a.is_independent_of(var)


def rename_variable(a, old, new):
    """
    Rename `old` to `new`, moving to the least level that declares `new`
    (or staying put). n -> m1 reads a level 0 sequence as an element of G^Z
    and m1 -> n reads it back.
    """
    level = a.level
    if new != SEQUENCE_VAR:
        level = max(level, int(new[1:]))
    elif old != SEQUENCE_VAR and a.level == int(old[1:]):
        level = a.level - 1
    if new in a.varlist and not a.is_independent_of(new):
        raise StructureError(
            "{} already depends on {}".format(a.serialize(), new))
    return a.relabel(level, {old: new})


def int_matmul(a, b, modulus=None):
    """Product of integer matrices given as row tuples, optionally reduced."""
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            value = sum(a[i][k] * b[k][j] for k in range(d))
            if modulus is not None:
                value %= modulus
            row.append(value)
        out.append(tuple(row))
    return tuple(out)
