"""
The semidirect product H~ = G~ x_alpha Z acting on coordinates.

Elements of G~ are level-1 NilSeq in the coordinate variable m1 only:
q(m) is the value of the G-sequence q at m. alpha(q)(m) = q(m - 1).

    (p, a^s) (p', a^t) = (p alpha^s(p'), a^(s+t))
    rho(q, a^s): p -> q alpha^s(p)
    (S^h y)_c = y_{rho(h)^-1 c}
"""
import functools
from collections import namedtuple

from nilkit.algebra.nilseq import NilSeq, SEQUENCE_VAR, coordinate_var
from nilkit.core.exceptions import StructureError, WindowClosureError
from nilkit.reduction.calculus import alpha_shift, as_coordinate_element

COORDINATE = coordinate_var(1)
ELEMENT_CACHE_SIZE = 4096


def as_element(value, dim=None):
    """
    A G~ element from a level-1 NilSeq without n, a level-0 sequence (read
    through n -> m1), or an integer matrix (a constant sequence).
    """
    if isinstance(value, NilSeq):
        if value.level == 0:
            return as_coordinate_element(value)
        if value.level == 1 and value.is_independent_of(SEQUENCE_VAR):
            return value
        raise StructureError(
            "{!r} is not an element of G^Z".format(value))
    rows = [list(row) for row in value]
    element = NilSeq(rows, level=1)
    if dim is not None and element.dim != dim:
        raise StructureError(
            "Expected a {0}x{0} matrix, got {1}".format(dim, element.dim))
    return element


def constant(matrix):
    """iota(g) for an integer (or level-0 constant) matrix g."""
    return as_element(matrix if not isinstance(matrix, NilSeq)
                      else matrix.evaluate({}))


def alpha_power(q, s):
    return alpha_shift(q, power=s, var=COORDINATE)


@functools.lru_cache(maxsize=ELEMENT_CACHE_SIZE)
def element_value(q, n):
    """q(n) as an integer matrix."""
    return q.evaluate({COORDINATE: n})


class SemidirectElement(namedtuple('SemidirectElement', ['q', 'shift'])):

    @classmethod
    def identity(cls, dim):
        return cls(NilSeq.identity(dim, level=1), 0)

    @classmethod
    def translation(cls, q):
        return cls(as_element(q), 0)

    @classmethod
    def alpha(cls, dim, power=1):
        return cls(NilSeq.identity(dim, level=1), int(power))

    def __mul__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return SemidirectElement(
            self.q * alpha_power(other.q, self.shift),
            self.shift + other.shift)

    def inverse(self):
        return SemidirectElement(
            alpha_power(self.q.inverse(), -self.shift), -self.shift)

    def rho(self, p):
        """The permutation representation: p -> q alpha^shift(p)."""
        return self.q * alpha_power(p, self.shift)

    def source(self, c):
        """The coordinate that S^h moves to c: rho(h)^-1 c."""
        return self.inverse().rho(c)

    def __eq__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return self.q == other.q and self.shift == other.shift

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.q, self.shift))

    def __repr__(self):
        return "SemidirectElement({}, alpha^{})".format(
            self.q.serialize(), self.shift)


def apply_S(h, block, window, coords=None):
    """
    S^h applied to a coordinate block, restricted to `coords` (default: the
    part of the window where the result is determined).
    """
    if coords is None:
        coords = window.core(h)
    out = []
    for c in coords:
        src = h.source(c)
        if src not in window:
            raise WindowClosureError(
                "Coordinate {} is not determined by the window".format(
                    c.serialize()))
        out.append(block[window.position(src)])
    return tuple(out)
