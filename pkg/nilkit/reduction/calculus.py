"""
Shift, difference and bracket of polynomial sequences.

For a level-r sequence p(n) the fresh coordinate variable is m{r+1}:

    D_m p(n)    = p(n + m)^-1 p(n)
    <p|q>_m(n)  = q(n + m) D_m p(n)

Both results are level-(r+1) NilSeq over (n, m1, ..., m{r+1}).
"""
from nilkit.algebra.multipoly import MultiPoly
from nilkit.algebra.nilseq import (
    NilSeq, SEQUENCE_VAR, coordinate_var, rename_variable,
)
from nilkit.core.exceptions import StructureError


def _fresh_variable(p, newvar):
    expected = coordinate_var(p.level + 1)
    if newvar is None:
        return expected
    if newvar in p.varlist:
        raise StructureError(
            "Variable {} is already in {}".format(newvar, p.varlist))
    if newvar != expected:
        raise StructureError(
            "The fresh variable of a level {} sequence is {}, not {}".format(
                p.level, expected, newvar))
    return newvar


def alpha_shift(p, power=1, var=SEQUENCE_VAR):
    """
    alpha^power: substitute var -> var - power, so alpha(p)(n) = p(n - 1).
    Symbolic powers go through `alpha_shift_by`.
    """
    if var not in p.varlist:
        raise StructureError("Variable {} not in {}".format(var, p.varlist))
    if power == 0:
        return p
    varlist = p.varlist
    replacement = MultiPoly.variable(var, varlist) - int(power)
    return p.substitute(var, replacement)


def alpha_shift_by(p, offset_var, var, sign=-1):
    """alpha^(sign * offset_var): substitute var -> var - sign * offset_var."""
    if offset_var not in p.varlist or var not in p.varlist:
        raise StructureError(
            "Variables {}, {} must both be in {}".format(
                var, offset_var, p.varlist))
    varlist = p.varlist
    replacement = (MultiPoly.variable(var, varlist)
                   - sign * MultiPoly.variable(offset_var, varlist))
    return p.substitute(var, replacement)


def difference(p, newvar=None):
    newvar = _fresh_variable(p, newvar)
    lifted = p.embed()
    return lifted.shift(SEQUENCE_VAR, newvar).inverse() * lifted


def bracket(p, q, newvar=None):
    if not isinstance(q, NilSeq) or q.dim != p.dim or q.level != p.level:
        raise StructureError(
            "Cannot bracket {!r} with {!r}".format(p, q))
    newvar = _fresh_variable(p, newvar)
    return q.embed().shift(SEQUENCE_VAR, newvar) * difference(p, newvar)


def as_coordinate_element(p):
    """
    Read a level-0 sequence p as an element of G^Z: the level-1 matrix with
    p's n replaced by m1 and no n dependence.
    """
    if p.level != 0:
        raise StructureError("Only level 0 sequences are elements of G^Z")
    return rename_variable(p, SEQUENCE_VAR, coordinate_var(1))


def at_sequence_index(element, n):
    """Value of a G^Z element (level 1, no n) at coordinate n, as a level-0 matrix."""
    if element.level != 1 or not element.is_independent_of(SEQUENCE_VAR):
        raise StructureError(
            "{!r} is not an element of G^Z".format(element))
    return element.specialize({coordinate_var(1): n}).relabel(0)


def difference_via_alpha(p):
    """
    D_m p(n) = alpha^-n(p^-1)(m) p(n), with p^-1 read as an element of G^Z.
    Shares no code with `difference` beyond the group law.
    """
    m = coordinate_var(1)
    inverse_element = as_coordinate_element(p.inverse())
    shifted = alpha_shift_by(inverse_element, SEQUENCE_VAR, m, sign=-1)
    return shifted * p.relabel(1)


def evaluate_bracket(p, q, n):
    """<p|q>(n) for a concrete integer n: a level-1 element with no n dependence."""
    return bracket(p, q).specialize({SEQUENCE_VAR: n})


__all__ = [
    'alpha_shift', 'alpha_shift_by', 'difference', 'bracket',
    'difference_via_alpha', 'as_coordinate_element', 'at_sequence_index',
    'evaluate_bracket',
]
