"""
Exact polynomial arithmetic and unitriangular matrices over it.
"""
from nilkit.algebra.multipoly import (
    MultiPoly, parse_multipoly, poly_arith, poly_shift, poly_substitute,
)
from nilkit.algebra.nilseq import (
    NilSeq, parse_nilseq, level_varlist, coordinate_var, mat_mul, mat_inv,
    mat_eval, is_independent_of, rename_variable,
)
from nilkit.algebra.gsystem import GSystem
from nilkit.algebra.groups import (
    first_row, heisenberg, unitriangular, GroupSpec, make_group_spec,
)

__all__ = [
    'MultiPoly', 'parse_multipoly', 'poly_arith', 'poly_shift',
    'poly_substitute', 'rename_variable',
    'NilSeq', 'parse_nilseq', 'level_varlist', 'coordinate_var', 'mat_mul',
    'mat_inv', 'mat_eval', 'is_independent_of', 'GSystem', 'first_row',
    'heisenberg', 'unitriangular', 'GroupSpec', 'make_group_spec',
]
