from nilkit.reduction.calculus import (
    alpha_shift, difference, bracket, difference_via_alpha,
)
from nilkit.reduction.system_ops import (
    reduce, reduce_at, reorder, dedupe, is_trivial, canonicalize,
)
from nilkit.reduction.complexity import (
    complexity, ComplexitySearch, ComplexityResult, ReductionTrace,
    TraceStep, EXCEEDED,
)

__all__ = [
    'alpha_shift', 'difference', 'bracket', 'difference_via_alpha',
    'reduce', 'reduce_at', 'reorder', 'dedupe', 'is_trivial', 'canonicalize',
    'complexity', 'ComplexitySearch', 'ComplexityResult', 'ReductionTrace',
    'TraceStep', 'EXCEEDED',
]
