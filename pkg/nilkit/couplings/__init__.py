from nilkit.couplings.semidirect import SemidirectElement, apply_S, as_element
from nilkit.couplings.window import (
    IndexWindow, build_window, required_elements, translation_closure_elements,
)
from nilkit.couplings.coupling import (
    EmpiricalCoupling, empirical_coupling, joint_period, periodized_N,
)
from nilkit.couplings.invariance import (
    check_diag_invariance, check_alpha_invariance,
    check_marginal_S_invariance, alpha_invariance_bound, boundary_distance,
)
from nilkit.couplings.basic import (
    pairing, basic_function, canon_rearrange_check, rearrange_indices,
    cond_exp_identity_check,
)

__all__ = [
    'SemidirectElement', 'apply_S', 'as_element', 'IndexWindow',
    'build_window', 'required_elements', 'translation_closure_elements',
    'EmpiricalCoupling', 'empirical_coupling', 'joint_period',
    'periodized_N', 'check_diag_invariance', 'check_alpha_invariance',
    'check_marginal_S_invariance', 'alpha_invariance_bound',
    'boundary_distance', 'pairing', 'basic_function',
    'canon_rearrange_check', 'rearrange_indices', 'cond_exp_identity_check',
]
