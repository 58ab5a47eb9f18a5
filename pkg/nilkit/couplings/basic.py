"""
Basic functions and the re-arrangement identities behind them.

For a level-0 system (p_1, ..., p_k) write

    g~(y) = prod_{i<k} phi^i_{p_k p_i^-1}(y) * phi^k_{p_k}(y)

where phi^i_c(y) is the i-th component of the coordinate y_c. The basic
function of a coupling lambda is g = E_lambda(g~ | X).
"""
from collections import namedtuple
from fractions import Fraction

import numpy as np

from nilkit.algebra.nilseq import SEQUENCE_VAR
from nilkit.core.exceptions import StructureError, WindowClosureError
from nilkit.couplings.coupling import joint_period
from nilkit.couplings.semidirect import (
    SemidirectElement, as_element, constant,
)
from nilkit.couplings.window import (
    rearranged_elements, required_elements, translated_elements,
)
from nilkit.dynamics.averages import (
    inner, lambda_average, sequence_value,
)
from nilkit.dynamics.observables import Observable
from nilkit.reduction.calculus import evaluate_bracket

PairingResult = namedtuple('PairingResult', ['integral', 'direct', 'agree'])
IdentityCheckResult = namedtuple('IdentityCheckResult', [
    'cond_exp_discrepancy', 'rearranged_discrepancy', 'budget',
    'exact_alpha', 'within_budget',
])


def _check_coupling_system(coupling, gsys):
    if len(gsys) != coupling.k:
        raise StructureError(
            "Coupling carries {} observables for a system of {}".format(
                coupling.k, len(gsys)))
    if gsys.level != 0:
        raise StructureError("Basic functions are built from level 0 systems")
    if coupling.n_start != 1:
        raise StructureError("Expected a coupling over n = 1..N")


def _g_tilde_positions(coupling, gsys):
    try:
        return coupling.window.positions(required_elements(gsys))
    except WindowClosureError as e:
        raise WindowClosureError(
            "The window lacks a coordinate of g~: {}".format(e))


def _product(block, positions):
    """prod_i block[positions[i]][i]: component i read at coordinate i."""
    value = Fraction(1)
    for i, j in enumerate(positions):
        value *= block[j][i]
    return value


def pairing(coupling, f_k, gsys):
    """
    int f_k g~ dlambda_N against <Lambda_N(f_1, ..., f_k), last>, where last
    is the coupling's final observable (A_N = Lambda_N(f_1..f_{k-1}, f'')
    in the correlation argument).
    """
    _check_coupling_system(coupling, gsys)
    positions = _g_tilde_positions(coupling, gsys)
    sys = coupling.sys
    f_table = sys.tabulate(f_k)
    integral = Fraction(0)
    for (x, block), w in coupling.atoms.items():
        integral += w * f_table[x] * _product(block, positions)
    fs = coupling.observables[:-1] + [f_k]
    average = lambda_average(sys, gsys, fs, coupling.N)
    direct = inner(sys, average, sys.tabulate(coupling.last))
    return PairingResult(integral, direct, integral == direct)


def basic_function(coupling, gsys):
    """g(x) = sum over atoms at x of w g~(y), divided by mu(x)."""
    _check_coupling_system(coupling, gsys)
    positions = _g_tilde_positions(coupling, gsys)
    sums = [Fraction(0)] * coupling.sys.size
    for (x, block), w in coupling.atoms.items():
        sums[x] += w * _product(block, positions)
    marginal = coupling.x_marginal()
    values = [s / m if m else Fraction(0) for s, m in zip(sums, marginal)]
    return np.array(values, dtype=object)


def rearrange_indices(r, p, n):
    """
    The two coordinates read by phi_{rp^-1} o S^iota(r(n)) o S^alpha^n and
    by phi_e o S^<r|p>(n), computed through independent code paths.
    """
    if r.level != 0 or p.level != 0:
        raise StructureError("Rearrangement takes level 0 sequences")
    h = (SemidirectElement.translation(constant(r.evaluate({SEQUENCE_VAR: n})))
         * SemidirectElement.alpha(r.dim, n))
    left = h.source(as_element(r * p.inverse()))
    right = evaluate_bracket(r, p, n).inverse()
    return left, right


def canon_rearrange_check(r, p, n, block, window):
    """Evaluate both sides on a coordinate block over `window`; True iff equal."""
    left, right = rearrange_indices(r, p, n)
    for c in (left, right):
        if c not in window:
            raise WindowClosureError(
                "Coordinate {} is missing from the window".format(c.serialize()))
    return (left == right
            and block[window.position(left)] == block[window.position(right)])


def _budget(coupling, n_max):
    sup = Fraction(1)
    for f in coupling.observables[:-1]:
        sup *= f.sup_norm()
    return 2 * n_max * sup / coupling.N


def cond_exp_identity_check(coupling, fs, gsys, n_max, exact_alpha=None):
    """
    The chain, averaged over n = 1..n_max and compared pointwise in x:

      (A) Lambda(f_1..f_{k-1}, g)(x),   g the basic function
      (B) E(Lambda~(f~_1..f~_{k-1}, g~) | X)(x)
      (C) E((1/n_max) sum_n prod f_i(T^{p_i(n)} x)
              prod_i phi^i_e(S^{<p_k|p_i>(n)} y) phi^k_e(S^{<p_k|e>(n)} y) | X)(x)

    (A) = (B) follows from diagonal invariance; (B) = (C) needs
    alpha-invariance and holds within 2 n_max prod||f_i|| / N otherwise.
    """
    _check_coupling_system(coupling, gsys)
    fs = list(fs)
    if len(fs) != len(gsys) - 1:
        raise StructureError(
            "Expected {} observables, got {}".format(len(gsys) - 1, len(fs)))
    sys = coupling.sys
    window = coupling.window
    points = sys.points()

    g = Observable.from_table(sys.states, basic_function(coupling, gsys),
                              bounded=False)
    side_a = lambda_average(sys, gsys, fs + [g], n_max)

    side_b = [Fraction(0)] * sys.size
    side_c = [Fraction(0)] * sys.size
    for n in range(1, n_max + 1):
        front = np.array([Fraction(1)] * sys.size, dtype=object)
        for p, f in zip(gsys.entries[:-1], fs):
            front = front * sys.values(
                f, sys.translate(points, sequence_value(p, n)))
        b_positions = window.positions(translated_elements(gsys, n))
        c_positions = window.positions(rearranged_elements(gsys, n))
        for (x, block), w in coupling.atoms.items():
            side_b[x] += w * front[x] * _product(block, b_positions)
            side_c[x] += w * front[x] * _product(block, c_positions)
    marginal = coupling.x_marginal()
    scale = [n_max * m for m in marginal]
    side_b = [v / s if s else Fraction(0) for v, s in zip(side_b, scale)]
    side_c = [v / s if s else Fraction(0) for v, s in zip(side_c, scale)]

    first = max(abs(a - b) for a, b in zip(side_a, side_b))
    second = max(abs(b - c) for b, c in zip(side_b, side_c))
    budget = _budget(coupling, n_max)
    if exact_alpha is None:
        exact_alpha = coupling.N % joint_period(sys, window) == 0
    within = second == 0 if exact_alpha else second <= budget
    return IdentityCheckResult(first, second, budget, exact_alpha, within)


__all__ = [
    'pairing', 'basic_function', 'rearrange_indices',
    'canon_rearrange_check', 'cond_exp_identity_check', 'PairingResult',
    'IdentityCheckResult',
]
