"""
Exact invariance checks for empirical couplings.

Each check compares finite-dimensional marginals on a set of coordinates C
inside the closed core of the acting element (C and its S^h sources lie in
W). A check refuses with WindowClosureError when that is impossible; a
refusal says nothing about the identity being checked.
"""
from fractions import Fraction

import numpy as np

from nilkit.core.exceptions import WindowClosureError
from nilkit.couplings.coupling import empirical_coupling
from nilkit.couplings.semidirect import SemidirectElement, as_element, constant


def _resolve_coords(window, h, coords, what):
    core = window.core(h)
    if coords is None:
        coords = core
    else:
        coords = [as_element(c, window.dim) for c in coords]
        outside = [c for c in coords if c not in core]
        if outside:
            raise WindowClosureError(
                "{}: coordinates {} are not in the closed core".format(
                    what, [c.serialize() for c in outside]))
    if not coords:
        raise WindowClosureError(
            "{}: the window has no coordinates closed under this action".format(
                what))
    return list(coords)


def _pushforward(coupling, h, coords, move_x=None):
    window = coupling.window
    sources = window.positions([h.source(c) for c in coords])
    out = {}
    for (x, block), w in coupling.atoms.items():
        if move_x is not None:
            x = int(move_x[x])
        key = (x, tuple(block[j] for j in sources))
        out[key] = out.get(key, Fraction(0)) + w
    return out


def l1_distance(a, b):
    keys = set(a) | set(b)
    return sum((abs(a.get(key, 0) - b.get(key, 0)) for key in keys),
               Fraction(0))


def check_diag_invariance(coupling, g, coords=None):
    """(T^g x S^iota(g))_* lambda = lambda on X x K^C."""
    g_element = constant(g)
    h = SemidirectElement.translation(g_element)
    coords = _resolve_coords(coupling.window, h, coords,
                             "diagonal invariance")
    move_x = coupling.sys.transformation(g_element.evaluate({'m1': 0}))
    pushed = _pushforward(coupling, h, coords, move_x=move_x)
    return pushed == coupling.project(coords)


def check_alpha_invariance(coupling, coords=None):
    """
    ||(id x S^alpha)_* lambda - lambda||_TV on X x K^C, exact. The total
    variation norm of a signed measure is the l1 norm of its atoms.
    """
    h = SemidirectElement.alpha(coupling.window.dim)
    coords = _resolve_coords(coupling.window, h, coords, "alpha invariance")
    pushed = _pushforward(coupling, h, coords)
    return l1_distance(pushed, coupling.project(coords))


def alpha_invariance_bound(N):
    return Fraction(2, N)


def check_marginal_S_invariance(coupling, r, coords=None):
    """S^r_* nu = nu for the Y-marginal nu, r in W."""
    r = as_element(r, coupling.window.dim)
    h = SemidirectElement.translation(r)
    coords = _resolve_coords(coupling.window, h, coords,
                             "marginal S invariance")
    pushed = {}
    for (_, block), w in _pushforward(coupling, h, coords).items():
        pushed[block] = pushed.get(block, Fraction(0)) + w
    return pushed == coupling.y_marginal(coords)


def boundary_distance(coupling, coords=None):
    """
    ||m_{N+1} - m_1||_TV / N on X x K^C, where m_n is the single-n coupling:
    the boundary-term count that check_alpha_invariance must equal.
    """
    h = SemidirectElement.alpha(coupling.window.dim)
    coords = _resolve_coords(coupling.window, h, coords, "alpha invariance")
    sys, fs, last = coupling.sys, coupling.observables[:-1], coupling.last
    first = empirical_coupling(sys, fs, last, coupling.window, 1,
                               n_start=coupling.n_start, mu=coupling.mu)
    after = empirical_coupling(sys, fs, last, coupling.window, 1,
                               n_start=coupling.n_start + coupling.N,
                               mu=coupling.mu)
    return l1_distance(after.project(coords), first.project(coords)) / coupling.N


def skewed_measure(sys, rng=None):
    """A non-invariant probability vector for negative controls."""
    size = sys.size
    if rng is None:
        raw = np.arange(1, size + 1)
    else:
        raw = rng.integers(1, 10, size=size)
    total = int(np.sum(raw))
    return [Fraction(int(v), total) for v in raw]
