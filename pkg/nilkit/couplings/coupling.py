"""
Empirical couplings

    lambda_N = int_X (1/N) sum_{n} delta_{(x, (F(T^{q(n)^-1} x))_{q in W})} mu(dx)

with F = (f_1, ..., f_{k-1}, last), as exact finite-support measures on
X x K^W. Atoms are merged by key, so accumulation order does not matter.
"""
import json
import math
from collections import OrderedDict
from fractions import Fraction

import numpy as np

from nilkit.core.exceptions import StructureError
from nilkit.couplings.semidirect import element_value
from nilkit.couplings.window import IndexWindow
from nilkit.dynamics.observables import Observable
from nilkit.dynamics.systems import make_system


def _check_finite(sys):
    if not sys.exact:
        raise StructureError(
            "Empirical couplings are built on finite systems, got {}".format(
                sys.kind))


def _as_measure(sys, mu):
    if mu is None:
        return [sys.measure] * sys.size
    if isinstance(mu, dict):
        mu = [Fraction(mu.get(s, 0)) for s in sys.states]
    mu = [Fraction(w) for w in mu]
    if len(mu) != sys.size or sum(mu) != 1 or any(w < 0 for w in mu):
        raise StructureError("mu must be a probability vector on the states")
    return mu


def _fraction_pair(value):
    return [value.numerator, value.denominator]


class EmpiricalCoupling(object):
    """
    atoms: {(state index, block): weight}, block[j] the k-tuple of values at
    window element j.
    """

    def __init__(self, sys, window, observables, atoms, N=None, n_start=1,
                 mu=None):
        self.sys = sys
        self.window = window
        self.observables = list(observables)
        self.atoms = dict(atoms)
        self.N = N
        self.n_start = n_start
        self.mu = _as_measure(sys, mu)
        self._x_marginal = None

    @property
    def k(self):
        return len(self.observables)

    @property
    def last(self):
        return self.observables[-1]

    @classmethod
    def point_mass(cls, sys, window, observables, block, mu=None):
        """mu x delta_y for a fixed block y."""
        _check_finite(sys)
        block = tuple(tuple(Fraction(v) for v in values) for values in block)
        if len(block) != len(window):
            raise StructureError("Block does not match the window")
        weights = _as_measure(sys, mu)
        atoms = {(x, block): w for x, w in enumerate(weights) if w}
        return cls(sys, window, observables, atoms, mu=mu)

    def total_mass(self):
        return sum(self.atoms.values(), Fraction(0))

    def x_marginal(self):
        if self._x_marginal is None:
            marginal = [Fraction(0)] * self.sys.size
            for (x, _), w in self.atoms.items():
                marginal[x] += w
            self._x_marginal = marginal
        return self._x_marginal

    def y_marginal(self, coords=None):
        positions = self._positions(coords)
        out = {}
        for (_, block), w in self.atoms.items():
            key = tuple(block[j] for j in positions)
            out[key] = out.get(key, Fraction(0)) + w
        return out

    def project(self, coords=None):
        """The marginal on X x K^coords."""
        positions = self._positions(coords)
        out = {}
        for (x, block), w in self.atoms.items():
            key = (x, tuple(block[j] for j in positions))
            out[key] = out.get(key, Fraction(0)) + w
        return out

    def _positions(self, coords):
        if coords is None:
            return list(range(len(self.window)))
        return self.window.positions(coords)

    def atoms_at(self, x):
        return [(block, w) for (xx, block), w in self.atoms.items() if xx == x]

    def in_Q(self):
        """True iff the X-marginal is the system's invariant measure."""
        return self.x_marginal() == [self.sys.measure] * self.sys.size

    def get_diagnostics(self):
        stats = OrderedDict()
        stats['atoms'] = len(self.atoms)
        stats['window size'] = len(self.window)
        stats['N'] = self.N
        stats['in Q'] = self.in_Q()
        return stats

    """
    Serialization
    """

    def to_json_dict(self):
        atoms = []
        for (x, block), w in self.atoms.items():
            atoms.append([
                list(self.sys.states[x]),
                [[_fraction_pair(v) for v in values] for values in block],
                _fraction_pair(w),
            ])
        atoms.sort(key=lambda atom: json.dumps(atom))
        return {
            'system': self.sys.to_json_dict(),
            'window': self.window.serialize(),
            'observables': [f.to_json_dict() for f in self.observables],
            'N': self.N,
            'n_start': self.n_start,
            'mu': [_fraction_pair(w) for w in self.mu],
            'atoms': atoms,
        }

    def dumps(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data):
        sys = make_system(data['system'])
        window = IndexWindow.from_serialized(data['window'])
        observables = [Observable.from_json_dict(f)
                       for f in data['observables']]
        atoms = {}
        for state, block, weight in data['atoms']:
            x = sys.index[tuple(state)]
            block = tuple(tuple(Fraction(n, d) for n, d in values)
                          for values in block)
            atoms[(x, block)] = Fraction(*weight)
        mu = [Fraction(n, d) for n, d in data['mu']]
        return cls(sys, window, observables, atoms, N=data['N'],
                   n_start=data['n_start'], mu=mu)

    @classmethod
    def loads(cls, text):
        return cls.from_json_dict(json.loads(text))


def empirical_coupling(sys, fs, last, window, N, n_start=1, mu=None):
    """
    lambda_N over n = n_start, ..., n_start + N - 1. `mu` replaces the
    invariant measure (a deliberately skewed mu gives negative controls).
    """
    _check_finite(sys)
    if N < 1:
        raise StructureError("N must be positive, got {}".format(N))
    observables = list(fs) + [last]
    if not last.bounded:
        raise StructureError("The last observable must be bounded by 1")
    tables = [sys.tabulate(f) for f in observables]
    weights = _as_measure(sys, mu)
    points = sys.points()
    atoms = {}
    for n in range(n_start, n_start + N):
        columns = []
        for q in window:
            idx = sys.inverse_translate(points, element_value(q, n))
            columns.append([table[idx] for table in tables])
        for x in points:
            if not weights[x]:
                continue
            block = tuple(tuple(column[i][x] for i in range(len(tables)))
                          for column in columns)
            key = (int(x), block)
            atoms[key] = atoms.get(key, Fraction(0)) + weights[x] / N
    return EmpiricalCoupling(sys, window, observables, atoms, N=N,
                             n_start=n_start, mu=mu)


def joint_period(sys, window):
    """
    Least P such that n -> T^{q(n)^-1} is P-periodic for every q in W.
    Integer polynomials mod m are m-periodic, so P divides sys.period_bound.
    """
    _check_finite(sys)
    bound = sys.period_bound
    perms = {}
    for q in window:
        perms[q] = [sys.inverse_transformation(element_value(q, n))
                    for n in range(bound)]
    for P in range(1, bound + 1):
        if bound % P:
            continue
        if all(np.array_equal(perms[q][n], perms[q][(n + P) % bound])
               for q in window for n in range(bound)):
            return P
    return bound


def periodized_N(sys, window, at_least=1):
    """The smallest multiple of the joint period that is >= at_least."""
    period = joint_period(sys, window)
    return period * max(1, int(math.ceil(at_least / period)))
