"""
Finite models: translations of a finite group with uniform measure.

Transformations are stored as index permutations: perm[i] is the index of
T^A applied to state i, so (f o T^A)[i] = f[perm[i]].
"""
import itertools
from collections import OrderedDict
from fractions import Fraction

import numpy as np

from nilkit.algebra.groups import is_first_row
from nilkit.algebra.nilseq import int_matmul
from nilkit.core.exceptions import ConfigError, StructureError
from nilkit.dynamics.base import (
    DynSystem, FINITE_CYCLIC, FINITE_HEISENBERG, FINITE_UNITRIANGULAR,
    as_int_matrix, random_unitriangular,
)


class FiniteSystem(DynSystem):
    exact = True

    def __init__(self, states):
        self.states = list(states)
        self.index = {s: i for i, s in enumerate(self.states)}
        self._perms = {}
        self._tables = {}

    @property
    def size(self):
        return len(self.states)

    @property
    def measure(self):
        """Mass of every state under the uniform invariant measure."""
        return Fraction(1, self.size)

    def weights(self):
        return np.array([self.measure] * self.size, dtype=object)

    def points(self, rng=None, samples=None):
        return np.arange(self.size)

    def sample_points(self, rng, samples):
        """State indices drawn uniformly with replacement."""
        return rng.integers(0, self.size, size=int(samples))

    def _image(self, matrix, state):
        raise NotImplementedError

    def transformation(self, matrix):
        key = as_int_matrix(matrix)
        if key not in self._perms:
            if len(key) != self.group_dim:
                raise StructureError(
                    "{} acts by {}x{} matrices".format(
                        self.kind, self.group_dim, self.group_dim))
            perm = np.array(
                [self.index[self._image(key, s)] for s in self.states],
                dtype=np.int64)
            self._perms[key] = perm
        return self._perms[key]

    def inverse_transformation(self, matrix):
        return np.argsort(self.transformation(matrix))

    def translate(self, points, matrix):
        return self.transformation(matrix)[points]

    def inverse_translate(self, points, matrix):
        return self.inverse_transformation(matrix)[points]

    def tabulate(self, observable):
        if observable not in self._tables:
            if not observable.is_rational:
                raise StructureError(
                    "Finite systems take rational observables, got {}".format(
                        observable.kind))
            self._tables[observable] = np.array(
                [observable.value_at(s) for s in self.states], dtype=object)
        return self._tables[observable]

    def values(self, observable, points):
        return self.tabulate(observable)[points]

    def check_homomorphism(self, pairs, rng=None):
        for a, b in pairs:
            a, b = as_int_matrix(a), as_int_matrix(b)
            product = self.transformation(int_matmul(a, b))
            composed = self.transformation(a)[self.transformation(b)]
            if not np.array_equal(product, composed):
                return False
        return True

    def check_measure_preserving(self, elements):
        """Uniform measure is preserved iff every T^A is a bijection of the states."""
        for matrix in elements:
            perm = self.transformation(matrix)
            if len(np.unique(perm)) != self.size:
                return False
        return True

    def get_diagnostics(self):
        return OrderedDict([
            ('kind', self.kind),
            ('states', self.size),
        ])


class CyclicProductSystem(FiniteSystem):
    """Z/q_1 x ... x Z/q_s, with first-row matrices acting by translation."""
    kind = FINITE_CYCLIC

    def __init__(self, moduli):
        moduli = tuple(int(q) for q in moduli)
        if not moduli:
            raise ConfigError("A cyclic product needs at least one modulus")
        if any(q < 2 for q in moduli):
            raise ConfigError("Moduli must be at least 2, got {}".format(moduli))
        self.moduli = moduli
        super().__init__(itertools.product(*[range(q) for q in moduli]))

    @property
    def group_dim(self):
        return len(self.moduli) + 1

    def _image(self, matrix, state):
        if not is_first_row(matrix):
            raise StructureError(
                "Cyclic products are acted on by first-row matrices only")
        shift = matrix[0][1:]
        return tuple((x + v) % q for x, v, q in zip(state, shift, self.moduli))

    def random_element(self, rng):
        rows = [[1 if i == j else 0 for j in range(self.group_dim)]
                for i in range(self.group_dim)]
        for j, q in enumerate(self.moduli):
            rows[0][j + 1] = int(rng.integers(-3 * q, 3 * q + 1))
        return tuple(tuple(row) for row in rows)

    def get_diagnostics(self):
        stats = super().get_diagnostics()
        stats['moduli'] = list(self.moduli)
        return stats

    @property
    def period_bound(self):
        return int(np.lcm.reduce(self.moduli))

    def to_json_dict(self):
        return {'kind': self.kind, 'moduli': list(self.moduli)}


def upper_positions(dim):
    return [(i, j) for i in range(dim) for j in range(i + 1, dim)]


class UnitriangularSystem(FiniteSystem):
    """
    UT(d, Z/q) under left translation. A state is the tuple of its entries
    above the diagonal in row-major order; for d = 3 that is (x12, x13, x23).
    """
    kind = FINITE_UNITRIANGULAR

    def __init__(self, dim, modulus):
        dim, modulus = int(dim), int(modulus)
        if modulus < 2:
            raise ConfigError("Modulus must be at least 2, got {}".format(modulus))
        if dim < 2:
            raise ConfigError("Dimension must be at least 2, got {}".format(dim))
        self.dim = dim
        self.modulus = modulus
        self._positions = upper_positions(dim)
        super().__init__(
            itertools.product(range(modulus), repeat=len(self._positions)))

    @property
    def group_dim(self):
        return self.dim

    def state_matrix(self, state):
        rows = [[1 if i == j else 0 for j in range(self.dim)]
                for i in range(self.dim)]
        for (i, j), value in zip(self._positions, state):
            rows[i][j] = value
        return tuple(tuple(row) for row in rows)

    def matrix_state(self, matrix):
        return tuple(matrix[i][j] % self.modulus for i, j in self._positions)

    def _image(self, matrix, state):
        product = int_matmul(matrix, self.state_matrix(state), self.modulus)
        return self.matrix_state(product)

    def random_element(self, rng):
        return random_unitriangular(rng, self.dim, 3 * self.modulus)

    def get_diagnostics(self):
        stats = super().get_diagnostics()
        stats['dim'] = self.dim
        stats['modulus'] = self.modulus
        return stats

    @property
    def period_bound(self):
        return self.modulus

    def to_json_dict(self):
        return {'kind': self.kind, 'dim': self.dim, 'modulus': self.modulus}


class HeisenbergSystem(UnitriangularSystem):
    """The Heisenberg group mod q, UT(3, Z/q), under its own kind."""
    kind = FINITE_HEISENBERG

    def __init__(self, modulus):
        super().__init__(3, modulus)

    def to_json_dict(self):
        return {'kind': self.kind, 'modulus': self.modulus}
