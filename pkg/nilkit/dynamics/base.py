import abc

import numpy as np

from nilkit.algebra.nilseq import NilSeq
from nilkit.core.exceptions import StructureError

FINITE_CYCLIC = 'finite_cyclic'
FINITE_UNITRIANGULAR = 'finite_unitriangular'
FINITE_HEISENBERG = 'finite_heisenberg'
TORUS = 'torus'
SYSTEM_KINDS = (FINITE_CYCLIC, FINITE_UNITRIANGULAR, FINITE_HEISENBERG, TORUS)


class DynSystem(object, metaclass=abc.ABCMeta):
    """
    A measure-preserving action of integer unitriangular matrices.

    Functions on X are numpy arrays over an array of points: every state in
    order for exact systems, sampled points otherwise.
    """
    kind = None
    exact = True

    @property
    @abc.abstractmethod
    def group_dim(self):
        """Dimension of the unitriangular matrices that act."""
        pass

    @abc.abstractmethod
    def points(self, rng=None, samples=None):
        pass

    @abc.abstractmethod
    def sample_points(self, rng, samples):
        """Monte Carlo points drawn from the invariant measure."""
        pass

    @abc.abstractmethod
    def translate(self, points, matrix):
        """T^matrix applied to every point."""
        pass

    @abc.abstractmethod
    def inverse_translate(self, points, matrix):
        pass

    @abc.abstractmethod
    def values(self, observable, points):
        pass

    @abc.abstractmethod
    def random_element(self, rng):
        pass

    @abc.abstractmethod
    def check_homomorphism(self, pairs, rng=None):
        pass

    @abc.abstractmethod
    def check_measure_preserving(self, elements):
        pass

    @abc.abstractmethod
    def get_diagnostics(self):
        pass

    def check_sequence(self, p):
        """A level-0 NilSeq whose values act on this system."""
        if not isinstance(p, NilSeq) or p.level != 0:
            raise StructureError(
                "Averages take level 0 sequences, got {!r}".format(p))
        if p.dim != self.group_dim:
            raise StructureError(
                "{} acts by {}x{} matrices, got dimension {}".format(
                    self.kind, self.group_dim, self.group_dim, p.dim))

    def act(self, matrix):
        """The transformation T^matrix as a function on point arrays."""
        return lambda points: self.translate(points, matrix)


def as_int_matrix(matrix):
    if isinstance(matrix, NilSeq):
        matrix = matrix.evaluate({})
    return tuple(tuple(int(v) for v in row) for row in matrix)


def random_unitriangular(rng, dim, bound):
    rows = []
    for i in range(dim):
        rows.append(tuple(
            1 if i == j else
            (int(rng.integers(-bound, bound + 1)) if j > i else 0)
            for j in range(dim)))
    return tuple(rows)


def allclose_mod_one(a, b, atol=1e-9):
    diff = np.abs(np.asarray(a) - np.asarray(b)) % 1.0
    return bool(np.all(np.minimum(diff, 1.0 - diff) < atol))
