from collections import OrderedDict

import numpy as np

from nilkit.algebra.groups import is_first_row
from nilkit.core.exceptions import ConfigError, StructureError
from nilkit.dynamics.base import (
    DynSystem, TORUS, allclose_mod_one, as_int_matrix,
)
from nilkit.algebra.nilseq import int_matmul


class TorusSystem(DynSystem):
    """
    Rotation of T^s: the first-row matrix with entries v acts by
    x_i -> x_i + v_i * rotation_i (mod 1). Lebesgue measure; sampled.
    """
    kind = TORUS
    exact = False

    def __init__(self, rotation):
        rotation = np.asarray(rotation, dtype=np.float64).reshape(-1)
        if rotation.size == 0:
            raise ConfigError("Rotation vector is empty")
        self.rotation = rotation

    @property
    def group_dim(self):
        return self.rotation.size + 1

    def shift(self, matrix):
        matrix = as_int_matrix(matrix)
        if len(matrix) != self.group_dim or not is_first_row(matrix):
            raise StructureError(
                "Torus rotations are acted on by {0}x{0} first-row "
                "matrices".format(self.group_dim))
        return np.asarray(matrix[0][1:], dtype=np.float64) * self.rotation

    def points(self, rng=None, samples=None):
        if rng is None or samples is None:
            raise StructureError("Sampling the torus needs an rng and a count")
        return rng.random((int(samples), self.rotation.size))

    def sample_points(self, rng, samples):
        return self.points(rng=rng, samples=samples)

    def translate(self, points, matrix):
        return (points + self.shift(matrix)) % 1.0

    def inverse_translate(self, points, matrix):
        return (points - self.shift(matrix)) % 1.0

    def values(self, observable, points):
        return observable.character_values(points)

    def random_element(self, rng):
        d = self.group_dim
        rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        for j in range(1, d):
            rows[0][j] = int(rng.integers(-10, 11))
        return tuple(tuple(row) for row in rows)

    def check_homomorphism(self, pairs, rng=None):
        if rng is None:
            rng = np.random.default_rng(0)
        x = self.points(rng, 16)
        for a, b in pairs:
            left = self.translate(x, int_matmul(as_int_matrix(a),
                                                as_int_matrix(b)))
            right = self.translate(self.translate(x, b), a)
            if not allclose_mod_one(left, right):
                return False
        return True

    def check_measure_preserving(self, elements):
        """Rotations preserve Lebesgue measure; only the action itself is validated."""
        for matrix in elements:
            self.shift(matrix)
        return True

    def get_diagnostics(self):
        return OrderedDict([
            ('kind', self.kind),
            ('rotation', [float(a) for a in self.rotation]),
        ])
