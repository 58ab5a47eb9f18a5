import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilkit.algebra.groups import first_row
from nilkit.algebra.gsystem import GSystem
from nilkit.core.exceptions import StructureError
from nilkit.dynamics.averages import lambda_average
from nilkit.dynamics.observables import Observable
from nilkit.dynamics.oracle import (
    EQUIDISTRIBUTION, EXACT, GEOMETRIC, character_oracle,
)
from nilkit.dynamics.torus import TorusSystem

ROTATION = [0.41421356237309515]
N_2N = GSystem([first_row('n'), first_row('2*n')])


def characters(*frequencies):
    return [Observable.character(a) for a in frequencies]


def sampled_points(torus, seed=0, samples=128):
    return torus.sample_points(np.random.default_rng(seed), samples)


class TestCharacterOracle(object):
    def test_resonant(self):
        fs = characters([2], [-1])
        oracle = character_oracle(fs, N_2N, ROTATION)
        assert oracle.resonant
        assert oracle.rate_kind == EXACT
        assert oracle.frequency_sum == (1,)
        assert oracle.rate(10) == 0.0
        torus = TorusSystem(ROTATION)
        points = sampled_points(torus)
        for N in (1, 5, 40):
            u = lambda_average(torus, N_2N, fs, N, points=points)
            assert np.allclose(u, oracle.limit(points))

    def test_constant_phase(self):
        gsys = GSystem([first_row('n + 1'), first_row('n')])
        fs = characters([1], [-1])
        oracle = character_oracle(fs, gsys, ROTATION)
        assert oracle.rate_kind == EXACT
        assert oracle.frequency_sum == (0,)
        assert oracle.constant_phase == pytest.approx(ROTATION[0])
        torus = TorusSystem(ROTATION)
        points = sampled_points(torus)
        u = lambda_average(torus, gsys, fs, 7, points=points)
        assert np.allclose(u, oracle.limit(points))

    def test_zero_frequencies(self):
        oracle = character_oracle([[0], [0]], N_2N, ROTATION)
        assert oracle.resonant
        assert np.allclose(oracle.limit(np.zeros((3, 1))), 1.0)

    @given(N=st.integers(1, 60), seed=st.integers(0, 2 ** 16))
    @settings(max_examples=20, deadline=None)
    def test_geometric_rate_bounds_the_average(self, N, seed):
        fs = characters([1], [1])
        oracle = character_oracle(fs, N_2N, ROTATION)
        assert oracle.rate_kind == GEOMETRIC
        assert not oracle.resonant
        torus = TorusSystem(ROTATION)
        points = sampled_points(torus, seed=seed, samples=16)
        u = lambda_average(torus, N_2N, fs, N, points=points)
        assert np.max(np.abs(u - oracle.limit(points))) <= oracle.rate(N) + 1e-9

    def test_rational_rotation_is_degenerate(self):
        gsys = GSystem([first_row('2*n')])
        oracle = character_oracle(characters([1]), gsys, [0.5])
        assert oracle.rate_kind == EXACT
        assert oracle.resonant

    def test_quadratic_phase_equidistributes(self):
        gsys = GSystem([first_row('n^2')])
        oracle = character_oracle(characters([1]), gsys, ROTATION)
        assert oracle.rate_kind == EQUIDISTRIBUTION
        assert oracle.rate(100) is None
        assert np.allclose(oracle.limit(np.zeros((2, 1))), 0.0)
        assert oracle.phase_coefficients[2] == (1,)

    def test_bad_arguments(self):
        with pytest.raises(StructureError):
            character_oracle([Observable.indicator([0])],
                             GSystem([first_row('n')]), ROTATION)
        with pytest.raises(StructureError):
            character_oracle(characters([1]), N_2N, ROTATION)
        with pytest.raises(StructureError):
            character_oracle(characters([1, 0], [0, 1]), N_2N, ROTATION)
