from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilkit.algebra import groups
from nilkit.algebra.gsystem import GSystem
from nilkit.core.exceptions import ConfigError, StructureError
from nilkit.dynamics.averages import (
    VALUE_CACHE_SIZE, cesaro_observable, inner, l2_norm_squared, lambda_average,
    norm_estimate, sequence_value, sup_norm,
)
from nilkit.dynamics.finite import CyclicProductSystem, UnitriangularSystem
from nilkit.dynamics.observables import Observable, random_tabulated
from nilkit.dynamics.report import CSV_COLUMNS, convergence_report
from nilkit.dynamics.systems import make_system
from nilkit.dynamics.torus import TorusSystem
from nilkit.launchers import conf
from nilkit.launchers.batteries import actions_battery

first_row = groups.first_row
ROTATION = [0.41421356237309515]

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


class TestFiniteSystems(object):
    @pytest.mark.parametrize('sys', [
        CyclicProductSystem([5]),
        CyclicProductSystem([2, 3]),
        UnitriangularSystem(3, 3),
        UnitriangularSystem(4, 2),
    ])
    @given(seed=seeds)
    @settings(max_examples=20)
    def test_action_laws(self, sys, seed):
        rng = np.random.default_rng(seed)
        a, b = sys.random_element(rng), sys.random_element(rng)
        assert sys.check_measure_preserving([a, b])
        assert sys.check_homomorphism([(a, b), (b, a)])

    def test_actions_battery_draws_a_thousand_pairs(self):
        result = actions_battery(np.random.default_rng(0))
        assert conf.ACTION_TRIALS == 1000
        assert result.trials == 2 * conf.ACTION_TRIALS
        assert result.passed
        assert actions_battery(np.random.default_rng(0), scale=0.01).trials == 20

    def test_cyclic_translation(self):
        sys = CyclicProductSystem([5])
        perm = sys.transformation(((1, 2), (0, 1)))
        assert [sys.states[i] for i in perm] == [(2,), (3,), (4,), (0,), (1,)]
        assert np.array_equal(sys.inverse_transformation(((1, 2), (0, 1)))[perm],
                              np.arange(5))

    def test_heisenberg_is_nonabelian(self):
        sys = UnitriangularSystem(3, 3)
        a = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
        b = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
        assert not np.array_equal(sys.transformation(a)[sys.transformation(b)],
                                  sys.transformation(b)[sys.transformation(a)])

    def test_wrong_dimension(self):
        sys = CyclicProductSystem([5])
        with pytest.raises(StructureError):
            sys.transformation(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        with pytest.raises(StructureError):
            lambda_average(sys, GSystem([groups.heisenberg('n', 0, 0)]),
                           [Observable.indicator([0])], 3)

    def test_make_system(self):
        assert make_system({'kind': 'finite_heisenberg', 'modulus': 3}).size == 27
        heis = make_system({'kind': 'finite_heisenberg', 'modulus': 3})
        assert heis.kind == 'finite_heisenberg'
        assert heis.to_json_dict() == {'kind': 'finite_heisenberg', 'modulus': 3}
        assert make_system(heis.to_json_dict()).kind == heis.kind
        ut = make_system({'kind': 'finite_unitriangular', 'dim': 3,
                          'modulus': 3})
        assert ut.kind == 'finite_unitriangular'
        assert list(ut.states) == list(heis.states)
        with pytest.raises(ConfigError):
            make_system({'kind': 'finite_cyclic', 'moduli': [1]})
        with pytest.raises(ConfigError):
            make_system({'kind': 'torus'})


class TestObservables(object):
    def test_bounded_flag(self):
        with pytest.raises(StructureError):
            Observable.tabulated({(0,): 2})
        f = Observable.tabulated({(0,): 2}, bounded=False)
        g, scale = f.normalized()
        assert scale == 2
        assert g.sup_norm() == 1

    def test_json_round_trip(self):
        f = Observable.tabulated({(0,): Fraction(1, 3), (2,): -1})
        assert Observable.from_json_dict(f.to_json_dict()) == f

    def test_characters_stay_on_the_torus(self):
        sys = CyclicProductSystem([5])
        with pytest.raises(StructureError):
            sys.tabulate(Observable.character([1]))


class TestAverages(object):
    def test_cyclic_single_average(self):
        sys = CyclicProductSystem([5])
        gsys = GSystem([first_row('n')])
        f = Observable.indicator([0])
        for N in (5, 10, 25):
            assert all(v == Fraction(1, 5)
                       for v in lambda_average(sys, gsys, [f], N))
        values = lambda_average(sys, gsys, [f], 3)
        assert sorted(values) == [0, 0, Fraction(1, 3), Fraction(1, 3),
                                  Fraction(1, 3)]

    @given(seed=seeds, N=st.integers(1, 12))
    @settings(max_examples=25, deadline=None)
    def test_contraction(self, seed, N):
        rng = np.random.default_rng(seed)
        sys = UnitriangularSystem(3, 2)
        gsys = GSystem([groups.heisenberg('n', 0, 0),
                        groups.heisenberg(0, 'n', 'n')])
        f1 = random_tabulated(rng, sys.states)
        f2 = random_tabulated(rng, sys.states)
        u = lambda_average(sys, gsys, [f1, f2], N)
        assert l2_norm_squared(sys, u) <= l2_norm_squared(sys, sys.tabulate(f2))
        assert sup_norm(sys, u) <= 1

    @given(seed=seeds, a=st.integers(-3, 3), b=st.integers(-3, 3))
    @settings(max_examples=25, deadline=None)
    def test_multilinearity(self, seed, a, b):
        rng = np.random.default_rng(seed)
        sys = CyclicProductSystem([6])
        gsys = GSystem([first_row('n'), first_row('n^2')])
        f, g, h = (random_tabulated(rng, sys.states) for _ in range(3))
        combined = Observable.from_table(
            sys.states, a * sys.tabulate(g) + b * sys.tabulate(h),
            bounded=False)
        lhs = lambda_average(sys, gsys, [f, combined], 7)
        rhs = (a * lambda_average(sys, gsys, [f, g], 7)
               + b * lambda_average(sys, gsys, [f, h], 7))
        assert all(lhs == rhs)

    def test_exact_inner_product(self):
        sys = CyclicProductSystem([4])
        u = np.array([Fraction(1), 0, 0, Fraction(1, 2)], dtype=object)
        assert inner(sys, u, u) == Fraction(5, 16)
        estimate = norm_estimate(sys, u)
        assert estimate.exact == Fraction(5, 16)
        assert estimate.stderr == 0.0

    def test_cesaro_observable(self):
        sys = CyclicProductSystem([5])
        gsys = GSystem([first_row('n'), first_row('2*n')])
        head = [Observable.indicator([0])]
        last = Observable.indicator([1, 2])
        A = cesaro_observable(sys, gsys, head, last, 4)
        assert list(sys.tabulate(A)) == list(
            lambda_average(sys, gsys, head + [last], 4))

    def test_value_cache_is_bounded(self):
        p = first_row('n^2')
        for n in range(VALUE_CACHE_SIZE + 50):
            assert sequence_value(p, n) == ((1, n * n), (0, 1))
        info = sequence_value.cache_info()
        assert info.maxsize == VALUE_CACHE_SIZE
        assert info.currsize <= VALUE_CACHE_SIZE

    def test_torus_resonant_average(self):
        torus = TorusSystem(ROTATION)
        rng = np.random.default_rng(0)
        points = torus.sample_points(rng, 256)
        gsys = GSystem([first_row('n'), first_row('2*n')])
        fs = [Observable.character([2]), Observable.character([-1])]
        expected = np.exp(2j * np.pi * points[:, 0])
        for N in (1, 7, 30):
            u = lambda_average(torus, gsys, fs, N, points=points)
            assert np.allclose(u, expected)

    def test_bad_arguments(self):
        sys = CyclicProductSystem([5])
        gsys = GSystem([first_row('n')])
        with pytest.raises(StructureError):
            lambda_average(sys, gsys, [Observable.indicator([0])], 0)
        with pytest.raises(StructureError):
            lambda_average(sys, gsys, [], 3)


class TestReport(object):
    def setup_method(self, method):
        self.sys = CyclicProductSystem([5])
        self.gsys = GSystem([first_row('n')])
        self.fs = [Observable.indicator([0])]

    def test_rows(self):
        report = convergence_report(self.sys, self.gsys, self.fs,
                                    [5, 10], 2.0, 0.5)
        rows = report.rows()
        assert [row['N'] for row in rows] == [5, 10]
        assert list(rows[0]) == CSV_COLUMNS
        assert report.estimator == 'exact'
        assert all(row['stderr'] == 0.0 for row in rows)
        # Lambda_N = 1/5 at N = 5, 10
        assert rows[0]['l2_norm'] == pytest.approx(0.2)

    def test_constant_system_has_no_deviation(self):
        constant = GSystem([first_row(3), first_row(-1)])
        fs = [Observable.indicator([0]), Observable.indicator([1, 2])]
        report = convergence_report(self.sys, constant, fs, [1, 2, 5, 7],
                                    2.0, 0.5)
        assert report.window_sup_dev_sq == [Fraction(0)] * 4
        assert report.window_sup_dev == [0.0] * 4
        assert all(report.stable)

    def test_cyclic_deviation_decays_like_one_over_N(self):
        grid = list(range(1, 11)) + [13, 20, 40]
        report = convergence_report(self.sys, self.gsys, self.fs, grid,
                                    2.0, 0.5)
        for N, dev_sq in zip(grid, report.window_sup_dev_sq):
            assert dev_sq <= Fraction(4, N * N)
        assert report.window_sup_dev_sq[grid.index(5)] == Fraction(6, 1225)

    def test_empty_grid(self):
        report = convergence_report(self.sys, self.gsys, self.fs, [], 2.0, 0.5)
        assert report.rows() == []

    def test_single_grid_point(self):
        report = convergence_report(self.sys, self.gsys, self.fs, [3], 2.0, 0.5)
        assert len(report.rows()) == 1

    def test_sampled_finite(self):
        rng = np.random.default_rng(1)
        report = convergence_report(self.sys, self.gsys, self.fs, [5], 2.0,
                                    0.5, exact=False, rng=rng, samples=64)
        assert report.estimator == 'monte_carlo'

    def test_exact_mode_needs_a_finite_system(self):
        torus = TorusSystem(ROTATION)
        fs = [Observable.character([1])]
        with pytest.raises(ConfigError):
            convergence_report(torus, self.gsys, fs, [5], 2.0, 0.5, exact=True)

    @pytest.mark.parametrize('grid,L', [([5, 5], 2.0), ([0], 2.0), ([5], 1.0)])
    def test_bad_grids(self, grid, L):
        with pytest.raises(ConfigError):
            convergence_report(self.sys, self.gsys, self.fs, grid, L, 0.5)
