"""
Property batteries run by the `verify` subcommand.

Every battery takes a numpy Generator and a scale factor on its trial count
and returns a BatteryResult. A failure is an identity that should hold as a
theorem; a refusal is a check that could not be evaluated on a finite window.
"""
import math
from collections import OrderedDict
from fractions import Fraction

import gtimer as gt
import numpy as np

from nilkit.algebra import groups
from nilkit.algebra.gsystem import GSystem
from nilkit.algebra.nilseq import NilSeq, SEQUENCE_VAR, coordinate_var, parse_nilseq
from nilkit.algebra.sampling import random_group_sequence, random_nilseq
from nilkit.core import logger
from nilkit.core.exceptions import WindowClosureError
from nilkit.couplings.basic import (
    canon_rearrange_check, cond_exp_identity_check, pairing,
    rearrange_indices,
)
from nilkit.couplings.coupling import (
    empirical_coupling, joint_period, periodized_N,
)
from nilkit.couplings.invariance import (
    alpha_invariance_bound, boundary_distance, check_alpha_invariance,
    check_diag_invariance, check_marginal_S_invariance, skewed_measure,
)
from nilkit.couplings.window import (
    IndexWindow, build_window, translation_closure_elements,
)
from nilkit.dynamics.averages import (
    cesaro_observable, l2_norm_squared, lambda_average, norm_estimate,
)
from nilkit.dynamics.finite import CyclicProductSystem, HeisenbergSystem
from nilkit.dynamics.observables import Observable, random_tabulated
from nilkit.dynamics.oracle import EXACT, GEOMETRIC, character_oracle
from nilkit.dynamics.torus import TorusSystem
from nilkit.launchers import conf
from nilkit.reduction.calculus import bracket, difference, difference_via_alpha
from nilkit.reduction.complexity import EXCEEDED, complexity
from nilkit.reduction.system_ops import is_trivial

# at most this many failure descriptions are kept per battery
MAX_REPORTED_FAILURES = 10
# float slack for Monte Carlo comparisons against closed forms
FLOAT_TOLERANCE = 1e-9
# sqrt(2) - 1
TORUS_ROTATION = [0.41421356237309515]


class BatteryResult(object):
    def __init__(self, name):
        self.name = name
        self.trials = 0
        self.failures = []
        self.num_failures = 0
        self.refusals = 0
        self.seconds = 0.0
        self.stats = OrderedDict()

    def check(self, ok, description):
        self.trials += 1
        if not ok:
            self.num_failures += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(description)
        return ok

    def refuse(self, description):
        self.refusals += 1
        logger.log("{}: refused: {}".format(self.name, description))

    @property
    def passed(self):
        return self.num_failures == 0

    def row(self):
        return OrderedDict([
            ('battery', self.name),
            ('trials', self.trials),
            ('failures', self.num_failures),
            ('refusals', self.refusals),
            ('passed', self.passed),
        ])

    def to_json_dict(self):
        out = self.row()
        out['failure_examples'] = list(self.failures)
        out['stats'] = dict(self.stats)
        return out


def _count(base, scale):
    return max(1, int(math.ceil(base * scale)))


"""
Symbolic algebra
"""


def _shifted(A):
    return A.embed().shift(SEQUENCE_VAR, coordinate_var(A.level + 1))


def algebra_battery(rng, scale=1.0):
    result = BatteryResult('algebra')
    for t in range(_count(conf.ALGEBRA_TRIALS, scale)):
        d = int(rng.integers(1, 6))
        A, B, C = (random_nilseq(rng, d, max_degree=3) for _ in range(3))
        I = NilSeq.identity(d)
        label = "trial {} with A = {}".format(t, A.serialize())
        result.check(A * A.inverse() == I and A.inverse() * A == I,
                     "inverse law, " + label)
        result.check((A * B) * C == A * (B * C), "associativity, " + label)
        result.check(_shifted(A * B) == _shifted(A) * _shifted(B),
                     "shift homomorphism, " + label)
        result.check(parse_nilseq(A.to_list()) == A,
                     "serialization round trip, " + label)
    return result


"""
Reduction calculus and complexity
"""

REDUCTION_GROUPS = [
    groups.make_group_spec(groups.FIRST_ROW, 1),
    groups.make_group_spec(groups.FIRST_ROW, 2),
    groups.make_group_spec(groups.HEISENBERG),
]


def reduction_identities_battery(rng, scale=1.0):
    result = BatteryResult('reduction_identities')
    for t in range(_count(conf.REDUCTION_TRIALS, scale)):
        spec = REDUCTION_GROUPS[t % len(REDUCTION_GROUPS)]
        p = random_group_sequence(rng, spec, max_degree=3)
        e = spec.identity()
        label = "{} p = {}".format(spec.kind, p.serialize())
        D = difference(p)
        result.check(bracket(p, e) == D, "<p|e> = D p, " + label)
        result.check(bracket(p, p) == p.embed(), "<p|p> = iota p, " + label)
        result.check(difference_via_alpha(p) == D,
                     "D p through alpha, " + label)
    return result


def complexity_cases():
    """(label, system, expected value or None, max_depth)"""
    return [
        ('constant', GSystem([groups.first_row(3), groups.first_row(-1)]),
         0, conf.DEFAULT_MAX_DEPTH),
        ('n', GSystem([groups.first_row('n')]), 1, conf.DEFAULT_MAX_DEPTH),
        ('n_2n', GSystem([groups.first_row('n'), groups.first_row('2*n')]),
         3, conf.DEFAULT_MAX_DEPTH),
        ('heisenberg_linear',
         GSystem([groups.heisenberg('n', 0, 0), groups.heisenberg(0, 'n', 0)]),
         None, 6),
    ]


def complexity_battery(rng, scale=1.0):
    result = BatteryResult('complexity_regressions')
    for label, system, expected, max_depth in complexity_cases():
        found = complexity(system, max_depth)
        if found is EXCEEDED:
            result.check(False, "{}: exceeded max_depth {}".format(
                label, max_depth))
            result.stats[label] = 'exceeded'
            continue
        result.stats[label] = found.value
        if expected is not None:
            result.check(found.value == expected, "{}: complexity {} != {}".format(
                label, found.value, expected))
        result.check(found.trace.verify(), "{}: trace does not replay".format(
            label))
        result.check(is_trivial(found.trace.final),
                     "{}: trace does not end trivial".format(label))
    return result


"""
Coordinate re-arrangement
"""

REARRANGE_GROUPS = [
    groups.make_group_spec(groups.FIRST_ROW, 2),
    groups.make_group_spec(groups.HEISENBERG),
]


def _random_block(rng, size, k=1):
    return tuple(
        tuple(Fraction(int(v), 4) for v in rng.integers(-4, 5, size=k))
        for _ in range(size))


def canon_rearrange_battery(rng, scale=1.0):
    result = BatteryResult('canon_rearrange')
    for t in range(_count(conf.REARRANGE_TRIALS, scale)):
        spec = REARRANGE_GROUPS[t % len(REARRANGE_GROUPS)]
        r = random_group_sequence(rng, spec)
        p = random_group_sequence(rng, spec)
        n = int(rng.integers(-5, 6))
        label = "{} r = {}, p = {}, n = {}".format(
            spec.kind, r.serialize(), p.serialize(), n)
        left, right = rearrange_indices(r, p, n)
        result.check(left == right, "coordinate indices differ, " + label)
        window = IndexWindow([NilSeq.identity(spec.dim, level=1), left, right])
        block = _random_block(rng, len(window))
        result.check(canon_rearrange_check(r, p, n, block, window),
                     "values differ, " + label)
    return result


"""
Dynamics
"""


def _random_finite_instance(rng):
    if rng.integers(0, 2) == 0:
        spec = groups.make_group_spec(groups.FIRST_ROW, 1)
        sys = CyclicProductSystem([int(rng.integers(2, 7))])
    else:
        spec = groups.make_group_spec(groups.HEISENBERG)
        sys = HeisenbergSystem(int(rng.integers(2, 4)))
    k = int(rng.integers(1, 4))
    gsys = GSystem(random_group_sequence(rng, spec) for _ in range(k))
    return sys, gsys


def actions_battery(rng, scale=1.0):
    result = BatteryResult('actions')
    for t in range(_count(conf.ACTION_TRIALS, scale)):
        sys, _ = _random_finite_instance(rng)
        a, b = sys.random_element(rng), sys.random_element(rng)
        label = "trial {} on {}".format(t, sys.get_diagnostics())
        result.check(sys.check_measure_preserving([a, b]),
                     "not a bijection, " + label)
        result.check(sys.check_homomorphism([(a, b)]),
                     "not a homomorphism, " + label)
    return result


def contraction_battery(rng, scale=1.0):
    """Lambda_N is 1-Lipschitz in its last slot and multilinear, exactly."""
    result = BatteryResult('contraction_multilinearity')
    for t in range(_count(conf.AVERAGE_TRIALS, scale)):
        sys, gsys = _random_finite_instance(rng)
        k = len(gsys)
        N = int(rng.integers(1, 9))
        fs = [random_tabulated(rng, sys.states) for _ in range(k)]
        other = random_tabulated(rng, sys.states)
        label = "trial {}, N = {}, {}".format(t, N, gsys.serialize())

        base = lambda_average(sys, gsys, fs, N)
        moved = lambda_average(sys, gsys, fs[:-1] + [other], N)
        gap = sys.tabulate(fs[-1]) - sys.tabulate(other)
        result.check(
            l2_norm_squared(sys, base - moved) <= l2_norm_squared(sys, gap),
            "contraction, " + label)

        j = int(rng.integers(0, k))
        a = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        b = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        mixed = Observable.from_table(
            sys.states, a * sys.tabulate(fs[j]) + b * sys.tabulate(other),
            bounded=False)
        swapped = list(fs)
        swapped[j] = other
        combined = list(fs)
        combined[j] = mixed
        lhs = lambda_average(sys, gsys, combined, N)
        rhs = a * base + b * lambda_average(sys, gsys, swapped, N)
        result.check(all(lhs == rhs), "multilinearity in slot {}, {}".format(
            j, label))
    return result


def average_oracle_battery(rng, scale=1.0):
    result = BatteryResult('average_oracles')
    first_row = groups.first_row

    # finite cyclic q = 5, single average of the indicator of 0
    sys = CyclicProductSystem([5])
    gsys = GSystem([first_row('n')])
    f = Observable.indicator([0])
    for N in range(1, 51):
        values = lambda_average(sys, gsys, [f], N)
        if N % 5 == 0:
            result.check(all(v == Fraction(1, 5) for v in values),
                         "cyclic q=5: Lambda_{} != 1/5".format(N))
        result.check(max(abs(v - Fraction(1, 5)) for v in values)
                     <= Fraction(2, N),
                     "cyclic q=5: Lambda_{} outside 2/N".format(N))

    torus = TorusSystem(TORUS_ROTATION)
    points = torus.sample_points(rng, _count(conf.DEFAULT_SAMPLES, scale))
    linear = GSystem([first_row('n'), first_row('2*n')])
    grid = [1, 2, 3, 5, 8, 10, 20, 40]

    # resonant: e(2x) e(-x) along (n, 2n) is e(x) at every N
    fs = [Observable.character([2]), Observable.character([-1])]
    oracle = character_oracle(fs, linear, TORUS_ROTATION)
    result.check(oracle.resonant and oracle.rate_kind == EXACT,
                 "resonant case classified as {}".format(oracle.rate_kind))
    limit = oracle.limit(points)
    for N in grid:
        estimate = norm_estimate(
            torus, lambda_average(torus, linear, fs, N, points=points) - limit)
        result.check(estimate.value <= 3 * estimate.stderr + FLOAT_TOLERANCE,
                     "resonant torus: deviation {} at N = {}".format(
                         estimate.value, N))

    # non-resonant: e(x) e(x) along (n, 2n) has phase 3 alpha
    fs = [Observable.character([1]), Observable.character([1])]
    oracle = character_oracle(fs, linear, TORUS_ROTATION)
    result.check(not oracle.resonant and oracle.rate_kind == GEOMETRIC,
                 "non-resonant case classified as {}".format(oracle.rate_kind))
    for N in grid:
        estimate = norm_estimate(
            torus, lambda_average(torus, linear, fs, N, points=points))
        result.check(
            estimate.value <= oracle.rate(N) + 3 * estimate.stderr
            + FLOAT_TOLERANCE,
            "non-resonant torus: {} above envelope {} at N = {}".format(
                estimate.value, oracle.rate(N), N))

    # zero frequencies: limit 1
    fs = [Observable.character([0]), Observable.character([0])]
    oracle = character_oracle(fs, linear, TORUS_ROTATION)
    result.check(np.allclose(oracle.limit(points), 1.0),
                 "zero frequencies do not give limit 1")
    return result


"""
Couplings
"""


class CouplingFixture(object):
    """
    A finite system, a level 0 system of k sequences and f_1, ..., f_k,
    with the window their couplings live on. `last` = None uses
    A_N = Lambda_N(f_1, ..., f_k) for each N.
    """

    def __init__(self, label, sys, gsys, fs, group_spec, n_max=2,
                 translations=None, window=None, last=None, mu=None):
        self.label = label
        self.sys = sys
        self.gsys = gsys
        self.fs = list(fs)
        self.group_spec = group_spec
        self.n_max = n_max
        if translations is None:
            translations = group_spec.generators()
        self.translations = list(translations)
        if window is None:
            window = build_window(
                gsys, range(1, n_max + 1),
                extra=translation_closure_elements(gsys, self.translations),
                chain=True, translations=self.translations)
        self.window = window
        self.last = last
        self.mu = mu

    @property
    def head(self):
        return self.fs[:-1]

    @property
    def f_k(self):
        return self.fs[-1]

    def coupling(self, N, last=None, mu=None):
        last = self.last if last is None else last
        mu = self.mu if mu is None else mu
        if last is None:
            last = cesaro_observable(self.sys, self.gsys, self.head, self.f_k, N)
        return empirical_coupling(self.sys, self.head, last, self.window, N,
                                  mu=mu)


def coupling_fixtures():
    cyclic = CyclicProductSystem([5])
    heis = HeisenbergSystem(3)
    first_row, heisenberg = groups.first_row, groups.heisenberg
    return [
        CouplingFixture(
            'cyclic5', cyclic,
            GSystem([first_row('n'), first_row('2*n')]),
            [Observable.indicator([0]), Observable.indicator([1, 2])],
            groups.make_group_spec(groups.FIRST_ROW, 1)),
        CouplingFixture(
            'heisenberg3', heis,
            GSystem([heisenberg('n', 0, 0), heisenberg(0, 'n', 0)]),
            [Observable.indicator([s for s in heis.states if s[0] == 0]),
             Observable.indicator([s for s in heis.states if s[2] == 1])],
            groups.make_group_spec(groups.HEISENBERG)),
    ]


def check_coupling_invariances(result, fixture, coupling, label):
    """The three invariance checks on one coupling, as one report row."""
    N = coupling.N
    refusals = result.refusals
    row = OrderedDict()
    row['N'] = N
    row['atoms'] = len(coupling.atoms)
    row['in_Q'] = result.check(coupling.in_Q(),
                               "{}: X-marginal is not mu".format(label))
    diag_ok = True
    for g in [fixture.group_spec.identity()] + fixture.translations:
        try:
            ok = check_diag_invariance(coupling, g)
        except WindowClosureError as e:
            result.refuse("{}: {}".format(label, e))
            continue
        diag_ok &= result.check(
            ok, "{}: not invariant under the diagonal action of {}".format(
                label, g.serialize()))
    row['diag_invariant'] = diag_ok

    tv = check_alpha_invariance(coupling)
    boundary = boundary_distance(coupling)
    row['alpha_tv'] = tv
    row['alpha_bound'] = alpha_invariance_bound(N)
    row['boundary_tv'] = boundary
    result.check(tv <= alpha_invariance_bound(N),
                 "{}: alpha distance {} above 2/N".format(label, tv))
    result.check(tv == boundary,
                 "{}: alpha distance {} is not the boundary count {}".format(
                     label, tv, boundary))

    checked, marginal_ok = 0, True
    for r in fixture.window:
        try:
            ok = check_marginal_S_invariance(coupling, r)
        except WindowClosureError as e:
            result.refuse("{}: {}".format(label, e))
            continue
        checked += 1
        marginal_ok &= result.check(
            ok, "{}: Y-marginal not invariant under S^{}".format(
                label, r.serialize()))
    row['marginal_checked'] = checked
    row['marginal_invariant'] = marginal_ok
    row['refusals'] = result.refusals - refusals
    return row


def _coupling_grid(scale):
    grid = conf.COUPLING_N_GRID
    return grid[:_count(len(grid), min(scale, 1.0))]


def coupling_invariance_battery(rng, scale=1.0):
    result = BatteryResult('coupling_invariance')
    for fixture in coupling_fixtures():
        period = joint_period(fixture.sys, fixture.window)
        result.stats['{} joint period'.format(fixture.label)] = period
        for N in _coupling_grid(scale):
            label = "{} N = {}".format(fixture.label, N)
            row = check_coupling_invariances(
                result, fixture, fixture.coupling(N), label)
            tv = row['alpha_tv']
            if N % period == 0:
                result.check(tv == 0, "{}: periodized alpha distance {}".format(
                    label, tv))

        # negative control: a skewed mu breaks the diagonal invariance
        skewed = fixture.coupling(
            fixture.sys.size, mu=skewed_measure(fixture.sys))
        g = fixture.translations[0]
        result.check(not skewed.in_Q(),
                     "{}: skewed coupling reported in Q".format(fixture.label))
        try:
            result.check(not check_diag_invariance(skewed, g),
                         "{}: skewed mu passed the diagonal check".format(
                             fixture.label))
        except WindowClosureError as e:
            result.refuse("{}: {}".format(fixture.label, e))
    return result


def pairing_battery(rng, scale=1.0):
    result = BatteryResult('pairing')
    for fixture in coupling_fixtures():
        for N in [1, 2, 3, 4, 5, 7]:
            found = pairing(fixture.coupling(N), fixture.f_k, fixture.gsys)
            result.check(found.agree, "{} N = {}: {} != {}".format(
                fixture.label, N, found.integral, found.direct))
        zero = Observable.constant(0)
        found = pairing(fixture.coupling(3, last=zero), fixture.f_k,
                        fixture.gsys)
        result.check(found.integral == 0 and found.direct == 0,
                     "{}: last = 0 does not pair to 0".format(fixture.label))
    return result


def identity_chain_battery(rng, scale=1.0):
    result = BatteryResult('identity_chain')
    for fixture in coupling_fixtures():
        n_max = fixture.n_max
        N = periodized_N(fixture.sys, fixture.window, at_least=5)
        found = cond_exp_identity_check(
            fixture.coupling(N), fixture.head, fixture.gsys, n_max)
        result.check(
            found.exact_alpha and found.cond_exp_discrepancy == 0
            and found.rearranged_discrepancy == 0,
            "{} periodized N = {}: discrepancies {}, {}".format(
                fixture.label, N, found.cond_exp_discrepancy,
                found.rearranged_discrepancy))
        for N in _coupling_grid(scale)[:8]:
            found = cond_exp_identity_check(
                fixture.coupling(N), fixture.head, fixture.gsys, n_max)
            label = "{} N = {}".format(fixture.label, N)
            result.check(found.cond_exp_discrepancy == 0,
                         "{}: conditional expectation step off by {}".format(
                             label, found.cond_exp_discrepancy))
            result.check(found.within_budget,
                         "{}: rearranged step off by {} > {}".format(
                             label, found.rearranged_discrepancy,
                             found.budget))
    return result


BATTERIES = OrderedDict([
    ('algebra', algebra_battery),
    ('reduction_identities', reduction_identities_battery),
    ('complexity_regressions', complexity_battery),
    ('canon_rearrange', canon_rearrange_battery),
    ('actions', actions_battery),
    ('average_oracles', average_oracle_battery),
    ('coupling_invariance', coupling_invariance_battery),
    ('pairing', pairing_battery),
    ('identity_chain', identity_chain_battery),
    ('contraction_multilinearity', contraction_battery),
])
BATTERY_NAMES = tuple(BATTERIES)


def run_batteries(names, rng, scale=1.0):
    results = []
    for name in names:
        logger.log("Battery {}".format(name))
        result = BATTERIES[name](rng, scale)
        gt.stamp(name, unique=False)
        result.seconds = gt.get_times().stamps.cum.get(name, 0.0)
        logger.log("Battery {}: {} trials, {} failures, {} refusals".format(
            name, result.trials, result.num_failures, result.refusals))
        results.append(result)
    return results
