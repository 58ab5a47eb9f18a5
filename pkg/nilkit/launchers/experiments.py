"""
The four experiments behind the subcommands. Each one reads an
ExperimentConfig, stamps its phases with gtimer and returns an
ExperimentResult; writing reports is left to the runner.
"""
from collections import OrderedDict

import gtimer as gt

from nilkit.core import logger
from nilkit.core.eval_util import (
    create_stats_ordered_dict, get_battery_information,
)
from nilkit.core.experiment import (
    EXCEEDED as EXCEEDED_STATUS, BaseExperiment, ExperimentResult, FigureSpec,
)
from nilkit.couplings.basic import cond_exp_identity_check, pairing
from nilkit.couplings.coupling import joint_period
from nilkit.couplings.invariance import skewed_measure
from nilkit.couplings.window import (
    IndexWindow, build_window, translation_closure_elements,
)
from nilkit.dynamics.averages import lambda_average, norm_estimate
from nilkit.dynamics.oracle import EXACT, GEOMETRIC, character_oracle
from nilkit.dynamics.report import CSV_COLUMNS, convergence_report
from nilkit.dynamics.torus import TorusSystem
from nilkit.launchers import conf
from nilkit.launchers.batteries import (
    FLOAT_TOLERANCE, BatteryResult, CouplingFixture, check_coupling_invariances,
    run_batteries,
)
from nilkit.launchers.config import (
    AVERAGE, COMPLEXITY, COUPLE, EXACT_MODE, SKEWED_MU, VERIFY,
)
from nilkit.reduction.complexity import EXCEEDED, ComplexitySearch

ORACLE_COLUMNS = ['N', 'deviation', 'stderr', 'envelope', 'agrees']
COUPLE_COLUMNS = [
    'N', 'periodic', 'atoms', 'in_Q', 'diag_invariant', 'alpha_tv',
    'alpha_bound', 'boundary_tv', 'marginal_checked', 'marginal_invariant',
    'refusals', 'pairing_agree', 'cond_exp_discrepancy',
    'rearranged_discrepancy', 'budget', 'within_budget',
]
VERIFY_COLUMNS = ['battery', 'trials', 'failures', 'refusals', 'passed']


def _violations(result):
    out = list(result.failures)
    hidden = result.num_failures - len(out)
    if hidden > 0:
        out.append("... and {} more in {}".format(hidden, result.name))
    return out


class ComplexityExperiment(BaseExperiment):
    name = COMPLEXITY

    def __init__(self, config, rng=None):
        super().__init__(config, rng=rng)
        self.search = None
        self.found = None

    def _run(self):
        config = self.config
        gsys = config.gsystem()
        flags = config['search']
        self.search = ComplexitySearch(
            gsys,
            config['max_depth'],
            allow_initial_reorder=flags['allow_initial_reorder'],
            prune_dominated=flags['prune_dominated'],
        )
        gt.stamp('setup')
        self.found = self.search.run()
        gt.stamp('search')

        summary = OrderedDict([
            ('name', config.name),
            ('system', gsys.to_json_dict()),
            ('max_depth', config['max_depth']),
            ('search', dict(flags)),
            ('nodes_expanded', self.search.nodes_expanded),
            ('depth_reached', self.search.depth_reached),
        ])
        if self.found is EXCEEDED:
            logger.log("Search exceeded max_depth {}".format(config['max_depth']))
            summary['value'] = None
            summary['status'] = EXCEEDED_STATUS
            return ExperimentResult(self.name, summary, status=EXCEEDED_STATUS)

        trace = self.found.trace.to_json_dict()
        summary['value'] = self.found.value
        summary['trace'] = trace
        violations = []
        if not self.found.trace.verify():
            violations.append("reduction trace does not replay")
        gt.stamp('checks')
        logger.log("Complexity {}".format(self.found.value))
        return ExperimentResult(
            self.name, summary,
            artifacts=OrderedDict([('trace.json', trace)]),
            violations=violations,
        )

    def get_diagnostics(self):
        stats = OrderedDict()
        stats['Nodes Expanded'] = self.search.nodes_expanded
        stats['Depth Reached'] = self.search.depth_reached
        stats['Complexity'] = (-1 if self.found is EXCEEDED
                               else self.found.value)
        return stats


class AverageExperiment(BaseExperiment):
    """
    Metastability report for Lambda_N over the N grid. On a torus with
    character observables the averages are also compared with the closed
    form limit and its rate envelope.
    """
    name = AVERAGE

    def __init__(self, config, rng=None):
        super().__init__(config, rng=rng)
        self.report = None
        self.oracle_rows = []

    def _oracle_rows(self, sys, gsys, fs, points):
        oracle = character_oracle(fs, gsys, sys.rotation)
        logger.log("Character oracle: {}, limit {}".format(
            oracle.rate_kind, oracle.limit_value_description))
        limit = oracle.limit(points)
        rows, violations = [], []
        for N in self.config['n_grid']:
            estimate = norm_estimate(
                sys, lambda_average(sys, gsys, fs, N, points=points) - limit)
            slack = 3 * estimate.stderr + FLOAT_TOLERANCE
            if oracle.rate_kind == EXACT:
                envelope, agrees = 0.0, estimate.value <= slack
            elif oracle.rate_kind == GEOMETRIC:
                envelope = oracle.rate(N)
                agrees = estimate.value <= envelope + slack
            else:
                envelope, agrees = None, None
            if agrees is False:
                violations.append(
                    "N = {}: deviation {} from the {} limit above {}".format(
                        N, estimate.value, oracle.rate_kind, envelope))
            rows.append(OrderedDict([
                ('N', N),
                ('deviation', estimate.value),
                ('stderr', estimate.stderr),
                ('envelope', envelope),
                ('agrees', agrees),
            ]))
        summary = OrderedDict([
            ('rate_kind', oracle.rate_kind),
            ('resonant', oracle.resonant),
            ('limit', oracle.limit_value_description),
            ('rows', rows),
        ])
        return summary, violations

    def _run(self):
        config = self.config
        sys = config.make_system()
        gsys = config.gsystem()
        fs = config.observables()
        mode = config['mode']
        exact = sys.exact if mode is None else mode == EXACT_MODE
        samples = config['samples'] or conf.DEFAULT_SAMPLES
        points = None
        if not exact:
            points = sys.sample_points(self.rng, samples)
        gt.stamp('setup')

        self.report = convergence_report(
            sys, gsys, fs, config['n_grid'], config['L'], config['eps'],
            samples=samples, seed=config.seed, points=points, exact=exact)
        gt.stamp('averaging')

        summary = OrderedDict([
            ('name', config.name),
            ('dynamics', sys.get_diagnostics()),
            ('system', gsys.to_json_dict()),
            ('observables', [f.to_json_dict() for f in fs]),
            ('report', self.report.to_json_dict()),
        ])
        violations = []
        if (isinstance(sys, TorusSystem) and config['oracle']
                and config['n_grid']):
            summary['oracle'], violations = self._oracle_rows(
                sys, gsys, fs, points)
            self.oracle_rows = summary['oracle']['rows']
            gt.stamp('checks')

        n_grid = self.report.n_grid
        figure = FigureSpec(
            title=config.name,
            xlabel='N',
            ylabel='L2 norm',
            series=[
                ('sup deviation on [N, LN]', n_grid, self.report.window_sup_dev),
                ('||Lambda_N||', n_grid, self.report.l2_norm),
            ],
        )
        return ExperimentResult(
            self.name, summary, rows=self.report.rows(), columns=CSV_COLUMNS,
            figure=figure, violations=violations,
        )

    def get_diagnostics(self):
        stats = self.report.get_diagnostics()
        if self.oracle_rows:
            stats['oracle disagreements'] = sum(
                row['agrees'] is False for row in self.oracle_rows)
        return stats


class CoupleExperiment(BaseExperiment):
    """
    Builds lambda_N for every N of the grid and runs the invariance suite,
    the pairing re-arrangement and the conditional expectation chain on it.
    With a skewed mu the same checks run as a negative control and their
    failures are reported, not raised.
    """
    name = COUPLE

    def __init__(self, config, rng=None):
        super().__init__(config, rng=rng)
        self.rows = []
        self.checks = None

    def _window(self, gsys, translations):
        config = self.config
        elements = config.window_elements('elements')
        if elements is not None:
            window = IndexWindow(elements)
            window.annotate_closure(translations)
            return window
        window = config['window']
        n_range = window['n_range'] or [1, config['n_max']]
        extra = list(config.window_elements('extra') or [])
        extra += translation_closure_elements(gsys, translations)
        return build_window(gsys, range(n_range[0], n_range[1] + 1),
                            extra=extra, chain=window['chain'],
                            translations=translations)

    def _run(self):
        config = self.config
        sys = config.make_system()
        gsys = config.gsystem()
        fs = config.observables()
        translations = config.translations()
        window = self._window(gsys, translations)
        skewed = config['mu'] == SKEWED_MU
        fixture = CouplingFixture(
            config.name, sys, gsys, fs, config.group_spec,
            n_max=config['n_max'],
            translations=translations,
            window=window,
            last=config.last_observable(),
            mu=skewed_measure(sys) if skewed else None,
        )
        period = joint_period(sys, window)
        logger.log("Window of {} coordinates, joint period {}".format(
            len(window), period))
        for label, closure in window.annotations.items():
            logger.log("Window closure under {}: {}".format(label, closure))
        gt.stamp('setup')

        name = 'couple/skewed' if skewed else 'couple'
        self.checks = checks = BatteryResult(name)
        artifacts = OrderedDict()
        for N in config['n_grid']:
            label = "N = {}".format(N)
            coupling = fixture.coupling(N)
            gt.stamp('coupling', unique=False)
            if config['dump']:
                artifacts['coupling_N{:04d}.json'.format(N)] = (
                    coupling.to_json_dict())

            row = check_coupling_invariances(checks, fixture, coupling, label)
            row['periodic'] = N % period == 0
            if row['periodic']:
                checks.check(row['alpha_tv'] == 0,
                             "{}: periodized alpha distance {}".format(
                                 label, row['alpha_tv']))
            found = pairing(coupling, fixture.f_k, gsys)
            row['pairing_agree'] = checks.check(
                found.agree, "{}: pairing {} != {}".format(
                    label, found.integral, found.direct))
            identity = cond_exp_identity_check(
                coupling, fixture.head, gsys, config['n_max'])
            row['cond_exp_discrepancy'] = identity.cond_exp_discrepancy
            row['rearranged_discrepancy'] = identity.rearranged_discrepancy
            row['budget'] = identity.budget
            row['within_budget'] = identity.within_budget
            checks.check(identity.cond_exp_discrepancy == 0,
                         "{}: conditional expectation step off by {}".format(
                             label, identity.cond_exp_discrepancy))
            checks.check(identity.within_budget,
                         "{}: rearranged step off by {} > {}".format(
                             label, identity.rearranged_discrepancy,
                             identity.budget))
            self.rows.append(OrderedDict(
                (column, row[column]) for column in COUPLE_COLUMNS))
            gt.stamp('checks', unique=False)

        summary = OrderedDict([
            ('name', config.name),
            ('dynamics', sys.get_diagnostics()),
            ('system', gsys.to_json_dict()),
            ('window', window.serialize()),
            ('joint_period', period),
            ('mu', config['mu']),
            ('checks', checks.to_json_dict()),
            ('rows', self.rows),
        ])
        if skewed:
            summary['negative_control_detected'] = not checks.passed
            violations = []
        else:
            violations = _violations(checks)

        n_grid = [row['N'] for row in self.rows]
        figure = FigureSpec(
            title=config.name,
            xlabel='N',
            ylabel='total variation',
            series=[
                ('alpha shift distance', n_grid,
                 [float(row['alpha_tv']) for row in self.rows]),
                ('2/N', n_grid, [float(row['alpha_bound']) for row in self.rows]),
                ('rearranged discrepancy', n_grid,
                 [float(row['rearranged_discrepancy']) for row in self.rows]),
            ],
        )
        return ExperimentResult(
            self.name, summary, rows=self.rows, columns=COUPLE_COLUMNS,
            figure=figure, artifacts=artifacts, violations=violations,
        )

    def get_diagnostics(self):
        stats = OrderedDict()
        stats['Num Checks'] = self.checks.trials
        stats['Num Failures'] = self.checks.num_failures
        stats['Num Refusals'] = self.checks.refusals
        stats.update(create_stats_ordered_dict(
            'Alpha TV', [row['alpha_tv'] for row in self.rows]))
        stats.update(create_stats_ordered_dict(
            'Atoms', [row['atoms'] for row in self.rows]))
        return stats


class VerifyExperiment(BaseExperiment):
    name = VERIFY

    def __init__(self, config, rng=None):
        super().__init__(config, rng=rng)
        self.results = []

    def _run(self):
        config = self.config
        self.results = run_batteries(config['batteries'], self.rng,
                                     scale=config['scale'])
        violations = []
        for result in self.results:
            violations.extend(_violations(result))
        summary = OrderedDict([
            ('name', config.name),
            ('scale', config['scale']),
            ('seed', config.seed),
            ('batteries', [r.to_json_dict() for r in self.results]),
        ])
        return ExperimentResult(
            self.name, summary, rows=[r.row() for r in self.results],
            columns=VERIFY_COLUMNS, violations=violations,
        )

    def get_diagnostics(self):
        return get_battery_information(self.results)


EXPERIMENTS = OrderedDict([
    (COMPLEXITY, ComplexityExperiment),
    (AVERAGE, AverageExperiment),
    (COUPLE, CoupleExperiment),
    (VERIFY, VerifyExperiment),
])


def make_experiment(config, rng=None):
    return EXPERIMENTS[config.subcommand](config, rng=rng)
