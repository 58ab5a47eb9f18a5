import abc
from collections import OrderedDict, namedtuple

import gtimer as gt
import numpy as np

from nilkit.core import logger

OK = 'ok'
EXCEEDED = 'exceeded'
VIOLATION = 'violation'
STATUSES = (OK, EXCEEDED, VIOLATION)

# series: list of (label, xs, ys)
FigureSpec = namedtuple('FigureSpec', ['title', 'xlabel', 'ylabel', 'series'])


def _get_phase_timings():
    times_cum = gt.get_times().stamps.cum
    times = OrderedDict()
    for key in sorted(times_cum):
        times['time/{} (s)'.format(key)] = times_cum[key]
    times['time/total (s)'] = gt.get_times().total
    return times


class ExperimentResult(object):
    """
    What an experiment hands back to the runner.

    summary: JSON-ready dict written as result.json.
    rows: tabular rows (one dict per row) for CSV reports, may be empty.
    status: one of STATUSES.
    figure: FigureSpec for SVG reports.
    artifacts: extra JSON files, {file name: data}.
    violations: descriptions of failed identities.
    """

    def __init__(self, name, summary, rows=(), columns=None, status=OK,
                 figure=None, artifacts=None, violations=()):
        if status not in STATUSES:
            raise ValueError("Unknown status: {}".format(status))
        self.name = name
        self.summary = summary
        self.rows = list(rows)
        self.columns = columns
        self.status = status
        self.figure = figure
        self.artifacts = OrderedDict() if artifacts is None else artifacts
        self.violations = list(violations)
        if self.violations and status == OK:
            self.status = VIOLATION


class BaseExperiment(object, metaclass=abc.ABCMeta):
    """
    One experiment per process invocation. Subclasses implement `_run`,
    stamping their phases with gtimer; `run` resets the timer, logs the
    diagnostics and the phase timings as one tabular row.
    """
    name = None

    def __init__(self, config, rng=None):
        self.config = config
        if rng is None:
            rng = np.random.default_rng(config.seed)
        self.rng = rng
        self.result = None

    def run(self):
        gt.reset_root()
        logger.log("Running {} experiment".format(self.name))
        self.result = self._run()
        self._log_stats()
        return self.result

    @abc.abstractmethod
    def _run(self):
        pass

    def get_diagnostics(self):
        return OrderedDict()

    def _log_stats(self):
        logger.record_dict(self.get_diagnostics(), prefix='{}/'.format(self.name))
        gt.stamp('logging', unique=False)
        logger.record_dict(_get_phase_timings())
        logger.record_tabular('Status', self.result.status)
        logger.dump_tabular(with_prefix=False, with_timestamp=False)
