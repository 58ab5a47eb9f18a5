"""
Metastability diagnostics for Lambda_N: for every N on a grid, the largest
L2 deviation sup_{N <= N' <= LN} ||Lambda_N - Lambda_N'||_2 and whether it
stays below eps.
"""
import math
from collections import OrderedDict

from nilkit.core.exceptions import ConfigError
from nilkit.dynamics.averages import (
    cesaro_sums, l2_norm_squared, norm_estimate,
)

CSV_COLUMNS = ['N', 'window_sup_dev', 'l2_norm', 'estimator', 'stderr']
EXACT_ESTIMATOR = 'exact'
MONTE_CARLO_ESTIMATOR = 'monte_carlo'


class AverageReport(object):
    def __init__(self, n_grid, L, eps, estimator, samples=None, seed=None):
        self.n_grid = list(n_grid)
        self.L = L
        self.eps = eps
        self.estimator = estimator
        self.samples = samples
        self.seed = seed
        self.window_sup_dev = []
        self.window_sup_dev_sq = []
        self.l2_norm = []
        self.l2_norm_sq = []
        self.stderr = []
        self.stable = []

    @property
    def exact(self):
        return self.estimator == EXACT_ESTIMATOR

    def rows(self):
        rows = []
        for i, N in enumerate(self.n_grid):
            rows.append(OrderedDict([
                ('N', N),
                ('window_sup_dev', self.window_sup_dev[i]),
                ('l2_norm', self.l2_norm[i]),
                ('estimator', self.estimator),
                ('stderr', self.stderr[i]),
            ]))
        return rows

    def get_diagnostics(self):
        stats = OrderedDict()
        stats['estimator'] = self.estimator
        stats['grid points'] = len(self.n_grid)
        stats['stable windows'] = sum(self.stable)
        if self.window_sup_dev:
            stats['final window_sup_dev'] = self.window_sup_dev[-1]
            stats['final l2_norm'] = self.l2_norm[-1]
        return stats

    def to_json_dict(self):
        return {
            'n_grid': self.n_grid,
            'L': self.L,
            'eps': self.eps,
            'estimator': self.estimator,
            'samples': self.samples,
            'seed': self.seed,
            'rows': [dict(row, stable=stable)
                     for row, stable in zip(self.rows(), self.stable)],
        }


def window_end(N, L):
    return int(math.floor(L * N))


def convergence_report(sys, gsys, fs, n_grid, L, eps, rng=None, samples=None,
                       seed=None, points=None, exact=None):
    """
    `exact` defaults to the system's own mode. Sampled mode on a finite
    system draws `samples` states with `rng`.
    """
    n_grid = [int(N) for N in n_grid]
    if any(N < 1 for N in n_grid):
        raise ConfigError("Grid values must be positive, got {}".format(n_grid))
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ConfigError("N grid must be increasing, got {}".format(n_grid))
    if L <= 1:
        raise ConfigError("Window factor L must exceed 1, got {}".format(L))
    exact = sys.exact if exact is None else exact
    if exact and not sys.exact:
        raise ConfigError(
            "{} averages are sampled; exact mode needs a finite system".format(
                sys.kind))
    estimator = EXACT_ESTIMATOR if exact else MONTE_CARLO_ESTIMATOR
    report = AverageReport(n_grid, L, eps, estimator,
                           samples=None if exact else samples, seed=seed)
    if not n_grid:
        return report
    if points is None:
        if exact:
            points = sys.points()
        else:
            if rng is None or samples is None:
                raise ConfigError("Sampled mode needs a seed and a sample count")
            points = sys.sample_points(rng, samples)

    needed = set()
    for N in n_grid:
        needed.update(range(N, window_end(N, L) + 1))
    averages = {}
    for n, total in cesaro_sums(sys, gsys, fs, max(needed), points):
        if n in needed:
            averages[n] = total / n

    for N in n_grid:
        base = averages[N]
        sup_sq = 0
        for other in range(N + 1, window_end(N, L) + 1):
            sup_sq = max(sup_sq, l2_norm_squared(sys, base - averages[other],
                                                 exact=exact))
        estimate = norm_estimate(sys, base, exact=exact)
        report.window_sup_dev_sq.append(sup_sq)
        report.window_sup_dev.append(math.sqrt(sup_sq))
        report.l2_norm_sq.append(estimate.exact if exact
                                 else estimate.value ** 2)
        report.l2_norm.append(estimate.value)
        report.stderr.append(estimate.stderr)
        report.stable.append(math.sqrt(sup_sq) < eps)
    return report
