"""
The multiple ergodic averages

    Lambda_N(f_1, ..., f_k)(x) = (1/N) sum_{n=1}^N prod_i f_i(T^{p_i(n)} x)

evaluated exactly on finite systems and on sampled points of a torus.
"""
import functools
import math
from collections import namedtuple
from fractions import Fraction

import numpy as np

from nilkit.algebra.nilseq import SEQUENCE_VAR
from nilkit.core.exceptions import StructureError
from nilkit.dynamics.observables import Observable

Estimate = namedtuple('Estimate', ['value', 'stderr', 'exact'])

# (sequence, n) pairs kept for repeated grids
VALUE_CACHE_SIZE = 4096


@functools.lru_cache(maxsize=VALUE_CACHE_SIZE)
def sequence_value(p, n):
    return p.evaluate({SEQUENCE_VAR: n})


def check_average_arguments(sys, gsys, fs):
    fs = list(fs)
    if len(fs) != len(gsys):
        raise StructureError(
            "{} observables for a system of {} sequences".format(
                len(fs), len(gsys)))
    if gsys.level != 0:
        raise StructureError(
            "Averages are defined for level 0 systems; reduced systems act "
            "on extended spaces")
    for p in gsys:
        sys.check_sequence(p)
    return fs


def _resolve_points(sys, points, rng, samples):
    if points is not None:
        return points
    return sys.points(rng=rng, samples=samples)


def product_term(sys, gsys, fs, n, points):
    term = None
    for p, f in zip(gsys, fs):
        values = sys.values(f, sys.translate(points, sequence_value(p, n)))
        term = values if term is None else term * values
    return term


def cesaro_sums(sys, gsys, fs, n_max, points):
    """Yield (N, sum_{n<=N} prod_i f_i(T^{p_i(n)} x)) for N = 1..n_max."""
    fs = check_average_arguments(sys, gsys, fs)
    total = None
    for n in range(1, n_max + 1):
        term = product_term(sys, gsys, fs, n, points)
        total = term if total is None else total + term
        yield n, total


def lambda_average(sys, gsys, fs, N, points=None, rng=None, samples=None):
    if N < 1:
        raise StructureError("N must be positive, got {}".format(N))
    points = _resolve_points(sys, points, rng, samples)
    total = None
    for _, total in cesaro_sums(sys, gsys, fs, N, points):
        pass
    return total / N


def cesaro_observable(sys, gsys, fs, last, N):
    """A_N = Lambda_N(f_1, ..., f_{k-1}, last) tabulated on a finite system."""
    if not sys.exact:
        raise StructureError("Cesaro observables are tabulated on finite systems")
    values = lambda_average(sys, gsys, list(fs) + [last], N)
    return Observable.from_table(sys.states, values)


def _is_exact(sys, exact):
    return sys.exact if exact is None else exact


def _as_complex(u):
    return np.asarray(u, dtype=complex)


def inner(sys, u, v, exact=None):
    """<u, v> in L2(mu): an exact sum over all states, or a sample mean."""
    if _is_exact(sys, exact):
        return sum(u * v, Fraction(0)) * sys.measure
    return complex(np.mean(_as_complex(u) * np.conj(_as_complex(v))))


def l2_norm_squared(sys, u, exact=None):
    if _is_exact(sys, exact):
        return inner(sys, u, u, exact=True)
    return float(np.mean(np.abs(_as_complex(u)) ** 2))


def norm_estimate(sys, u, exact=None):
    """||u||_2 with its Monte Carlo standard error; exact square on finite systems."""
    if _is_exact(sys, exact):
        exact_sq = l2_norm_squared(sys, u, exact=True)
        return Estimate(math.sqrt(exact_sq), 0.0, exact_sq)
    squares = np.abs(_as_complex(u)) ** 2
    mean = float(np.mean(squares))
    value = math.sqrt(mean)
    if value == 0.0 or squares.size < 2:
        return Estimate(value, 0.0, None)
    stderr_sq = float(np.std(squares, ddof=1)) / math.sqrt(squares.size)
    return Estimate(value, stderr_sq / (2.0 * value), None)


def sup_norm(sys, u):
    if sys.exact:
        return max(abs(v) for v in u)
    return float(np.max(np.abs(u)))
