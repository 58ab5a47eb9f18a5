"""
Closed-form limits of character averages on a torus rotation.

With f_i = e(a_i . x) and p_i(n) first-row sequences with coordinates
v_i(n), the summand is

    e((sum_i a_i) . x) * e(sum_t n^t (c_t . alpha))

where c_t is the integer vector of n^t coefficients of sum_i a_ij v_ij(n).
The average is constant in N iff c_t = 0 for all t >= 1 (resonance).
"""
import cmath
import math
from collections import namedtuple

import numpy as np

from nilkit.algebra.groups import first_row_coordinates, is_first_row
from nilkit.algebra.nilseq import SEQUENCE_VAR
from nilkit.core.exceptions import StructureError
from nilkit.dynamics.observables import CHARACTER, Observable

EXACT = 'exact_at_all_N'
GEOMETRIC = 'geometric'
EQUIDISTRIBUTION = 'equidistribution'

# |1 - e(theta)| below this is treated as theta in Z
DEGENERATE_TOLERANCE = 1e-12


def e(t):
    return cmath.exp(2j * math.pi * t)


class OracleResult(namedtuple('OracleResult', [
        'resonant', 'frequency_sum', 'phase_coefficients', 'constant_phase',
        'linear_phase', 'rate_kind'])):
    """
    frequency_sum: sum_i a_i, the frequency of the limit function.
    phase_coefficients: [c_0, c_1, ...] as integer vectors.
    constant_phase: c_0 . alpha; linear_phase: c_1 . alpha.
    """

    def limit(self, points):
        points = np.atleast_2d(points)
        if not self.resonant:
            return np.zeros(points.shape[0], dtype=complex)
        return (np.exp(2j * np.pi * points.dot(np.asarray(self.frequency_sum)))
                * e(self.constant_phase))

    def rate(self, N):
        """Bound on ||Lambda_N - limit||_2, or None when no elementary rate exists."""
        if self.rate_kind == EXACT:
            return 0.0
        elif self.rate_kind == GEOMETRIC:
            return 2.0 / (N * abs(1 - e(self.linear_phase)))
        return None

    @property
    def limit_value_description(self):
        if self.rate_kind == EQUIDISTRIBUTION:
            return "equidistribution: limit 0, no elementary rate"
        if self.resonant:
            return "e({} . x) * e({})".format(
                list(self.frequency_sum), self.constant_phase)
        return "0"


def _frequencies(observables):
    out = []
    for f in observables:
        if isinstance(f, Observable):
            if f.kind != CHARACTER:
                raise StructureError(
                    "The character oracle takes characters, got {}".format(
                        f.kind))
            out.append(tuple(f.data))
        else:
            out.append(tuple(int(a) for a in f))
    return out


def _phase_coefficients(frequencies, gsys, s):
    """[c_0, ..., c_D]: c_t[j] is the n^t coefficient of sum_i a_ij v_ij(n)."""
    phases = []
    for j in range(s):
        total = None
        for a, p in zip(frequencies, gsys):
            term = a[j] * first_row_coordinates(p)[j]
            total = term if total is None else total + term
        phases.append(total)
    degree = max([q.degree(SEQUENCE_VAR) for q in phases] + [0])
    coefficients = []
    for t in range(degree + 1):
        exponents = (t,)
        coefficients.append(tuple(q.terms.get(exponents, 0) for q in phases))
    return coefficients


def character_oracle(frequencies, gsys, rotation):
    frequencies = _frequencies(frequencies)
    rotation = np.asarray(rotation, dtype=np.float64).reshape(-1)
    s = rotation.size
    if len(frequencies) != len(gsys):
        raise StructureError(
            "{} characters for {} sequences".format(len(frequencies), len(gsys)))
    if gsys.level != 0 or gsys.dim != s + 1:
        raise StructureError(
            "Expected level 0 first-row sequences of dimension {}".format(s + 1))
    frequency_sum = [0] * s
    for a, p in zip(frequencies, gsys):
        if len(a) != s:
            raise StructureError(
                "Frequency {} does not match torus dimension {}".format(a, s))
        if not is_first_row(p):
            raise StructureError("{!r} is not a first-row sequence".format(p))
        for j in range(s):
            frequency_sum[j] += a[j]
    coefficients = _phase_coefficients(frequencies, gsys, s)
    degree = len(coefficients) - 1
    nonresonant = [t for t in range(1, degree + 1) if any(coefficients[t])]
    constant_phase = float(np.dot(coefficients[0], rotation))
    linear_phase = (float(np.dot(coefficients[1], rotation))
                    if degree >= 1 else 0.0)
    if not nonresonant:
        kind, resonant = EXACT, True
    elif max(nonresonant) == 1:
        if abs(1 - e(linear_phase)) < DEGENERATE_TOLERANCE:
            kind, resonant = EXACT, True
        else:
            kind, resonant = GEOMETRIC, False
    else:
        kind, resonant = EQUIDISTRIBUTION, False
    return OracleResult(
        resonant=resonant,
        frequency_sum=tuple(frequency_sum),
        phase_coefficients=[tuple(c) for c in coefficients],
        constant_phase=constant_phase,
        linear_phase=linear_phase,
        rate_kind=kind,
    )
