"""
Bounded observables on the state spaces of nilkit.dynamics.

Finite systems take rational-valued kinds (indicator, tabulated); torus
systems take characters x -> e(a . x).
"""
import numbers
from fractions import Fraction

import numpy as np

from nilkit.core.exceptions import StructureError

INDICATOR = 'indicator'
CHARACTER = 'character'
TABULATED = 'tabulated'
OBSERVABLE_KINDS = (INDICATOR, CHARACTER, TABULATED)


def as_state(value):
    if isinstance(value, numbers.Integral):
        return (int(value),)
    return tuple(int(v) for v in value)


def as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise StructureError(
        "Observable values must be exact rationals, got {!r}".format(value))


class Observable(object):
    """
    Immutable observable. `bounded` asserts |f| <= 1 everywhere and is
    checked at construction for rational kinds.
    """
    __slots__ = ('kind', 'data', 'default', 'bounded', '_hash')

    def __init__(self, kind, data, default=0, bounded=True):
        if kind not in OBSERVABLE_KINDS:
            raise StructureError("Unknown observable kind {}".format(kind))
        self.kind = kind
        self.default = as_fraction(default)
        if kind == INDICATOR:
            self.data = frozenset(as_state(s) for s in data)
            self.default = Fraction(0)
        elif kind == CHARACTER:
            self.data = tuple(int(a) for a in data)
            if not self.data:
                raise StructureError("A character needs a frequency vector")
        else:
            self.data = tuple(sorted(
                (as_state(s), as_fraction(v)) for s, v in dict(data).items()))
        self.bounded = bounded
        if bounded and self.sup_norm() > 1:
            raise StructureError(
                "Observable flagged bounded has sup norm {}".format(
                    self.sup_norm()))
        self._hash = None

    @classmethod
    def indicator(cls, states):
        return cls(INDICATOR, states)

    @classmethod
    def character(cls, frequencies):
        return cls(CHARACTER, frequencies)

    @classmethod
    def tabulated(cls, mapping, default=0, bounded=True):
        return cls(TABULATED, mapping, default=default, bounded=bounded)

    @classmethod
    def constant(cls, value, bounded=True):
        return cls(TABULATED, {}, default=value, bounded=bounded)

    @classmethod
    def from_table(cls, states, values, bounded=True):
        return cls.tabulated(dict(zip(states, values)), bounded=bounded)

    @property
    def is_rational(self):
        return self.kind != CHARACTER

    def sup_norm(self):
        """Sup norm over the listed values and the default."""
        if self.kind == CHARACTER:
            return Fraction(1)
        if self.kind == INDICATOR:
            return Fraction(1) if self.data else Fraction(0)
        return max([abs(v) for _, v in self.data] + [abs(self.default)])

    def normalized(self):
        """(g, scale) with f = scale * g and sup|g| <= 1."""
        scale = self.sup_norm()
        if self.kind != TABULATED or scale in (0, 1):
            return self, Fraction(1)
        mapping = {s: v / scale for s, v in self.data}
        return (Observable.tabulated(mapping, default=self.default / scale),
                scale)

    def value_at(self, state):
        """Exact value at a finite state."""
        if self.kind == INDICATOR:
            return Fraction(1) if as_state(state) in self.data else Fraction(0)
        elif self.kind == TABULATED:
            return dict(self.data).get(as_state(state), self.default)
        raise StructureError("Characters have no exact value at a state")

    def character_values(self, points):
        if self.kind != CHARACTER:
            raise StructureError(
                "{} observables cannot be evaluated on a torus".format(
                    self.kind))
        points = np.atleast_2d(points)
        if points.shape[1] != len(self.data):
            raise StructureError(
                "Frequency {} does not match torus dimension {}".format(
                    self.data, points.shape[1]))
        return np.exp(2j * np.pi * points.dot(np.asarray(self.data)))

    def _key(self):
        return (self.kind, self.data, self.default, self.bounded)

    def __eq__(self, other):
        if not isinstance(other, Observable):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def to_json_dict(self):
        if self.kind == INDICATOR:
            return {'kind': INDICATOR, 'states': sorted(list(s) for s in self.data)}
        elif self.kind == CHARACTER:
            return {'kind': CHARACTER, 'frequencies': list(self.data)}
        return {
            'kind': TABULATED,
            'values': [[list(s), str(v)] for s, v in self.data],
            'default': str(self.default),
            'bounded': self.bounded,
        }

    @classmethod
    def from_json_dict(cls, data):
        kind = data.get('kind')
        if kind == INDICATOR:
            return cls.indicator(data['states'])
        elif kind == CHARACTER:
            return cls.character(data['frequencies'])
        elif kind == TABULATED:
            mapping = {as_state(s): v for s, v in data.get('values', [])}
            return cls.tabulated(mapping, default=data.get('default', 0),
                                 bounded=data.get('bounded', True))
        raise StructureError("Unknown observable kind {!r}".format(kind))

    def __repr__(self):
        return "Observable({})".format(self.to_json_dict())


def random_tabulated(rng, states, denominator=4):
    """Random bounded rational observable with values in (1/denominator)Z."""
    values = rng.integers(-denominator, denominator + 1, size=len(states))
    return Observable.tabulated(
        {s: Fraction(int(v), denominator) for s, v in zip(states, values)})
