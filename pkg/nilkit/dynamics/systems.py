from nilkit.core.exceptions import ConfigError
from nilkit.dynamics.base import (
    FINITE_CYCLIC, FINITE_HEISENBERG, FINITE_UNITRIANGULAR, TORUS,
    SYSTEM_KINDS,
)
from nilkit.dynamics.finite import (
    CyclicProductSystem, HeisenbergSystem, UnitriangularSystem,
)
from nilkit.dynamics.torus import TorusSystem

SYSTEM_FIELDS = {
    FINITE_CYCLIC: ('moduli',),
    FINITE_UNITRIANGULAR: ('dim', 'modulus'),
    FINITE_HEISENBERG: ('modulus',),
    TORUS: ('rotation',),
}


def make_system(spec):
    """
    spec examples:
        {'kind': 'finite_cyclic', 'moduli': [5]}
        {'kind': 'finite_heisenberg', 'modulus': 3}
        {'kind': 'finite_unitriangular', 'dim': 4, 'modulus': 2}
        {'kind': 'torus', 'rotation': [0.41421356237309515]}
    """
    spec = dict(spec)
    kind = spec.pop('kind', None)
    if kind not in SYSTEM_KINDS:
        raise ConfigError(
            "System kind must be one of {}, got {!r}".format(
                SYSTEM_KINDS, kind))
    unknown = set(spec) - set(SYSTEM_FIELDS[kind])
    missing = set(SYSTEM_FIELDS[kind]) - set(spec)
    if unknown:
        raise ConfigError(
            "Unknown fields for {}: {}".format(kind, sorted(unknown)))
    if missing:
        raise ConfigError(
            "Missing fields for {}: {}".format(kind, sorted(missing)))
    if kind == FINITE_CYCLIC:
        moduli = spec['moduli']
        if isinstance(moduli, int):
            moduli = [moduli]
        return CyclicProductSystem(moduli)
    elif kind == FINITE_UNITRIANGULAR:
        return UnitriangularSystem(spec['dim'], spec['modulus'])
    elif kind == FINITE_HEISENBERG:
        return HeisenbergSystem(spec['modulus'])
    return TorusSystem(spec['rotation'])
