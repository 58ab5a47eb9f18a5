"""
Experiment configs: versioned JSON documents.

    {
        "schema": 1,
        "subcommand": "average",
        "group": {"kind": "first_row", "rank": 1},
        "system": [["n"], ["2*n"]],
        "dynamics": {"kind": "torus", "rotation": [0.41421356237309515]},
        "observables": [{"kind": "character", "frequencies": [2]},
                        {"kind": "character", "frequencies": [-1]}],
        "n_grid": [10, 20, 40]
    }

System entries are written in the coordinates of the group: a list of rank
polynomials for first_row (a bare string when rank is 1), [a, b, c] for
heisenberg, the full matrix for unitriangular.

Unknown fields are rejected at every level. `to_variant` returns the fully
defaulted canonical dict, and parsing it again gives the same variant.
"""
import copy
import json
import numbers

from nilkit.algebra.gsystem import GSystem
from nilkit.algebra.groups import make_group_spec, UNITRIANGULAR
from nilkit.algebra.nilseq import SEQUENCE_VAR, parse_nilseq
from nilkit.core.exceptions import ConfigError, StructureError
from nilkit.dynamics.observables import (
    CHARACTER, INDICATOR, TABULATED, Observable,
)
from nilkit.dynamics.systems import SYSTEM_FIELDS, make_system
from nilkit.dynamics.base import FINITE_CYCLIC, TORUS
from nilkit.launchers import conf
from nilkit.launchers.batteries import BATTERY_NAMES
import nilkit.pythonplusplus as ppp

COMPLEXITY = 'complexity'
AVERAGE = 'average'
COUPLE = 'couple'
VERIFY = 'verify'
SUBCOMMANDS = (COMPLEXITY, AVERAGE, COUPLE, VERIFY)

EXACT_MODE = 'exact'
SAMPLED_MODE = 'sampled'
MODES = (EXACT_MODE, SAMPLED_MODE)

CESARO_LAST = 'cesaro'
INVARIANT_MU = 'invariant'
SKEWED_MU = 'skewed'

REPORT_FORMATS = {
    COMPLEXITY: ('json',),
    AVERAGE: ('csv', 'json', 'svg'),
    COUPLE: ('csv', 'json', 'svg'),
    VERIFY: ('csv', 'json'),
}

COMMON_DEFAULTS = {
    'name': None,
    'seed': conf.DEFAULT_SEED,
    'output': {'dir': None, 'format': conf.DEFAULT_FORMAT},
}
SUBCOMMAND_DEFAULTS = {
    COMPLEXITY: {
        'group': None,
        'system': None,
        'max_depth': conf.DEFAULT_MAX_DEPTH,
        'search': {'allow_initial_reorder': True, 'prune_dominated': False},
    },
    AVERAGE: {
        'group': None,
        'system': None,
        'dynamics': None,
        'observables': None,
        'n_grid': [10, 20, 40, 80],
        'L': 2.0,
        'eps': 0.05,
        'samples': conf.DEFAULT_SAMPLES,
        'mode': None,
        'oracle': True,
    },
    COUPLE: {
        'group': None,
        'system': None,
        'dynamics': None,
        'observables': None,
        'last': CESARO_LAST,
        'n_grid': [5, 10, 15, 20],
        'n_max': 2,
        'window': {'n_range': None, 'extra': [], 'elements': None,
                   'chain': True},
        'translations': None,
        'mu': INVARIANT_MU,
        'dump': False,
    },
    VERIFY: {
        'batteries': list(BATTERY_NAMES),
        'scale': 1.0,
    },
}
REQUIRED = {
    COMPLEXITY: ('group', 'system'),
    AVERAGE: ('group', 'system', 'dynamics', 'observables'),
    COUPLE: ('group', 'system', 'dynamics', 'observables'),
    VERIFY: (),
}
OBSERVABLE_FIELDS = {
    INDICATOR: ('kind', 'states'),
    CHARACTER: ('kind', 'frequencies'),
    TABULATED: ('kind', 'values', 'default', 'bounded'),
}


def _check_fields(data, allowed, where):
    if not isinstance(data, dict):
        raise ConfigError("{} must be an object, got {!r}".format(where, data))
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError("Unknown fields in {}: {}".format(where, unknown))


def _as_int(value, where, minimum=None):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise ConfigError("{} must be an integer, got {!r}".format(where, value))
    value = int(value)
    if minimum is not None and value < minimum:
        raise ConfigError("{} must be at least {}, got {}".format(
            where, minimum, value))
    return value


def _as_float(value, where):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise ConfigError("{} must be a number, got {!r}".format(where, value))
    return float(value)


def _as_bool(value, where):
    if not isinstance(value, bool):
        raise ConfigError("{} must be true or false, got {!r}".format(
            where, value))
    return value


def _with_defaults(data, defaults, where):
    _check_fields(data, defaults, where)
    out = copy.deepcopy(defaults)
    for key, value in data.items():
        if isinstance(defaults[key], dict):
            out[key] = _with_defaults(value, defaults[key],
                                      '{}.{}'.format(where, key))
        else:
            out[key] = value
    return out


"""
Field normalizers. Each returns the canonical JSON value.
"""


def _normalize_group(data):
    _check_fields(data, ('kind', 'rank'), 'group')
    try:
        spec = make_group_spec(data.get('kind'), data.get('rank'))
    except StructureError as e:
        raise ConfigError("group: {}".format(e))
    return {'kind': spec.kind, 'rank': spec.rank}


def _group_spec(group):
    return make_group_spec(group['kind'], group['rank'])


def _build_entry(spec, coords, where, level=0):
    if spec.kind != UNITRIANGULAR and isinstance(coords, (str, int)):
        coords = [coords]
    if not isinstance(coords, list):
        raise ConfigError("{} must be a list, got {!r}".format(where, coords))
    try:
        return spec.build(coords, level=level)
    except StructureError as e:
        raise ConfigError("{}: {}".format(where, e))


def _normalize_system(data, spec):
    if not isinstance(data, list) or not data:
        raise ConfigError("system must be a nonempty list of entries")
    entries = [_build_entry(spec, coords, 'system[{}]'.format(i))
               for i, coords in enumerate(data)]
    return [spec.coordinates(p) for p in entries]


def _normalize_dynamics(data, spec):
    if not isinstance(data, dict):
        raise ConfigError("dynamics must be an object")
    kind = data.get('kind')
    if kind not in SYSTEM_FIELDS:
        raise ConfigError("dynamics.kind must be one of {}, got {!r}".format(
            sorted(SYSTEM_FIELDS), kind))
    _check_fields(data, ('kind',) + SYSTEM_FIELDS[kind], 'dynamics')
    out = {'kind': kind}
    for field in SYSTEM_FIELDS[kind]:
        if field not in data:
            raise ConfigError("dynamics.{} is required".format(field))
        value = data[field]
        if kind == TORUS:
            if not isinstance(value, list):
                raise ConfigError("dynamics.rotation must be a list")
            value = [_as_float(a, 'dynamics.rotation') for a in value]
        elif kind == FINITE_CYCLIC:
            if not isinstance(value, list):
                value = [value]
            value = [_as_int(q, 'dynamics.moduli') for q in value]
        else:
            value = _as_int(value, 'dynamics.{}'.format(field))
        out[field] = value
    sys = make_system(out)
    if sys.group_dim != spec.dim:
        raise ConfigError(
            "dynamics {} is acted on by {}x{} matrices but the group has "
            "dimension {}".format(kind, sys.group_dim, sys.group_dim,
                                  spec.dim))
    return out


def _normalize_observable(data, where):
    if not isinstance(data, dict):
        raise ConfigError("{} must be an object".format(where))
    kind = data.get('kind')
    if kind not in OBSERVABLE_FIELDS:
        raise ConfigError("{}.kind must be one of {}, got {!r}".format(
            where, sorted(OBSERVABLE_FIELDS), kind))
    _check_fields(data, OBSERVABLE_FIELDS[kind], where)
    try:
        return Observable.from_json_dict(data).to_json_dict()
    except (StructureError, ValueError, TypeError, ZeroDivisionError) as e:
        raise ConfigError("{}: {}".format(where, e))


def _normalize_observables(data, k):
    if not isinstance(data, list):
        raise ConfigError("observables must be a list")
    if len(data) != k:
        raise ConfigError("{} observables for a system of {} entries".format(
            len(data), k))
    return [_normalize_observable(f, 'observables[{}]'.format(i))
            for i, f in enumerate(data)]


def _check_observable_kinds(dynamics, observables):
    torus = dynamics['kind'] == TORUS
    for i, f in enumerate(observables):
        if torus != (f['kind'] == CHARACTER):
            raise ConfigError(
                "observables[{}]: {} systems take {} observables".format(
                    i, dynamics['kind'],
                    'character' if torus else 'indicator or tabulated'))


def _normalize_n_grid(data):
    if not isinstance(data, list):
        raise ConfigError("n_grid must be a list")
    grid = [_as_int(N, 'n_grid', minimum=1) for N in data]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("n_grid must be increasing, got {}".format(grid))
    return grid


def _normalize_window_elements(data, where, dim):
    if not isinstance(data, list):
        raise ConfigError("{} must be a list of matrices".format(where))
    out = []
    for rows in data:
        try:
            element = parse_nilseq(rows, level=1)
        except (StructureError, TypeError, ValueError) as e:
            raise ConfigError("{}: {}".format(where, e))
        if element.dim != dim or not element.is_independent_of(SEQUENCE_VAR):
            raise ConfigError(
                "{}: {} is not a {}x{} element of G^Z in m1".format(
                    where, rows, dim, dim))
        out.append(element.to_list())
    return out


def _normalize_window(data, dim):
    n_range = data['n_range']
    if n_range is not None:
        if not isinstance(n_range, list) or len(n_range) != 2:
            raise ConfigError("window.n_range must be [first, last]")
        n_range = [_as_int(n, 'window.n_range') for n in n_range]
        if n_range[1] < n_range[0]:
            raise ConfigError("window.n_range is empty: {}".format(n_range))
    elements = data['elements']
    if elements is not None:
        elements = _normalize_window_elements(elements, 'window.elements', dim)
        if not elements:
            raise ConfigError("window.elements must not be empty")
    return {
        'n_range': n_range,
        'extra': _normalize_window_elements(data['extra'], 'window.extra', dim),
        'elements': elements,
        'chain': _as_bool(data['chain'], 'window.chain'),
    }


def _normalize_translations(data, spec):
    if data is None:
        return None
    if not isinstance(data, list):
        raise ConfigError("translations must be a list of group elements")
    out = []
    for i, coords in enumerate(data):
        where = 'translations[{}]'.format(i)
        g = _build_entry(spec, coords, where)
        if not g.is_independent_of(SEQUENCE_VAR):
            raise ConfigError("{} must be a constant group element".format(
                where))
        out.append(spec.coordinates(g))
    return out


def _normalize_output(data, subcommand):
    fmt = data['format']
    if fmt not in REPORT_FORMATS[subcommand]:
        raise ConfigError("{} reports are written as {}, not {!r}".format(
            subcommand, '/'.join(REPORT_FORMATS[subcommand]), fmt))
    out_dir = data['dir']
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError("output.dir must be a path")
    return {'dir': out_dir, 'format': fmt}


def normalize_variant(data, subcommand=None):
    """The canonical, fully defaulted form of a raw config dict."""
    if not isinstance(data, dict):
        raise ConfigError("A config must be a JSON object")
    data = dict(data)
    schema = data.pop('schema', None)
    if schema != conf.CONFIG_SCHEMA_VERSION:
        raise ConfigError("Unsupported config schema {!r}, expected {}".format(
            schema, conf.CONFIG_SCHEMA_VERSION))
    declared = data.pop('subcommand', None)
    if subcommand is None:
        subcommand = declared
    elif declared is not None and declared != subcommand:
        raise ConfigError("Config is for {!r}, not {!r}".format(
            declared, subcommand))
    if subcommand not in SUBCOMMANDS:
        raise ConfigError("subcommand must be one of {}, got {!r}".format(
            SUBCOMMANDS, subcommand))

    defaults = dict(COMMON_DEFAULTS, **SUBCOMMAND_DEFAULTS[subcommand])
    v = _with_defaults(data, defaults, 'config')
    for field in REQUIRED[subcommand]:
        if v[field] is None:
            raise ConfigError("{} configs need a {!r} field".format(
                subcommand, field))

    v['schema'] = conf.CONFIG_SCHEMA_VERSION
    v['subcommand'] = subcommand
    if v['name'] is None:
        v['name'] = subcommand
    elif not isinstance(v['name'], str):
        raise ConfigError("name must be a string")
    v['seed'] = _as_int(v['seed'], 'seed', minimum=0)
    v['output'] = _normalize_output(v['output'], subcommand)

    if subcommand == VERIFY:
        batteries = v['batteries']
        if not isinstance(batteries, list):
            raise ConfigError("batteries must be a list")
        unknown = [b for b in batteries if b not in BATTERY_NAMES]
        if unknown:
            raise ConfigError("Unknown batteries {}; choose from {}".format(
                unknown, list(BATTERY_NAMES)))
        v['batteries'] = [b for b in BATTERY_NAMES if b in batteries]
        v['scale'] = _as_float(v['scale'], 'scale')
        if v['scale'] <= 0:
            raise ConfigError("scale must be positive")
        return v

    v['group'] = _normalize_group(v['group'])
    spec = _group_spec(v['group'])
    v['system'] = _normalize_system(v['system'], spec)
    k = len(v['system'])

    if subcommand == COMPLEXITY:
        v['max_depth'] = _as_int(v['max_depth'], 'max_depth', minimum=0)
        for flag in ('allow_initial_reorder', 'prune_dominated'):
            v['search'][flag] = _as_bool(v['search'][flag],
                                         'search.{}'.format(flag))
        return v

    v['dynamics'] = _normalize_dynamics(v['dynamics'], spec)
    v['observables'] = _normalize_observables(v['observables'], k)
    _check_observable_kinds(v['dynamics'], v['observables'])
    v['n_grid'] = _normalize_n_grid(v['n_grid'])

    if subcommand == AVERAGE:
        v['L'] = _as_float(v['L'], 'L')
        if v['L'] <= 1:
            raise ConfigError("L must exceed 1, got {}".format(v['L']))
        v['eps'] = _as_float(v['eps'], 'eps')
        v['samples'] = _as_int(v['samples'], 'samples', minimum=2)
        if v['mode'] is not None and v['mode'] not in MODES:
            raise ConfigError("mode must be one of {}, got {!r}".format(
                MODES, v['mode']))
        v['oracle'] = _as_bool(v['oracle'], 'oracle')
        return v

    if v['dynamics']['kind'] == TORUS:
        raise ConfigError("Couplings are built on finite systems")
    if v['last'] != CESARO_LAST:
        v['last'] = _normalize_observable(v['last'], 'last')
    v['n_max'] = _as_int(v['n_max'], 'n_max', minimum=1)
    v['window'] = _normalize_window(v['window'], spec.dim)
    v['translations'] = _normalize_translations(v['translations'], spec)
    if v['mu'] not in (INVARIANT_MU, SKEWED_MU):
        raise ConfigError("mu must be {!r} or {!r}, got {!r}".format(
            INVARIANT_MU, SKEWED_MU, v['mu']))
    v['dump'] = _as_bool(v['dump'], 'dump')
    return v


class ExperimentConfig(object):
    def __init__(self, variant):
        self._variant = normalize_variant(variant)

    @classmethod
    def from_dict(cls, data, subcommand=None):
        return cls(normalize_variant(data, subcommand=subcommand))

    @classmethod
    def loads(cls, text, subcommand=None):
        try:
            data = json.loads(text)
        except ValueError as e:
            raise ConfigError("Config is not valid JSON: {}".format(e))
        return cls.from_dict(data, subcommand=subcommand)

    @classmethod
    def load(cls, path, subcommand=None):
        try:
            with open(path) as f:
                text = f.read()
        except OSError as e:
            raise ConfigError("Cannot read config {}: {}".format(path, e))
        return cls.loads(text, subcommand=subcommand)

    @classmethod
    def default(cls, subcommand):
        return cls.from_dict({'schema': conf.CONFIG_SCHEMA_VERSION},
                             subcommand=subcommand)

    def to_variant(self):
        return copy.deepcopy(self._variant)

    def dumps(self):
        return json.dumps(self._variant, indent=2, sort_keys=True)

    def with_overrides(self, overrides):
        """
        A new config with dot-map overrides applied, e.g.
        {'seed': 3, 'output.format': 'csv'}. None values are skipped.
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if not overrides:
            return self
        variant = ppp.merge_recursive_dicts(
            self.to_variant(), ppp.dot_map_dict_to_nested_dict(overrides),
            overwrite=True)
        return ExperimentConfig(variant)

    def __getitem__(self, key):
        return self._variant[key]

    def __eq__(self, other):
        if not isinstance(other, ExperimentConfig):
            return NotImplemented
        return self._variant == other._variant

    def __ne__(self, other):
        return not self == other

    @property
    def subcommand(self):
        return self._variant['subcommand']

    @property
    def name(self):
        return self._variant['name']

    @property
    def seed(self):
        return self._variant['seed']

    @property
    def output_dir(self):
        return self._variant['output']['dir']

    @property
    def report_format(self):
        return self._variant['output']['format']

    """
    Parsed objects
    """

    @property
    def group_spec(self):
        return _group_spec(self._variant['group'])

    def gsystem(self):
        spec = self.group_spec
        return GSystem(spec.build(coords) for coords in self._variant['system'])

    def make_system(self):
        return make_system(self._variant['dynamics'])

    def observables(self):
        return [Observable.from_json_dict(f)
                for f in self._variant['observables']]

    def last_observable(self):
        """None means A_N = Lambda_N(f_1, ..., f_k), rebuilt for every N."""
        last = self._variant['last']
        if last == CESARO_LAST:
            return None
        return Observable.from_json_dict(last)

    def translations(self):
        spec = self.group_spec
        coords = self._variant['translations']
        if coords is None:
            return spec.generators()
        return [spec.build(c) for c in coords]

    def window_elements(self, key):
        rows = self._variant['window'][key]
        if rows is None:
            return None
        return [parse_nilseq(r, level=1) for r in rows]


__all__ = ['ExperimentConfig', 'normalize_variant', 'SUBCOMMANDS',
           'REPORT_FORMATS']
