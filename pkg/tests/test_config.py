import json
from pathlib import Path

import pytest

from nilkit.algebra.groups import first_row
from nilkit.algebra.gsystem import GSystem
from nilkit.core.exceptions import ConfigError
from nilkit.launchers.config import ExperimentConfig, normalize_variant

CONFIG_DIR = Path(__file__).parent.parent / 'configs'
BUNDLED = sorted(CONFIG_DIR.glob('*.json'))

N_2N = {
    'schema': 1,
    'subcommand': 'complexity',
    'group': {'kind': 'first_row', 'rank': 1},
    'system': ['n', '2*n'],
}
TORUS_AVERAGE = {
    'schema': 1,
    'subcommand': 'average',
    'group': {'kind': 'first_row', 'rank': 1},
    'system': ['n', '2*n'],
    'dynamics': {'kind': 'torus', 'rotation': [0.5]},
    'observables': [{'kind': 'character', 'frequencies': [2]},
                    {'kind': 'character', 'frequencies': [-1]}],
}
CYCLIC_COUPLE = {
    'schema': 1,
    'subcommand': 'couple',
    'group': {'kind': 'first_row', 'rank': 1},
    'system': ['n', '2*n'],
    'dynamics': {'kind': 'finite_cyclic', 'moduli': [5]},
    'observables': [{'kind': 'indicator', 'states': [[0]]},
                    {'kind': 'indicator', 'states': [[1]]}],
}


def changed(base, **fields):
    out = dict(base)
    out.update(fields)
    return out


@pytest.mark.parametrize('path', BUNDLED, ids=lambda p: p.stem)
def test_bundled_configs(path):
    config = ExperimentConfig.load(str(path))
    variant = config.to_variant()
    assert normalize_variant(variant) == variant
    assert json.loads(config.dumps()) == variant
    assert config.name == path.stem


def test_bundled_configs_exist():
    assert len(BUNDLED) >= 10


def test_defaults():
    config = ExperimentConfig.from_dict(N_2N)
    assert config.name == 'complexity'
    assert config.seed == 0
    assert config.report_format == 'json'
    assert config['max_depth'] == 6
    assert config['system'] == [['n'], ['2*n']]
    assert config.gsystem() == GSystem([first_row('n'), first_row('2*n')])
    verify = ExperimentConfig.default('verify')
    assert verify['scale'] == 1.0
    with pytest.raises(ConfigError):
        ExperimentConfig.default('complexity')


def test_couple_objects():
    config = ExperimentConfig.from_dict(CYCLIC_COUPLE)
    assert config.last_observable() is None
    assert config.translations() == [first_row(1)]
    assert config.window_elements('elements') is None
    assert config.make_system().size == 5


@pytest.mark.parametrize('data', [
    changed(N_2N, colour='red'),
    changed(N_2N, output={'format': 'json', 'colour': 'red'}),
    changed(N_2N, search={'prune': True}),
    changed(N_2N, schema=2),
    changed(N_2N, subcommand='transmogrify'),
    changed(N_2N, group={'kind': 'free_group', 'rank': 2}),
    changed(N_2N, system=['n/2']),
    changed(N_2N, system=[]),
    changed(N_2N, max_depth=-1),
    changed(N_2N, max_depth=True),
    changed(N_2N, output={'format': 'svg'}),
    changed(TORUS_AVERAGE, dynamics={'kind': 'torus', 'rotation': [0.5],
                                     'moduli': [3]}),
    changed(TORUS_AVERAGE, observables=[{'kind': 'indicator', 'states': [[0]]},
                                        {'kind': 'indicator', 'states': [[0]]}]),
    changed(TORUS_AVERAGE, observables=[{'kind': 'character',
                                         'frequencies': [1]}]),
    changed(TORUS_AVERAGE, n_grid=[10, 10]),
    changed(TORUS_AVERAGE, L=1.0),
    changed(TORUS_AVERAGE, mode='approximate'),
    changed(TORUS_AVERAGE, dynamics={'kind': 'finite_heisenberg',
                                     'modulus': 3}),
    changed(CYCLIC_COUPLE, dynamics={'kind': 'torus', 'rotation': [0.5]},
            observables=TORUS_AVERAGE['observables']),
    changed(CYCLIC_COUPLE, mu='uniform'),
    changed(CYCLIC_COUPLE, window={'n_range': [3, 1]}),
    changed(CYCLIC_COUPLE, window={'elements': []}),
    changed(CYCLIC_COUPLE, translations=[['n']]),
    {'schema': 1, 'subcommand': 'verify', 'batteries': ['astrology']},
    {'schema': 1, 'subcommand': 'verify', 'scale': 0},
    [1, 2, 3],
])
def test_rejected(data):
    with pytest.raises(ConfigError):
        normalize_variant(data)


def test_subcommand_mismatch():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(N_2N, subcommand='average')
    assert ExperimentConfig.from_dict(
        dict(N_2N, subcommand=None), subcommand='complexity').subcommand == \
        'complexity'


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.load(str(tmp_path / 'missing.json'))
    broken = tmp_path / 'broken.json'
    broken.write_text('{"schema": 1,')
    with pytest.raises(ConfigError):
        ExperimentConfig.load(str(broken))


class TestOverrides(object):
    def test_dot_map_overrides(self):
        config = ExperimentConfig.from_dict(TORUS_AVERAGE)
        updated = config.with_overrides({
            'seed': 7, 'output.format': 'csv', 'mode': None,
        })
        assert updated.seed == 7
        assert updated.report_format == 'csv'
        assert updated['mode'] is None
        assert config.seed == 0

    def test_no_overrides(self):
        config = ExperimentConfig.from_dict(N_2N)
        assert config.with_overrides({'seed': None}) is config

    def test_overrides_are_validated(self):
        config = ExperimentConfig.from_dict(N_2N)
        with pytest.raises(ConfigError):
            config.with_overrides({'output.format': 'svg'})
        with pytest.raises(ConfigError):
            config.with_overrides({'mode': 'exact'})
