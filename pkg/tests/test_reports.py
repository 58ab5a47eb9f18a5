import json
from collections import OrderedDict
from fractions import Fraction

import pytest

from nilkit.core.exceptions import ConfigError
from nilkit.core.experiment import (
    EXCEEDED, OK, VIOLATION, ExperimentResult, FigureSpec,
)
from nilkit.launchers.reports import emit_report, write_csv, write_svg

COLUMNS = ['N', 'value', 'exact', 'note']
ROWS = [
    OrderedDict([('N', 5), ('value', 0.1), ('exact', True),
                 ('note', Fraction(1, 3))]),
    OrderedDict([('N', 10), ('value', 1e-17), ('exact', False),
                 ('note', None)]),
]
FIGURE = FigureSpec('sup deviation', 'N', 'deviation',
                    [('dev', [5, 10], [0.1, 0.05])])


def make_result(**kwargs):
    kwargs.setdefault('rows', ROWS)
    kwargs.setdefault('columns', COLUMNS)
    kwargs.setdefault('figure', FIGURE)
    return ExperimentResult('test', OrderedDict([('value', 3)]), **kwargs)


def test_csv_values(tmp_path):
    path = write_csv(ROWS, COLUMNS, str(tmp_path / 'rows.csv'))
    with open(path) as f:
        lines = f.read().splitlines()
    assert lines == [
        'N,value,exact,note',
        '5,0.1,true,1/3',
        '10,1e-17,false,',
    ]


def test_empty_csv_is_header_only(tmp_path):
    path = write_csv([], COLUMNS, str(tmp_path / 'rows.csv'))
    with open(path) as f:
        assert f.read() == 'N,value,exact,note\n'


def test_svg_is_deterministic(tmp_path):
    first = write_svg(FIGURE, str(tmp_path / 'a.svg'))
    second = write_svg(FIGURE, str(tmp_path / 'b.svg'))
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()


def test_missing_report_kinds(tmp_path):
    with pytest.raises(ConfigError):
        write_csv(ROWS, None, str(tmp_path / 'x.csv'))
    with pytest.raises(ConfigError):
        write_svg(None, str(tmp_path / 'x.svg'))
    with pytest.raises(ConfigError):
        emit_report(make_result(), 'xml', str(tmp_path))


def test_emit_json_with_artifacts(tmp_path):
    result = make_result(
        artifacts=OrderedDict([('trace.json', {'steps': []})]))
    written = emit_report(result, 'json', str(tmp_path / 'out'))
    assert [p.split('/')[-1] for p in written] == ['result.json', 'trace.json']
    with open(written[0]) as f:
        data = json.load(f)
    assert data == {'value': 3, 'status': OK, 'violations': []}


def test_violations_set_the_status(tmp_path):
    result = make_result(violations=['pairing differs at N = 5'])
    assert result.status == VIOLATION
    written = emit_report(result, 'json', str(tmp_path))
    with open(written[0]) as f:
        assert json.load(f)['violations'] == ['pairing differs at N = 5']
    assert make_result(status=EXCEEDED).status == EXCEEDED
    with pytest.raises(ValueError):
        make_result(status='unknown')
