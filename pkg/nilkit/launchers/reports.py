"""
Report files for an ExperimentResult. Output bytes depend only on the
result: JSON keys are sorted, CSV floats are written with repr and SVGs
carry a fixed hash salt and no date.
"""
import csv
import json
import os
import os.path as osp
from fractions import Fraction

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from nilkit.core import logger
from nilkit.core.exceptions import ConfigError
from nilkit.core.logging import MyEncoder, mkdir_p

SVG_HASH_SALT = 'nilkit'
REPORT_BASENAME = 'result'


def _csv_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def write_json(data, path):
    with open(path, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True, cls=MyEncoder)
        f.write('\n')
    return path


def write_csv(rows, columns, path):
    """An empty row list still gives the header line."""
    if columns is None:
        raise ConfigError("This experiment has no tabular report")
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=list(columns),
                                lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_value(row[k]) for k in columns})
    return path


def write_svg(figure, path):
    if figure is None:
        raise ConfigError("This experiment has no chart")
    matplotlib.rcParams['svg.hashsalt'] = SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, xs, ys in figure.series:
        ax.plot(list(xs), list(ys), marker='o', label=label)
    ax.set_xlabel(figure.xlabel)
    ax.set_ylabel(figure.ylabel)
    if figure.title:
        ax.set_title(figure.title)
    if figure.series:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    return path


def emit_report(result, report_format, out_dir):
    """
    Write the report in `report_format` plus the result's artifacts.

    :return: the written paths, report first
    """
    try:
        mkdir_p(out_dir)
    except OSError as e:
        raise ConfigError("Cannot create output directory {}: {}".format(
            out_dir, e))
    path = osp.join(out_dir, "{}.{}".format(REPORT_BASENAME, report_format))
    if report_format == 'json':
        data = dict(result.summary)
        data['status'] = result.status
        data['violations'] = result.violations
        written = [write_json(data, path)]
    elif report_format == 'csv':
        written = [write_csv(result.rows, result.columns, path)]
    elif report_format == 'svg':
        written = [write_svg(result.figure, path)]
    else:
        raise ConfigError("Unknown report format: {}".format(report_format))
    for file_name, data in result.artifacts.items():
        written.append(write_json(data, osp.join(out_dir, file_name)))
    for p in written:
        logger.log("Wrote {}".format(os.path.relpath(p, out_dir)))
    return written
