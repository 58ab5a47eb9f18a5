"""
Rewrite the stored outputs under tests/golden from the bundled configs.

    python scripts/update_golden.py

Review the diff before committing: a changed golden file is a changed result.
"""
import json
import os.path as osp
import shutil
import tempfile

from nilkit.launchers.cli import EXIT_OK, main

PROJECT_DIR = osp.join(osp.dirname(__file__), osp.pardir)
CONFIG_DIR = osp.join(PROJECT_DIR, 'configs')
GOLDEN_DIR = osp.join(PROJECT_DIR, 'tests', 'golden')

GOLDEN = [
    ('constant', 'json'),
    ('n', 'json'),
    ('n_2n', 'json'),
    ('average_cyclic5', 'csv'),
    ('couple_cyclic3', 'csv'),
    ('couple_cyclic5', 'csv'),
]


def update(config, report_format):
    path = osp.join(CONFIG_DIR, '{}.json'.format(config))
    with open(path) as f:
        subcommand = json.load(f)['subcommand']
    out = tempfile.mkdtemp()
    try:
        code = main([subcommand, '--config', path, '--out', out, '--quiet',
                     '--format', report_format])
        if code != EXIT_OK:
            raise RuntimeError("{} exited with {}".format(config, code))
        shutil.copyfile(
            osp.join(out, 'result.{}'.format(report_format)),
            osp.join(GOLDEN_DIR, '{}.{}'.format(config, report_format)))
    finally:
        shutil.rmtree(out)


if __name__ == "__main__":
    for config, report_format in GOLDEN:
        update(config, report_format)
        print("Updated {}.{}".format(config, report_format))
