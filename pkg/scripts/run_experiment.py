"""
Run one bundled config, e.g.

    python scripts/run_experiment.py couple configs/couple_cyclic5.json --seed 1

Extra arguments are passed through to the command line runner.
"""
import argparse
import sys

from nilkit.launchers.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument('subcommand', type=str,
                        help='complexity, average, couple or verify')
    parser.add_argument('config', type=str, help='path to the config file')
    args, rest = parser.parse_known_args()
    sys.exit(main([args.subcommand, '--config', args.config] + rest))
