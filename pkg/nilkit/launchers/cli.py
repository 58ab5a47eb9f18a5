"""
Command line runner.

    nilkit complexity --config configs/n_2n.json
    nilkit average --config configs/torus_resonant.json --format csv --seed 3
    nilkit couple --config configs/couple_cyclic5.json --out /tmp/cyclic5
    nilkit verify --format csv

Exit codes: 0 success, 1 a theorem-level identity failed, 2 bad config or
closure refusal, 3 complexity search exceeded max_depth.
"""
import argparse
import sys

from nilkit.core import logger
from nilkit.core.exceptions import (
    ConfigError, InvariantViolation, StructureError, WindowClosureError,
)
from nilkit.core.experiment import EXCEEDED
from nilkit.launchers.config import (
    AVERAGE, COMPLEXITY, EXACT_MODE, SAMPLED_MODE, SUBCOMMANDS,
    ExperimentConfig,
)
from nilkit.launchers.experiments import make_experiment
from nilkit.launchers.launcher_util import run_experiment_here
from nilkit.launchers.reports import emit_report

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_EXCEEDED = 3

SUBCOMMAND_HELP = {
    'complexity': 'reduction search, emits the value and its trace',
    'average': 'metastability report for Lambda_N',
    'couple': 'empirical couplings and their invariance suite',
    'verify': 'property batteries',
}


def build_parser():
    parser = argparse.ArgumentParser(prog='nilkit')
    subparsers = parser.add_subparsers(dest='subcommand')
    subparsers.required = True
    for name in SUBCOMMANDS:
        sub = subparsers.add_parser(name, help=SUBCOMMAND_HELP[name])
        sub.add_argument('--config', type=str, default=None,
                         help='path to a JSON experiment config')
        sub.add_argument('--out', type=str, default=None,
                         help='output directory')
        sub.add_argument('--seed', type=int, default=None)
        sub.add_argument('--max-depth', type=int, default=None,
                         help='complexity search depth (complexity only)')
        mode = sub.add_mutually_exclusive_group()
        mode.add_argument('--exact', dest='mode', action='store_const',
                          const=EXACT_MODE, help='exact averages (average only)')
        mode.add_argument('--sampled', dest='mode', action='store_const',
                          const=SAMPLED_MODE,
                          help='Monte Carlo averages (average only)')
        sub.add_argument('--format', type=str, default=None,
                         help='report format: csv, json or svg')
        sub.add_argument('--quiet', action='store_true', default=False,
                         help='do not echo the log to stdout')
    return parser


def load_config(args):
    if args.max_depth is not None and args.subcommand != COMPLEXITY:
        raise ConfigError("--max-depth only applies to complexity")
    if args.mode is not None and args.subcommand != AVERAGE:
        raise ConfigError("--{} only applies to average".format(args.mode))
    if args.config is None:
        config = ExperimentConfig.default(args.subcommand)
    else:
        config = ExperimentConfig.load(args.config, subcommand=args.subcommand)
    return config.with_overrides({
        'output.dir': args.out,
        'output.format': args.format,
        'seed': args.seed,
        'max_depth': args.max_depth,
        'mode': args.mode,
    })


def run(config, quiet=False):
    """
    Run one experiment and write its reports.

    :return: the ExperimentResult
    :raises InvariantViolation: after the reports are written
    """
    def experiment_function(rng, log_dir):
        result = make_experiment(config, rng=rng).run()
        emit_report(result, config.report_format, log_dir)
        if result.violations:
            for violation in result.violations:
                logger.log("VIOLATION: {}".format(violation))
            raise InvariantViolation("{} identities failed, first: {}".format(
                len(result.violations), result.violations[0]))
        return result

    return run_experiment_here(
        experiment_function,
        variant=config.to_variant(),
        seed=config.seed,
        exp_prefix=config.name or config.subcommand,
        log_dir=config.output_dir,
        quiet=quiet,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        result = run(config, quiet=args.quiet)
    except InvariantViolation as e:
        print("nilkit: invariant violation: {}".format(e), file=sys.stderr)
        return EXIT_VIOLATION
    except WindowClosureError as e:
        print("nilkit: window closure: {}".format(e), file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, StructureError) as e:
        print("nilkit: {}".format(e), file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print("nilkit: cannot write output: {}".format(e), file=sys.stderr)
        return EXIT_CONFIG
    if result.status == EXCEEDED:
        print("nilkit: search exceeded max_depth", file=sys.stderr)
        return EXIT_EXCEEDED
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
