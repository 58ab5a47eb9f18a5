import datetime
import json
import os
import os.path as osp
import random

import dateutil.tz
import numpy as np

from nilkit.core import logger
from nilkit.launchers import conf
import nilkit.pythonplusplus as ppp


def create_exp_name(exp_prefix, exp_id=0, seed=0):
    """
    Create a semi-unique experiment name that has a timestamp
    :param exp_prefix:
    :param exp_id:
    :return:
    """
    now = datetime.datetime.now(dateutil.tz.tzlocal())
    timestamp = now.strftime('%Y_%m_%d_%H_%M_%S')
    return "%s_%s_%04d--s-%d" % (exp_prefix, timestamp, exp_id, seed)


def get_base_log_dir():
    return os.environ.get(conf.OUTPUT_DIR_ENV_VAR) or conf.LOCAL_LOG_DIR


def create_log_dir(
        exp_prefix,
        exp_id=0,
        seed=0,
        base_log_dir=None,
        include_exp_prefix_sub_dir=True,
):
    """
    Creates and returns a unique log directory.

    :param exp_prefix: All experiments with this prefix will have log
    directories be under this directory.
    :param exp_id: The number of the specific experiment run within this
    experiment.
    :param base_log_dir: The directory where all log should be saved.
    :return:
    """
    exp_name = create_exp_name(exp_prefix, exp_id=exp_id,
                               seed=seed)
    if base_log_dir is None:
        base_log_dir = get_base_log_dir()
    if include_exp_prefix_sub_dir:
        log_dir = osp.join(base_log_dir, exp_prefix.replace("_", "-"), exp_name)
    else:
        log_dir = osp.join(base_log_dir, exp_name)
    if osp.exists(log_dir):
        logger.log("WARNING: Log directory already exists {}".format(log_dir))
    os.makedirs(log_dir, exist_ok=True)
    return log_dir


def setup_logger(
        exp_prefix="default",
        variant=None,
        text_log_file="debug.log",
        variant_log_file="variant.json",
        tabular_log_file="progress.csv",
        log_tabular_only=False,
        log_dir=None,
        quiet=False,
        **create_log_dir_kwargs
):
    """
    Set up logger to have some reasonable default settings.

    Will save log output to

        base_log_dir/exp_prefix/exp_name.

    exp_name will be auto-generated to be unique. If log_dir is specified,
    then that directory is used as the output dir and is also where the
    reports are written.

    :return: the log directory
    """
    if log_dir is None:
        log_dir = create_log_dir(exp_prefix, **create_log_dir_kwargs)
    else:
        os.makedirs(log_dir, exist_ok=True)
    logger.set_quiet(quiet)

    tabular_log_path = osp.join(log_dir, tabular_log_file)
    text_log_path = osp.join(log_dir, text_log_file)
    logger.add_text_output(text_log_path)
    logger.add_tabular_output(tabular_log_path)

    if variant is not None:
        logger.log("Variant:")
        logger.log(json.dumps(ppp.dict_to_safe_json(variant), indent=2,
                              sort_keys=True))
        variant_log_path = osp.join(log_dir, variant_log_file)
        logger.log_variant(variant_log_path, variant)

    logger.set_log_tabular_only(log_tabular_only)
    exp_name = osp.basename(osp.normpath(log_dir))
    logger.push_prefix("[%s] " % exp_name)
    return log_dir


def set_seed(seed):
    """
    Set the seed for all the possible random number generators.

    :param seed:
    :return: a numpy Generator seeded the same way
    """
    seed = int(seed)
    random.seed(seed)
    np.random.seed(seed % 2 ** 32)
    return np.random.default_rng(seed)


def reset_execution_environment():
    """
    Call this between calls to separate experiments.
    :return:
    """
    logger.reset()


def run_experiment_here(
        experiment_function,
        variant=None,
        exp_id=0,
        seed=0,
        exp_prefix="default",
        base_log_dir=None,
        log_dir=None,
        **setup_logger_kwargs
):
    """
    Run an experiment locally without any serialization.

    :param experiment_function: Function called as
    `experiment_function(rng, log_dir)`.
    :param exp_prefix: Experiment prefix for the log directory.
    :param variant: Dictionary written to variant.json.
    :param seed: Seed used for this experiment.
    :param log_dir: If set, set the log directory to this. Otherwise,
    the directory will be auto-generated based on the exp_prefix.
    :return: whatever experiment_function returns
    """
    reset_execution_environment()
    actual_log_dir = setup_logger(
        exp_prefix=exp_prefix,
        variant=variant,
        exp_id=exp_id,
        seed=seed,
        base_log_dir=base_log_dir,
        log_dir=log_dir,
        **setup_logger_kwargs
    )
    rng = set_seed(seed)
    try:
        return experiment_function(rng, actual_log_dir)
    finally:
        reset_execution_environment()
