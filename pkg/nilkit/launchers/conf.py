"""
Module-level settings for the experiment runner.
"""
import os
from os.path import join

import nilkit

# The directory of the project, not source
nilkit_project_dir = join(os.path.dirname(nilkit.__file__), os.pardir)
LOCAL_LOG_DIR = join(nilkit_project_dir, 'data')
# Overrides LOCAL_LOG_DIR when set
OUTPUT_DIR_ENV_VAR = 'NILKIT_OUTPUT_DIR'

CONFIG_SCHEMA_VERSION = 1

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 4096
DEFAULT_MAX_DEPTH = 6
DEFAULT_FORMAT = 'json'

"""
Battery sizes at scale 1.
"""
ALGEBRA_TRIALS = 1000
REDUCTION_TRIALS = 500
REARRANGE_TRIALS = 1000
AVERAGE_TRIALS = 200
ACTION_TRIALS = 1000
COUPLING_N_GRID = list(range(5, 101, 5))
