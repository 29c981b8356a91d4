"""File formats, experiment drivers and the command line."""

from .experiments import (ExperimentConfig, FamilySpec, ResultRow, calibrate_constants,
                          derive_seed, loglog_slope, run_experiment1, run_snake_experiment,
                          summarize)
from .io import read_instance, write_instance
