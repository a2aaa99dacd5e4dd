"""
Harness Package
Experiment configs, grid runner, table reproduction against reference values,
verification suites and the command-line front end.
"""

from .experiment_config import (
    ExperimentConfig,
    MethodConfig,
    ProblemConfig,
    RunConfig,
    SpectrumConfig,
    load_config,
    parse_config,
)
from .runner import CSV_COLUMNS, ExperimentResult, run_experiment, run_grid, solve_cell, summarize
from .spectrum_scan import SpectrumScanResult, run_spectrum_scan
from .tables import CellDiff, TableComparison, compare_table, reproduce_table, table_config, table_ids
from .verify_suite import SUITES, VerifyReport, run_suite

__all__ = [
    "ExperimentConfig",
    "MethodConfig",
    "ProblemConfig",
    "RunConfig",
    "SpectrumConfig",
    "load_config",
    "parse_config",
    "CSV_COLUMNS",
    "ExperimentResult",
    "run_experiment",
    "run_grid",
    "solve_cell",
    "summarize",
    "SpectrumScanResult",
    "run_spectrum_scan",
    "CellDiff",
    "TableComparison",
    "compare_table",
    "reproduce_table",
    "table_config",
    "table_ids",
    "SUITES",
    "VerifyReport",
    "run_suite",
]
