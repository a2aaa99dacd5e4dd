"""
Spectrum Scan
Dense spectra of preconditioned operators over a (level, tau) grid, emitted as
one plot-ready scatter CSV.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import pandas as pd

from ..assembly.discrete_problem import assemble_problem
from ..spectrum.spectrum_report import SpectrumReport
from ..spectrum.spectrum_verify import preconditioned_spectrum, spectrum_of_X
from .experiment_config import SpectrumConfig

logger = logging.getLogger(__name__)

SCATTER_COLUMNS = ["re", "im", "h", "tau", "precond"]


@dataclass
class SpectrumScanResult:
    frame: pd.DataFrame
    reports: List[SpectrumReport] = field(default_factory=list, repr=False)
    csv_path: Optional[Path] = None

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)


def run_spectrum_scan(cfg: SpectrumConfig, output_dir: Optional[Path] = None,
                      name: str = "spectrum", write: bool = True) -> SpectrumScanResult:
    """
    Eigenvalues of every configured operator on every (level, tau) cell.

    Args:
        cfg: Validated spectrum configuration
        output_dir: Target directory, cfg.output or LUMO_OUTPUT_DIR by default
        name: Base file name of the CSV
        write: Skip writing when False

    Returns:
        SpectrumScanResult with columns re, im, h, tau, precond
    """
    spec = cfg.problem.spec()
    reports: List[SpectrumReport] = []
    for level in cfg.problem.levels:
        base = assemble_problem(level, spec, cfg.problem.taus[0])
        for tau in cfg.problem.taus:
            problem = base.with_tau(tau)
            for operator in cfg.operators:
                if operator == "X":
                    reports.append(spectrum_of_X(problem))
                else:
                    reports.append(preconditioned_spectrum(problem, operator))

    frames = [report.scatter_frame() for report in reports]
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=SCATTER_COLUMNS)
    result = SpectrumScanResult(frame=frame[SCATTER_COLUMNS], reports=reports)
    if write:
        directory = Path(output_dir) if output_dir is not None else cfg.output_dir
        directory.mkdir(parents=True, exist_ok=True)
        result.csv_path = directory / f"{name}.csv"
        result.frame.to_csv(result.csv_path, index=False)
        logger.info("wrote %d eigenvalues to %s", len(result.frame), result.csv_path)
    return result
