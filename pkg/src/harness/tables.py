"""
Table Reproduction
Runs the parameter grid of a catalogued results table and diffs the measured,
seed-averaged iteration counts against the embedded reference values.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from dataclasses_json import dataclass_json

from ..utils.errors import ConfigurationError
from .experiment_config import ExperimentConfig, parse_config
from .runner import run_experiment, summarize

logger = logging.getLogger(__name__)

REFERENCE_PATH = Path(__file__).with_name("reference_values.json")
LEVEL_H = {level: 1.0 / 2 ** level for level in range(12)}


@lru_cache(maxsize=1)
def load_reference() -> Dict[str, Any]:
    """The table catalogue keyed by table id."""
    return json.loads(REFERENCE_PATH.read_text())["tables"]


def table_ids() -> List[str]:
    return list(load_reference())


def reference_table(table_id: str) -> Dict[str, Any]:
    """
    Raises:
        ConfigurationError: for an unknown id
    """
    tables = load_reference()
    key = str(table_id).strip()
    if key not in tables:
        raise ConfigurationError(f"unknown table '{table_id}', expected one of {', '.join(tables)}", ["table"])
    return tables[key]


def table_config(table_id: str, levels: Optional[Sequence[int]] = None,
                 seeds: Optional[Sequence[int]] = None, jobs: int = 1,
                 output: Optional[str] = None) -> ExperimentConfig:
    """
    ExperimentConfig covering the table's full grid (or the given subset of levels).

    Coarse level 1 under both boundary conditions.
    """
    table = reference_table(table_id)
    chosen = list(levels) if levels else table["levels"]
    unknown = sorted(set(chosen) - set(table["levels"]))
    if unknown:
        logger.warning("table %s has no reference values at levels %s", table_id, unknown)
    document: Dict[str, Any] = {
        "problem": {
            "example": table["example"],
            "bc": table["bc"],
            "tau": table["taus"],
            "level": chosen,
            "coarse_level": 1,
        },
        "method": [dict(row["method"], label=row["label"]) for row in table["rows"]],
        "jobs": jobs,
    }
    if seeds:
        document["run"] = {"seeds": list(seeds)}
    if output:
        document["output"] = output
    return parse_config(ExperimentConfig, document)


@dataclass_json
@dataclass
class CellDiff:
    """One table cell: reference and measured iteration count (None is no convergence)."""
    row: str
    level: int
    h: float
    tau: float
    reference: Optional[int]
    measured: Optional[int]
    deviation: Optional[int]
    within_tolerance: bool
    reference_conv_factor: Optional[float] = None
    measured_conv_factor: Optional[float] = None
    wall_ms: Optional[float] = None


@dataclass_json
@dataclass
class TableComparison:
    table_id: str
    provenance: str
    cells: List[CellDiff] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(cell.within_tolerance for cell in self.cells)

    @property
    def failures(self) -> List[CellDiff]:
        return [cell for cell in self.cells if not cell.within_tolerance]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([cell.to_dict() for cell in self.cells])

    def measured_table(self) -> pd.DataFrame:
        """Rows (row label, h), columns tau; '*' marks cells that did not converge."""
        frame = self.frame()
        frame["value"] = [str(m) if m is not None else "*" for m in frame["measured"]]
        table = frame.pivot_table(index=["row", "h"], columns="tau", values="value",
                                  aggfunc="first", sort=False)
        return table[sorted(table.columns, reverse=True)]


def compare_cell(reference: Optional[int], measured: Optional[int], tolerance) -> bool:
    """
    Numeric tolerance: both converge and differ by at most `tolerance`, or both fail.
    "pattern": only the converged / not-converged pattern must agree.
    """
    if tolerance == "pattern" or reference is None:
        return (reference is None) == (measured is None)
    return measured is not None and abs(measured - reference) <= int(tolerance)


def compare_table(table_id: str, summary: pd.DataFrame) -> TableComparison:
    """Diff a seed-averaged summary against the reference values of `table_id`."""
    table = reference_table(table_id)
    comparison = TableComparison(table_id=str(table_id), provenance=table["provenance"])
    for row in table["rows"]:
        for level_key, counts in row["iterations"].items():
            level = int(level_key)
            h = LEVEL_H[level]
            factors = row.get("conv_factors", {}).get(level_key)
            for index, (tau, reference) in enumerate(zip(table["taus"], counts)):
                hit = summary[(summary["method"] == row["label"])
                              & ((summary["h"] - h).abs() < 1e-12)
                              & ((summary["tau"] - tau).abs() <= 1e-12 * tau)]
                if hit.empty:
                    continue
                cell = hit.iloc[0]
                measured = int(cell["iters"]) if bool(cell["converged"]) else None
                deviation = None if measured is None or reference is None else measured - reference
                comparison.cells.append(CellDiff(
                    row=row["label"], level=level, h=h, tau=float(tau),
                    reference=reference, measured=measured, deviation=deviation,
                    within_tolerance=compare_cell(reference, measured, row["tolerance"]),
                    reference_conv_factor=factors[index] if factors else None,
                    measured_conv_factor=round(float(cell["conv_factor"]), 4),
                    wall_ms=round(float(cell["wall_ms"]), 3),
                ))
    return comparison


def reproduce_table(table_id: str, levels: Optional[Sequence[int]] = None, out: Optional[Path] = None,
                    seeds: Optional[Sequence[int]] = None, jobs: int = 1) -> TableComparison:
    """
    Run the table's grid, write the raw rows, the measured table and the diff.

    Files in `out`: table<id>.csv (raw rows), table<id>.manifest.json,
    table<id>_measured.csv and table<id>_diff.csv.

    Args:
        table_id: "1".."10" or "r1".."r4"
        levels: Subset of the table's levels
        out: Output directory, LUMO_OUTPUT_DIR by default
        seeds: Initial-guess seeds, the default seed list when None
        jobs: Worker threads

    Returns:
        TableComparison; CPU times are reported, never compared
    """
    cfg = table_config(table_id, levels=levels, seeds=seeds, jobs=jobs,
                       output=str(out) if out is not None else None)
    name = f"table{table_id}"
    result = run_experiment(cfg, name=name)
    comparison = compare_table(table_id, summarize(result.frame))
    directory = result.csv_path.parent
    comparison.measured_table().to_csv(directory / f"{name}_measured.csv")
    comparison.frame().to_csv(directory / f"{name}_diff.csv", index=False)
    for cell in comparison.failures:
        logger.warning("table %s %s h=%g tau=%g: reference %s, measured %s",
                       table_id, cell.row, cell.h, cell.tau, cell.reference, cell.measured)
    logger.info("table %s: %d/%d cells within tolerance", table_id,
                len(comparison.cells) - len(comparison.failures), len(comparison.cells))
    return comparison
