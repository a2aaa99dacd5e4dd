"""
Experiment Runner
Expands an ExperimentConfig into (method, level, tau, seed) cells, solves each
cell and writes one CSV row per cell plus a JSON run manifest.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from .. import __version__
from ..assembly.discrete_problem import DiscreteProblem, assemble_problem
from ..block_system.block_operator import BlockVariant, build_block
from ..krylov.fgmres import fgmres
from ..krylov.preconditioners import build_preconditioner
from ..multigrid.cycle import mg_solve, random_initial_guess
from ..multigrid.hierarchy import MGHierarchy, build_hierarchy
from ..multigrid.solve_report import SolveReport
from .experiment_config import ExperimentConfig, MethodConfig, RunConfig

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "example", "bc", "h", "tau", "method", "precond", "cycle", "pre", "post",
    "seed", "iters", "converged", "conv_factor", "wall_ms",
]


@dataclass
class LevelContext:
    """Assembly and hierarchy of one (method, level) pair, reused across tau."""
    method: MethodConfig
    problem: DiscreteProblem
    hierarchy: Optional[MGHierarchy] = None

    def at_tau(self, tau: float) -> Tuple[DiscreteProblem, Optional[MGHierarchy]]:
        problem = self.problem.with_tau(tau)
        hierarchy = self.hierarchy
        if hierarchy is not None and hierarchy.tau != tau:
            hierarchy = hierarchy.with_tau(tau)
        return problem, hierarchy


@dataclass
class ExperimentResult:
    """Rows in grid order plus where they were written."""
    frame: pd.DataFrame
    manifest: Dict[str, Any]
    csv_path: Optional[Path] = None
    manifest_path: Optional[Path] = None
    reports: List[SolveReport] = field(default_factory=list, repr=False)


def build_level_context(cfg: ExperimentConfig, method: MethodConfig, level: int) -> LevelContext:
    """Assemble the finest problem, and the multigrid hierarchy when the method needs one."""
    spec = cfg.problem.spec()
    tau = cfg.problem.taus[0]
    if method.uses_multigrid:
        hierarchy = build_hierarchy(
            level, cfg.problem.coarse_level, spec, tau,
            target=method.mg_target, smoother=method.smoother_config(),
            cycle=method.cycle, pre=method.pre, post=method.post,
        )
        return LevelContext(method, hierarchy.finest.problem, hierarchy)
    return LevelContext(method, assemble_problem(level, spec, tau))


def solve_cell(method: MethodConfig, problem: DiscreteProblem, hierarchy: Optional[MGHierarchy],
               run: RunConfig, seed: int) -> SolveReport:
    """
    Solve (f; g) once from the seeded random initial guess.

    Args:
        method: Solver configuration
        problem: Finest problem at the cell's tau
        hierarchy: Hierarchy at the cell's tau, when the method uses multigrid
        run: Tolerance and iteration cap
        seed: Initial-guess seed

    Returns:
        SolveReport with the solution attached
    """
    if method.solver == "mg":
        return mg_solve(hierarchy, tol=run.tol, maxit=run.maxit, seed=seed)
    system = build_block(problem, BlockVariant.A)
    apply_P = build_preconditioner(method.preconditioner(), problem, hierarchy)
    x0 = random_initial_guess(system.shape[0], seed)
    _, report = fgmres(system.apply, apply_P, problem.rhs(), x0=x0, tol=run.tol, maxit=run.maxit)
    return report


def _cell_row(cfg: ExperimentConfig, method: MethodConfig, problem: DiscreteProblem,
              seed: int, report: SolveReport) -> Dict[str, Any]:
    return {
        "example": cfg.problem.example,
        "bc": cfg.problem.bc,
        "h": problem.h,
        "tau": problem.tau,
        "method": method.display_label,
        "precond": method.precond or "",
        "cycle": method.cycle if method.uses_multigrid else "",
        "pre": method.pre if method.uses_multigrid else "",
        "post": method.post if method.uses_multigrid else "",
        "seed": seed,
        "iters": report.iterations,
        "converged": report.converged,
        "conv_factor": round(report.conv_factor, 6),
        "wall_ms": round(report.wall_ms, 3),
    }


def _run_tau(cfg: ExperimentConfig, context: LevelContext, tau: float) -> List[Tuple[Dict[str, Any], SolveReport]]:
    problem, hierarchy = context.at_tau(tau)
    out = []
    for seed in cfg.run.seeds:
        report = solve_cell(context.method, problem, hierarchy, cfg.run, seed)
        out.append((_cell_row(cfg, context.method, problem, seed, report), report))
        logger.info("%s level=%d tau=%g seed=%d: iters=%d converged=%s",
                    context.method.display_label, problem.level, tau, seed, report.iterations, report.converged)
    return out


def run_grid(cfg: ExperimentConfig) -> ExperimentResult:
    """
    Solve every cell without writing files.

    Rows are ordered method -> level -> tau -> seed regardless of `jobs`.
    """
    tasks = []
    for method in cfg.methods:
        for level in cfg.problem.levels:
            context = build_level_context(cfg, method, level)
            tasks += [(context, tau) for tau in cfg.problem.taus]

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(lambda task: _run_tau(cfg, *task), tasks))
    else:
        chunks = [_run_tau(cfg, *task) for task in tasks]

    rows = [row for chunk in chunks for row, _ in chunk]
    reports = [report for chunk in chunks for _, report in chunk]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return ExperimentResult(frame=frame, manifest=build_manifest(cfg, len(rows)), reports=reports)


def build_manifest(cfg: ExperimentConfig, n_rows: int) -> Dict[str, Any]:
    """Resolved config, library version and row count."""
    return {
        "version": __version__,
        "created_at": datetime.now().isoformat(),
        "config": cfg.model_dump(mode="json"),
        "rows": n_rows,
        "columns": CSV_COLUMNS,
    }


def run_experiment(cfg: ExperimentConfig, output_dir: Optional[Path] = None,
                   name: str = "results", write: bool = True) -> ExperimentResult:
    """
    Run the configured sweep and write `<name>.csv` and `<name>.manifest.json`.

    Non-convergence is recorded as converged=false in its row, never raised.

    Args:
        cfg: Validated experiment configuration
        output_dir: Target directory, cfg.output or LUMO_OUTPUT_DIR by default
        name: Base file name
        write: Skip writing when False

    Returns:
        ExperimentResult with the rows as a DataFrame
    """
    result = run_grid(cfg)
    if not write:
        return result
    directory = Path(output_dir) if output_dir is not None else cfg.output_dir
    directory.mkdir(parents=True, exist_ok=True)
    result.csv_path = directory / f"{name}.csv"
    result.manifest_path = directory / f"{name}.manifest.json"
    result.frame.to_csv(result.csv_path, index=False)
    manifest = dict(result.manifest, csv=result.csv_path.name)
    result.manifest_path.write_text(json.dumps(manifest, indent=2))
    result.manifest = manifest
    logger.info("wrote %d rows to %s", len(result.frame), result.csv_path)
    return result


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Seed-averaged iteration counts per (method, h, tau).

    iters is the rounded seed mean; a cell counts as converged only when every seed converged.
    """
    grouped = frame.groupby(["method", "h", "tau"], sort=False)
    summary = grouped.agg(
        iters=("iters", "mean"),
        converged=("converged", "all"),
        conv_factor=("conv_factor", "mean"),
        wall_ms=("wall_ms", "mean"),
    ).reset_index()
    summary["iters"] = np.rint(summary["iters"]).astype(int)
    return summary
