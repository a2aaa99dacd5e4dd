"""
Acceptance Run
Runs acceptance criteria 1-8 in order and prints one ✅/❌ line per criterion.
Exit code 0 iff every criterion passes.

    python scripts/run_acceptance.py --max-level 8 --seeds 0,1,2,3,4
"""

import argparse
import logging
import os
import sys
from typing import Callable, List, Sequence, Tuple

import numpy as np
import scipy.linalg as la

# Add the repository root to the path to import the solver packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from src.block_system import BlockVariant, build_block
from src.harness import MethodConfig, RunConfig, compare_table, run_experiment, run_suite, solve_cell, summarize, table_config
from src.harness.runner import build_level_context
from src.harness.experiment_config import ExperimentConfig, parse_config

logger = logging.getLogger("acceptance")

Outcome = Tuple[bool, str]


def _levels(table_levels: Sequence[int], max_level: int) -> List[int]:
    return [level for level in table_levels if level <= max_level]


def _run_table(table_id: str, args, rows: Sequence[str] = ()):
    cfg = table_config(table_id, levels=_levels((6, 7, 8), args.max_level), seeds=args.seeds,
                       jobs=args.jobs, output=os.path.join(args.out, f"table{table_id}"))
    if rows:
        cfg = cfg.model_copy(update={"method": [m for m in cfg.methods if m.label in rows]})
    summary = summarize(run_experiment(cfg, name=f"table{table_id}").frame)
    return compare_table(table_id, summary), summary


def _table_outcome(comparisons) -> Outcome:
    cells = [cell for comparison in comparisons for cell in comparison.cells]
    failures = [cell for cell in cells if not cell.within_tolerance]
    detail = f"{len(cells) - len(failures)}/{len(cells)} cells within tolerance"
    for cell in failures[:5]:
        detail += f"\n      {cell.row} h={cell.h:g} tau={cell.tau:g}: ref {cell.reference}, got {cell.measured}"
    return bool(cells) and not failures, detail


def criterion_1(args) -> Outcome:
    comparison, _ = _run_table("1", args, rows=("CGS-MG",))
    return _table_outcome([comparison])


def criterion_2(args) -> Outcome:
    comparisons, timing_ok, timing = [], True, ""
    for table_id in ("3", "4"):
        comparison, summary = _run_table(table_id, args)
        comparisons.append(comparison)
        finest = summary["h"].min()
        at_finest = summary[summary["h"] == finest]
        lumped = at_finest[at_finest["method"] == "V_B(1,1)"]["wall_ms"].sum()
        exact = at_finest[at_finest["method"] == "V_A(1,1)"]["wall_ms"].sum()
        timing_ok &= lumped <= 0.8 * exact
        timing += f"\n      table {table_id} h={finest:g}: wall ms B {lumped:.0f} vs A {exact:.0f}"
    ok, detail = _table_outcome(comparisons)
    return ok and timing_ok, detail + timing


def criterion_3(args) -> Outcome:
    return _table_outcome([_run_table(table_id, args)[0] for table_id in ("5", "6")])


def criterion_4(args) -> Outcome:
    if args.max_level < 7:
        return False, "needs levels 6 and 7 (raise --max-level)"
    cfg = parse_config(ExperimentConfig, {
        "problem": {"example": "1", "tau": [1e-4, 1e-7], "level": [6, 7]},
        "method": {"solver": "gmres", "precond": "Bd", "inner": "gs(3)", "label": "GS_Bd(3)"},
        "run": {"seeds": [0]},
    })
    summary = summarize(run_experiment(cfg, output_dir=args.out, name="criterion4").frame)
    fast = summary[(summary["h"] == 1 / 64) & (summary["tau"] == 1e-7)].iloc[0]
    stuck = summary[(summary["h"] == 1 / 128) & (summary["tau"] == 1e-4)].iloc[0]
    ok = bool(fast["converged"]) and fast["iters"] <= 10 and not bool(stuck["converged"])
    return ok, (f"h=1/64 tau=1e-7: {fast['iters']} iters (converged={bool(fast['converged'])}); "
                f"h=1/128 tau=1e-4: converged={bool(stuck['converged'])}")


def criterion_5(args) -> Outcome:
    summaries = {table_id: _run_table(table_id, args)[1] for table_id in ("r1", "r2", "r3", "r4")}
    problems = []

    def counts(table_id: str, label: str):
        frame = summaries[table_id]
        frame = frame[frame["method"] == label]
        return {(row.h, row.tau): row.iters for row in frame.itertuples()}

    for table_id, cycle in (("r1", "V"), ("r2", "W"), ("r3", "V"), ("r4", "W")):
        for k in (1, 2):
            low, high = counts(table_id, f"{cycle}_B({k},{k})"), counts(table_id, f"{cycle}_B({k + 1},{k + 1})")
            problems += [f"{table_id} k={k}->{k + 1} at {key}" for key in low if high[key] > low[key]]
    for v_table, w_table in (("r1", "r2"), ("r3", "r4")):
        for k in (1, 2, 3):
            v, w = counts(v_table, f"V_B({k},{k})"), counts(w_table, f"W_B({k},{k})")
            problems += [f"W>V {w_table} k={k} at {key}" for key in v if w[key] > v[key]]
    frame = summaries["r1"]
    cell = frame[(frame["method"] == "V_B(1,1)") & (frame["h"] == 1 / 64) & (frame["tau"] == 1.0)]
    factor = float(cell["conv_factor"].iloc[0]) if not cell.empty else float("nan")
    factor_ok = 0.05 <= factor <= 0.15
    detail = f"conv factor V_B(1,1) h=1/64 tau=1: {factor:.3f}; {len(problems)} trend violations"
    for problem in problems[:5]:
        detail += f"\n      {problem}"
    return factor_ok and not problems, detail


def _suite_outcome(names: Sequence[str]) -> Outcome:
    reports = [run_suite(name) for name in names]
    failed = [check.name for report in reports for check in report.checks if not check.satisfied]
    total = sum(len(report.checks) for report in reports)
    detail = f"{total - len(failed)}/{total} checks passed"
    for name in failed[:5]:
        detail += f"\n      failed: {name}"
    return not failed, detail


def criterion_6(args) -> Outcome:
    return _suite_outcome(["theorems"])


def criterion_7(args) -> Outcome:
    return _suite_outcome(["lemmas", "smw"])


ORACLE_METHODS = [
    ({"solver": "mg", "smoother": "cgs"}, 1e-2),
    ({"solver": "mg", "smoother": "cj"}, 1e-2),
    ({"solver": "gmres", "precond": "B", "inner": "mg", "smoother": "cgs"}, 1e-2),
    ({"solver": "gmres", "precond": "Btilde", "inner": "mg", "smoother": "dgs", "cycle": "w", "pre": 2, "post": 2}, 1e-2),
    ({"solver": "gmres", "precond": "A", "inner": "lu"}, 1e-2),
    ({"solver": "gmres", "precond": "Bd", "inner": "gs(3)"}, 1e-5),
]


def criterion_8(args) -> Outcome:
    level = min(3, args.max_level)
    run = RunConfig(tol=1e-10, maxit=400, seeds=[0])
    worst = 0.0
    for method_doc, tau in ORACLE_METHODS:
        cfg = parse_config(ExperimentConfig, {"problem": {"example": "1", "tau": tau, "level": level},
                                              "method": method_doc})
        method = MethodConfig(**method_doc)
        context = build_level_context(cfg, method, level)
        problem, hierarchy = context.at_tau(tau)
        report = solve_cell(method, problem, hierarchy, run, seed=0)
        exact = la.solve(build_block(problem, BlockVariant.A).to_dense(), problem.rhs())
        error = np.linalg.norm(report.solution - exact) / np.linalg.norm(exact)
        worst = max(worst, error)
        logger.info("%s: relative error %.2e", method.display_label, error)
    return worst <= 1e-6, f"worst relative error against dense LU at level {level}: {worst:.2e}"


CRITERIA: List[Tuple[str, Callable]] = [
    ("1 table 1 CGS-MG", criterion_1),
    ("2 tables 3/4 GMRes + V(1,1) CGS-MG, lumped faster than exact", criterion_2),
    ("3 tables 5/6 GMRes + V(1,1) DGS-MG", criterion_3),
    ("4 GS_Bd(3) small-tau pattern", criterion_4),
    ("5 smoothing-step and cycle trends", criterion_5),
    ("6 spectral theorem suite", criterion_6),
    ("7 lemma suite and SMW identity", criterion_7),
    ("8 solver correctness against dense LU", criterion_8),
]


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance criteria.")
    parser.add_argument("--max-level", type=int, default=8, help="Largest mesh level used by table runs.")
    parser.add_argument("--seeds", type=lambda s: [int(p) for p in s.split(",")], default=None)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default="results/acceptance")
    parser.add_argument("--only", type=lambda s: s.split(","), default=None, help="Criterion numbers, e.g. 1,6")
    args = parser.parse_args()
    logging.basicConfig(level=os.getenv("LUMO_LOG_LEVEL", "WARNING").upper())

    all_ok = True
    for name, criterion in CRITERIA:
        if args.only and name.split()[0] not in args.only:
            continue
        try:
            ok, detail = criterion(args)
        except Exception as e:
            ok, detail = False, f"error: {e}"
        all_ok &= ok
        print(f"{'✅' if ok else '❌'} criterion {name}: {detail}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
