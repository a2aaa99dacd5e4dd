"""
Lumo CLI
Command-line front end: solve sweeps, reproduce tables, scan spectra, run the
verification suites and dump meshes.

Exit codes: 0 success, 1 acceptance diff exceeded or checks failed, 2 bad config.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .. import __version__
from ..mesh.lshape_mesh import build_lshape_mesh
from ..mesh.mesh_io import dump_mesh_csv
from ..utils.errors import ConfigurationError, LumoError
from ..utils.settings import get_settings
from .experiment_config import ExperimentConfig, SpectrumConfig, load_config
from .runner import run_experiment, summarize
from .spectrum_scan import run_spectrum_scan
from .tables import reproduce_table, table_ids
from .verify_suite import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_CONFIG = 2


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, ExperimentConfig)
    result = run_experiment(cfg, output_dir=args.out)
    summary = summarize(result.frame)
    print(summary.to_string(index=False))
    print(f"✅ {len(result.frame)} rows written to {result.csv_path}")
    not_converged = int((~result.frame["converged"].astype(bool)).sum())
    if not_converged:
        print(f"⚠️ {not_converged} cells did not converge within maxit={cfg.run.maxit}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    comparison = reproduce_table(args.table_id, levels=args.levels, out=args.out,
                                 seeds=args.seeds, jobs=args.jobs)
    print(f"📝 {comparison.provenance}")
    print(comparison.measured_table().to_string())
    for cell in comparison.failures:
        print(f"❌ {cell.row} h=1/{round(1 / cell.h)} tau={cell.tau:g}: "
              f"reference {cell.reference if cell.reference is not None else '*'}, "
              f"measured {cell.measured if cell.measured is not None else '*'}")
    if comparison.passed:
        print(f"✅ table {comparison.table_id}: all {len(comparison.cells)} cells within tolerance")
        return EXIT_OK
    print(f"❌ table {comparison.table_id}: {len(comparison.failures)}/{len(comparison.cells)} cells off")
    return EXIT_FAILED


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, SpectrumConfig)
    result = run_spectrum_scan(cfg, output_dir=args.out)
    for report in result.reports:
        status = "✅" if report.passed else "❌"
        print(f"{status} {report.label} h={report.h:g} tau={report.tau:g}: rho={report.rho:.4f}")
    print(f"📝 {len(result.frame)} eigenvalues written to {result.csv_path}")
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite)
    for check in report.checks:
        status = "✅" if check.satisfied else "❌"
        print(f"{status} {check.name} (margin {check.margin:.3e})")
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(), indent=2))
    if report.passed:
        print(f"✅ suite {report.suite}: {len(report.checks)} checks passed")
        return EXIT_OK
    print(f"❌ suite {report.suite}: {report.n_failed}/{len(report.checks)} checks failed")
    return EXIT_FAILED


def cmd_mesh_dump(args: argparse.Namespace) -> int:
    mesh = build_lshape_mesh(args.level)
    directory = Path(args.out or get_settings().output_dir) / f"mesh_level{args.level}"
    vertices, triangles = dump_mesh_csv(mesh, directory)
    print(f"✅ level {args.level}: {mesh.n_vertices} vertices, {mesh.n_triangles} triangles")
    print(f"📝 {vertices}\n📝 {triangles}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lumo", description="Mixed-form fourth order parabolic solvers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Logging level, LUMO_LOG_LEVEL by default.")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Run an experiment config.")
    solve.add_argument("config", help="Path to an ExperimentConfig JSON file.")
    solve.add_argument("--out", type=Path, default=None, help="Output directory.")
    solve.set_defaults(handler=cmd_solve)

    table = commands.add_parser("table", help="Reproduce a results table and diff it against the reference.")
    table.add_argument("table_id", choices=table_ids())
    table.add_argument("--out", type=Path, default=None, help="Output directory.")
    table.add_argument("--levels", type=_int_list, default=None, help="Comma-separated subset of levels.")
    table.add_argument("--seeds", type=_int_list, default=None, help="Comma-separated seeds.")
    table.add_argument("--jobs", type=int, default=1, help="Worker threads.")
    table.set_defaults(handler=cmd_table)

    spectrum = commands.add_parser("spectrum", help="Dense spectra from a SpectrumConfig.")
    spectrum.add_argument("config", help="Path to a SpectrumConfig JSON file.")
    spectrum.add_argument("--out", type=Path, default=None, help="Output directory.")
    spectrum.set_defaults(handler=cmd_spectrum)

    verify = commands.add_parser("verify", help="Run a verification suite.")
    verify.add_argument("suite", choices=list(SUITES))
    verify.add_argument("--json", default=None, help="Also write the report as JSON.")
    verify.set_defaults(handler=cmd_verify)

    mesh = commands.add_parser("mesh-dump", help="Write vertices.csv and triangles.csv for a mesh level.")
    mesh.add_argument("level", type=int)
    mesh.add_argument("--out", type=Path, default=None, help="Output directory.")
    mesh.set_defaults(handler=cmd_mesh_dump)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except (LumoError, ValueError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
