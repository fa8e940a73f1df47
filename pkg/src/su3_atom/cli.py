"""
Command-line front end.

    su3-atom simulate --model lambda --field classical --kappa1 0.2 --kappa2 0.1 --out fig3a.csv
    su3-atom verify all
    su3-atom sweep --figure 7 --param nbar --values 5,10,20,30 --out sweep/
"""

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from .data_bindings.config import RunConfig
from .data_bindings.pipeline import TracePipeline
from .dynamics.verification import SUITES, run_suite
from .errors import (
    DiagnosticError,
    DomainError,
    OracleQualityError,
    Su3AtomError,
    TraceIOError,
    UsageError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# flag dest -> RunConfig field
_RUN_FLAGS = (
    "model", "field", "kappa1", "kappa2", "g1", "g2", "n", "m", "nbar", "mbar",
    "initial_level", "t_max", "samples", "output_path", "format", "method",
    "omega1", "omega2", "delta1", "delta2", "weighting",
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(message)


def _add_run_flags(parser: argparse.ArgumentParser, out_help: str) -> None:
    group = parser.add_argument_group("model")
    group.add_argument("--config", help="JSON run configuration; flags override its values")
    group.add_argument("--figure", type=int, choices=range(3, 10), metavar="{3..9}",
                       help="start from the parameter set of a published figure")
    group.add_argument("--model", choices=["lambda", "vee", "cascade"])
    group.add_argument("--field", choices=["classical", "number", "coherent"])
    group.add_argument("--kappa1", type=float)
    group.add_argument("--kappa2", type=float)
    group.add_argument("--g1", type=float)
    group.add_argument("--g2", type=float)
    group.add_argument("--n", type=int)
    group.add_argument("--m", type=int)
    group.add_argument("--nbar", type=float)
    group.add_argument("--mbar", type=float)
    group.add_argument("--initial", dest="initial_level", type=int, choices=[1, 2, 3])
    group.add_argument("--tmax", dest="t_max", type=float)
    group.add_argument("--samples", type=int)
    group.add_argument("--method", choices=["auto", "analytic", "oracle"])
    group.add_argument("--omega1", type=float, help="atomic frequency (oracle path)")
    group.add_argument("--omega2", type=float, help="atomic frequency (oracle path)")
    group.add_argument("--delta1", type=float, help="detuning of mode 1 (oracle path)")
    group.add_argument("--delta2", type=float, help="detuning of mode 2 (oracle path)")
    group.add_argument("--weighting", choices=["literal", "occupation"])

    output = parser.add_argument_group("output")
    output.add_argument("--out", dest="output_path", help=out_help)
    output.add_argument("--format", choices=["csv", "json"])
    output.add_argument("--force", action="store_true", help="overwrite existing files")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="su3-atom", description="Three-level atom dynamics from SU(3) generators.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    simulate = commands.add_parser("simulate", help="write one population trace")
    _add_run_flags(simulate, "trace file to write")

    verify = commands.add_parser("verify", help="run verification suites")
    verify.add_argument("suite", choices=[*SUITES, "all"])

    commands.add_parser("algebra-check", help="alias for 'verify algebra'")

    sweep = commands.add_parser("sweep", help="one trace per value of a single parameter")
    _add_run_flags(sweep, "output directory")
    sweep.add_argument("--param", required=True, help="RunConfig field to vary")
    sweep.add_argument("--values", required=True, help="comma-separated values")
    sweep.add_argument("--workers", type=int, help="concurrent runs")
    sweep.add_argument("--duckdb", help="also load all traces into this DuckDB file")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Config file or figure preset first, then every flag that was given."""
    if args.config:
        base = RunConfig.from_file(args.config)
    elif args.figure is not None:
        base = RunConfig.for_figure(args.figure, args.initial_level, args.model)
    else:
        base = RunConfig()
    overrides: Dict[str, Any] = {name: getattr(args, name) for name in _RUN_FLAGS}
    return base.merged(overrides)


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    result = TracePipeline(config).simulate(force=True)
    if result.path is not None:
        print(f"wrote {result.path}")
    trace = result.trace
    print(f"samples={trace.samples} t_max={trace.times[-1]:.6g} "
          f"normalization_error={trace.normalization_error():.3e}")
    for name, (low, high) in trace.summary().items():
        print(f"{name} min={low:.6f} max={high:.6f}")
    return EXIT_OK


def _cmd_verify(suite: str) -> int:
    checks = run_suite(suite)
    for check in checks:
        print(check.format())
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks)} checks, {len(failed)} failed")
    return EXIT_OK if not failed else EXIT_VERIFY


def _cmd_sweep(args: argparse.Namespace) -> int:
    template = config_from_args(args)
    if not template.output_path:
        raise UsageError("sweep needs --out DIRECTORY")
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    out_dir = template.output_path
    pipeline = TracePipeline(template.merged({"output_path": ""}))
    result = pipeline.sweep(args.param, values, out_dir, force=args.force,
                            workers=args.workers, duckdb_path=args.duckdb)
    for run in result.runs:
        print(f"wrote {run.path}")
    print(f"index {result.index_path}")
    return EXIT_OK


def _error_kind(error: Exception) -> str:
    if isinstance(error, UsageError):
        return "usage"
    if isinstance(error, DomainError):
        return "domain"
    if isinstance(error, OracleQualityError):
        return "oracle"
    if isinstance(error, DiagnosticError):
        return "diagnostic"
    return "error"


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Returns:
        0 on success, 1 for usage or domain errors, 2 when a verification
        check fails, 3 for I/O errors
    """
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format=LOG_FORMAT, stream=sys.stderr)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "verify":
            return _cmd_verify(args.suite)
        if args.command == "algebra-check":
            return _cmd_verify("algebra")
        return _cmd_sweep(args)
    except (TraceIOError, OSError) as e:
        _report("io", e)
        return EXIT_IO
    except Su3AtomError as e:
        _report(_error_kind(e), e)
        return EXIT_USAGE


def _report(kind: str, error: Exception) -> None:
    message = " ".join(str(error).split())
    print(f"error: {kind}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
