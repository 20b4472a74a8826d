"""Command-line interface for Kostin equation scenarios."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from kostin.errors import ConfigError, KostinError
from kostin.scenario import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    REPORT_NAME,
    check_config,
    load_config,
    parse_vary,
    run_scenario,
    run_sweep,
)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


def build_parser() -> argparse.ArgumentParser:
    from kostin import __version__  # noqa: PLC0415

    parser = argparse.ArgumentParser(
        prog="kostin",
        description="Simulate damped quantum wave packets (Kostin equation)",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Verbose output",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"kostin {__version__}",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_run_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("config", type=Path, help="Scenario file")
        sub.add_argument(
            "--out",
            type=Path,
            help="Output directory (default: output.dir of the scenario)",
        )
        sub.add_argument(
            "--format",
            choices=["csv", "json"],
            help="Time-series format (default: output.format of the scenario)",
        )
        sub.add_argument(
            "--tol-scale",
            type=float,
            default=1.0,
            metavar="FACTOR",
            help="Multiply every acceptance tolerance (default: 1)",
        )

    add_run_options(commands.add_parser("run", help="Run a scenario"))
    validate = commands.add_parser("validate", help="Check a scenario file without running it")
    validate.add_argument("config", type=Path, help="Scenario file")
    sweep = commands.add_parser("sweep", help="Run a scenario over a range of one key")
    add_run_options(sweep)
    sweep.add_argument(
        "--vary",
        required=True,
        metavar="KEY=A:B:N",
        help="Dotted key and N linearly spaced values from A to B",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        if args.command == "validate":
            return validate_command(args.config)
        if args.command == "run":
            return run_command(args)
        return sweep_command(args)

    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as e:
        print(f"File not found: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except KostinError as e:
        print(f"Numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


def validate_command(path: Path) -> int:
    config, result = check_config(path.read_text(encoding="utf-8"))
    for line in result.lines(path):
        print(line, file=sys.stderr)
    if config is None:
        return EXIT_CONFIG
    print(f"{path}: valid {config.pipeline} scenario")
    return EXIT_OK


def _configured(args: argparse.Namespace):
    if not args.tol_scale > 0:
        msg = f"--tol-scale must be > 0, got {args.tol_scale}"
        raise ConfigError(msg)
    config = load_config(args.config)
    return config.with_output(args.out, args.format).with_tolerance_scale(args.tol_scale)


def run_command(args: argparse.Namespace) -> int:
    config = _configured(args)
    report = run_scenario(config)
    for check in report.checks:
        if not check.passed:
            print(
                f"Check failed: {check.name}: measured {check.measured:.3e}"
                f" > tolerance {check.tolerance:.3e}",
                file=sys.stderr,
            )
    if report.error is not None:
        print(f"Numerical error: {report.error['message']}", file=sys.stderr)
    print(f"{report.status}: {config.output_dir / REPORT_NAME}")
    return report.exit_code


def sweep_command(args: argparse.Namespace) -> int:
    try:
        key, values = parse_vary(args.vary)
    except ValueError as e:
        raise ConfigError(str(e), "--vary") from e
    config = _configured(args)
    reports, path = run_sweep(config, key, values)
    for value, report in zip(values, reports, strict=True):
        print(f"{key}={value:.12g}: {report.status}")
    print(f"sweep: {path}")
    return max(report.exit_code for report in reports)


if __name__ == "__main__":
    sys.exit(main())
