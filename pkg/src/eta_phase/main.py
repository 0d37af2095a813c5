"""Command-line entry point."""

import argparse
import sys
from collections.abc import Sequence

import structlog
from pydantic import ValidationError as PydanticValidationError

from eta_phase.commands import gaussian, mixture, wigner
from eta_phase.commands.output import emit
from eta_phase.config import RunConfig, get_settings
from eta_phase.utils.exceptions import (
    EtaPhaseError,
    FileFormatError,
    NotAQuantumStateError,
    NumericalInstabilityError,
    ValidationError,
)
from eta_phase.utils.logging_config import command_logging_context, configure_logging

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_CLASSICAL = 1
EXIT_ERROR = 2

# Most specific first
ERROR_HANDLERS: list[tuple[type[EtaPhaseError], int, str]] = [
    (NotAQuantumStateError, EXIT_CLASSICAL, "not a quantum state"),
    (FileFormatError, EXIT_ERROR, "file format error"),
    (ValidationError, EXIT_ERROR, "validation error"),
    (NumericalInstabilityError, EXIT_ERROR, "numerical instability"),
    (EtaPhaseError, EXIT_ERROR, "error"),
]


def create_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="eta-phase",
        description="Quantum phase-space states at a variable Planck parameter eta.",
    )
    parser.add_argument(
        "--hbar", type=float, default=None, help=f"reference Planck value (default {settings.hbar})"
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["human", "json", "csv"],
        default=None,
        help=f"report format (default {settings.output_format})",
    )
    parser.add_argument(
        "--tol", type=float, default=None, help="relative width of the boundary band"
    )
    parser.add_argument("--log-level", default=None, help="structlog level (default from env)")
    parser.add_argument("--version", action="version", version=settings.app_version)

    subparsers = parser.add_subparsers(dest="command", required=True)
    gaussian.add_parsers(subparsers)
    wigner.add_parsers(subparsers)
    mixture.add_parsers(subparsers)
    return parser


def _report_error(exc: EtaPhaseError) -> int:
    for exc_type, code, label in ERROR_HANDLERS:
        if isinstance(exc, exc_type):
            details = ", ".join(f"{k}={v}" for k, v in exc.details.items())
            print(f"{label}: {exc.message}" + (f" ({details})" if details else ""), file=sys.stderr)
            logger.debug("Command failed", error_type=type(exc).__name__, exit_code=code)
            return code
    return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    args = create_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = RunConfig.from_settings(
            hbar=args.hbar, output_format=args.output_format, boundary_tol=args.tol
        )
    except PydanticValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        print(f"validation error: {field}: {error['msg']}", file=sys.stderr)
        return EXIT_ERROR

    with command_logging_context(args.command):
        try:
            report, code = args.handler(args, config)
        except EtaPhaseError as e:
            return _report_error(e)

    emit(report, config.output_format, sys.stdout)
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
