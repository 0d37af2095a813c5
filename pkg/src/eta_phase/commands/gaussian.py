"""Gaussian commands: classify, sweep, williamson."""

import argparse
from pathlib import Path

import numpy as np
import structlog

from eta_phase.config import RunConfig
from eta_phase.core.gaussian import GaussianState, classify, sweep
from eta_phase.core.symplectic import CovarianceMatrix, williamson
from eta_phase.schemas.reports import (
    ClassificationReport,
    SweepReport,
    SweepRow,
    WilliamsonReport,
)
from eta_phase.services.files import load_covariance, save_covariance
from eta_phase.utils.exceptions import InvalidParameterError

logger = structlog.get_logger()


def cmd_classify(
    covariance_file: str | Path,
    eta: float,
    config: RunConfig,
) -> tuple[ClassificationReport, int]:
    """Classify the centered Gaussian of a covariance file at η.

    Exit code 0 when quantum (including the boundary band), 1 when classical.
    """
    state = GaussianState.centered(load_covariance(covariance_file))
    result = classify(state, eta, config.tolerances)

    logger.info("Covariance classified", eta=eta, verdict=result.verdict.value)
    report = ClassificationReport(
        verdict=result.verdict.value,
        eta=eta,
        hbar=config.hbar,
        threshold=result.threshold,
        margin=result.margin,
        spectrum=list(result.spectrum),
        purity=result.purity,
    )
    return report, 0 if result.is_quantum else 1


def cmd_sweep(
    covariance_file: str | Path,
    eta_min: float,
    eta_max: float,
    steps: int,
    config: RunConfig,
) -> tuple[SweepReport, int]:
    """Classify over ``steps`` evenly spaced η in [η_min, η_max]."""
    if not 0 < eta_min < eta_max:
        raise InvalidParameterError(
            "Sweep range must satisfy 0 < eta_min < eta_max",
            {"eta_min": eta_min, "eta_max": eta_max},
        )
    if steps < 2:
        raise InvalidParameterError("Sweep needs at least 2 steps", {"steps": steps})

    state = GaussianState.centered(load_covariance(covariance_file))
    results = sweep(state, np.linspace(eta_min, eta_max, steps).tolist(), config.tolerances)

    report = SweepReport(
        threshold=results[0].threshold,
        spectrum=list(results[0].spectrum),
        rows=[
            SweepRow(eta=r.eta, verdict=r.verdict.value, purity=r.purity, margin=r.margin)
            for r in results
        ],
    )
    return report, 0


def cmd_williamson(
    covariance_file: str | Path,
    config: RunConfig,
    output: str | Path | None = None,
) -> tuple[WilliamsonReport, int]:
    """Williamson factors S, D of a covariance file with their residuals.

    The decomposition raises when a residual leaves its band, so a returned
    report is always within tolerance. With ``output`` the normal form D is
    written as a covariance file.
    """
    decomposition = williamson(load_covariance(covariance_file), config.tolerances)
    if output is not None:
        save_covariance(CovarianceMatrix.from_array(decomposition.D), output)
        logger.info("Normal form written", path=str(output))
    report = WilliamsonReport(
        S=decomposition.S.tolist(),
        D=decomposition.D.tolist(),
        spectrum=list(decomposition.spectrum.values),
        symplectic_residual=decomposition.symplectic_residual,
        reconstruction_residual=decomposition.reconstruction_residual,
        within_tolerance=True,
        output=None if output is None else str(output),
    )
    return report, 0


def add_parsers(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    classify_parser = subparsers.add_parser(
        "classify", help="classify a Gaussian covariance at eta"
    )
    classify_parser.add_argument("covariance", help="covariance file (JSON or CSV)")
    classify_parser.add_argument("eta", type=float, help="Planck parameter eta")
    classify_parser.set_defaults(
        handler=lambda args, config: cmd_classify(args.covariance, args.eta, config)
    )

    sweep_parser = subparsers.add_parser("sweep", help="classify over an eta range")
    sweep_parser.add_argument("covariance", help="covariance file (JSON or CSV)")
    sweep_parser.add_argument("eta_min", type=float)
    sweep_parser.add_argument("eta_max", type=float)
    sweep_parser.add_argument("steps", type=int)
    sweep_parser.set_defaults(
        handler=lambda args, config: cmd_sweep(
            args.covariance, args.eta_min, args.eta_max, args.steps, config
        )
    )

    williamson_parser = subparsers.add_parser(
        "williamson", help="symplectic diagonalization of a covariance"
    )
    williamson_parser.add_argument("covariance", help="covariance file (JSON or CSV)")
    williamson_parser.add_argument(
        "-o", "--output", default=None, help="also write the normal form D as a covariance file"
    )
    williamson_parser.set_defaults(
        handler=lambda args, config: cmd_williamson(args.covariance, config, args.output)
    )

