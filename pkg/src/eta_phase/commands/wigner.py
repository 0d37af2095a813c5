"""Wigner command: transform a grid wavefunction and dump the result."""

import argparse
from pathlib import Path

import numpy as np
import structlog

from eta_phase.config import RunConfig
from eta_phase.core.gaussian import gaussian_phase_space, moment_matched
from eta_phase.core.wigner import (
    GridWavefunction,
    PhaseSpaceFunction,
    eta_fourier,
    marginals,
    phase_space_purity,
    wigner_transform,
)
from eta_phase.schemas.reports import WignerReport
from eta_phase.services.files import load_wavefunction, save_phase_space
from eta_phase.utils.exceptions import DomainError

logger = structlog.get_logger()


def default_output_path(wavefunction_file: str | Path) -> Path:
    path = Path(wavefunction_file)
    return path.with_name(f"{path.stem}.wigner.txt")


def _gaussian_deviation(w: PhaseSpaceFunction) -> float | None:
    """Max |sign(η)·W − ρ_Σ| against the moment-matched Gaussian, if one exists."""
    try:
        state = moment_matched(w)
    except DomainError:
        return None
    reference = gaussian_phase_space(state, w.x0, w.dx, w.shape[0], w.eta)
    return float(np.max(np.abs(np.sign(w.eta) * w.samples - reference.samples)))


def _marginal_residuals(psi: GridWavefunction, w: PhaseSpaceFunction) -> tuple[float, float]:
    sign = np.sign(w.eta)
    position, momentum = marginals(w)
    expected_momentum = np.abs(eta_fourier(psi, w.eta).samples) ** 2
    return (
        float(np.max(np.abs(position - sign * np.abs(psi.samples) ** 2))),
        float(np.max(np.abs(momentum - sign * expected_momentum))),
    )


def cmd_wigner(
    wavefunction_file: str | Path,
    eta: float,
    config: RunConfig,
    output: str | Path | None = None,
) -> tuple[WignerReport, int]:
    """Write W_ηψ as a phase-space dump and report its consistency checks.

    Edge-decay warnings are surfaced in the report; they do not change the
    exit code.
    """
    psi = load_wavefunction(wavefunction_file)
    w = wigner_transform(psi, eta, config.tolerances)

    output_path = Path(output) if output is not None else default_output_path(wavefunction_file)
    save_phase_space(w, output_path)
    logger.info("Phase-space dump written", path=str(output_path), size=psi.size, eta=eta)

    position_residual, momentum_residual = _marginal_residuals(psi, w)
    report = WignerReport(
        output=str(output_path),
        eta=eta,
        grid_size=psi.size,
        integral=w.integral(),
        min_value=float(w.samples.min()),
        max_value=float(w.samples.max()),
        position_marginal_residual=position_residual,
        momentum_marginal_residual=momentum_residual,
        moyal_self_purity=phase_space_purity(w),
        gaussian_deviation=_gaussian_deviation(w),
        warnings=list(w.warnings),
    )
    return report, 0


def add_parsers(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("wigner", help="eta-Wigner transform of a wavefunction file")
    parser.add_argument("wavefunction", help="wavefunction file: 'x0 dx N' then N lines 're im'")
    parser.add_argument("eta", type=float, help="Planck parameter eta (non-zero)")
    parser.add_argument(
        "-o", "--output", default=None, help="dump path (default: <stem>.wigner.txt)"
    )
    parser.set_defaults(
        handler=lambda args, config: cmd_wigner(args.wavefunction, args.eta, config, args.output)
    )
