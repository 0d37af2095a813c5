"""Mixture commands: purity of a manifest and purity transitions."""

import argparse
from pathlib import Path

import structlog

from eta_phase.config import RunConfig
from eta_phase.core.mixture import (
    TransitionKind,
    eta_wigner_distribution,
    purity,
    transition_boundary,
    transition_purity,
    validate_orthonormal,
)
from eta_phase.core.wigner import phase_space_purity
from eta_phase.schemas.reports import PurityReport, TransitionReport
from eta_phase.services.files import load_mixture

logger = structlog.get_logger()


def _exit_code(verdict: TransitionKind) -> int:
    return 1 if verdict is TransitionKind.INFEASIBLE else 0


def cmd_transition(
    source_purity: float,
    hbar: float,
    eta: float,
    n: int,
    config: RunConfig,
) -> tuple[TransitionReport, int]:
    """Purity implied at η for a state of purity ``source_purity`` at ħ.

    Exit code 1 for Infeasible, 0 otherwise.
    """
    result = transition_purity(source_purity, hbar, eta, n, config.tolerances)
    report = TransitionReport(
        source_purity=result.source_purity,
        hbar=result.hbar,
        eta=result.eta,
        n=result.n,
        implied_purity=result.implied_purity,
        verdict=result.verdict.value,
        boundary_eta=transition_boundary(source_purity, hbar, n),
    )
    return report, _exit_code(result.verdict)


def cmd_purity(
    manifest_file: str | Path,
    config: RunConfig,
    eta: float | None = None,
) -> tuple[PurityReport, int]:
    """Purity Σα_j² of a mixture manifest.

    With ``eta`` the mixture is also transformed to phase space, its Moyal
    purity reported and the transition from the manifest's ħ to η judged.
    """
    mixture = load_mixture(manifest_file)
    tr_rho2 = purity(mixture)
    orthonormality = validate_orthonormal(mixture.states, config.tolerances)

    ps_purity = None
    transition = None
    exit_code = 0
    if eta is not None:
        distribution = eta_wigner_distribution(mixture, eta, config.tolerances)
        ps_purity = phase_space_purity(distribution)
        transition, exit_code = cmd_transition(tr_rho2, mixture.hbar, eta, 1, config)

    logger.info("Mixture purity computed", components=len(mixture.components), purity=tr_rho2)
    report = PurityReport(
        hbar=mixture.hbar,
        components=len(mixture.components),
        weights=list(mixture.weights),
        purity=tr_rho2,
        max_off_diagonal=orthonormality.max_off_diagonal,
        max_diagonal_deviation=orthonormality.max_diagonal_deviation,
        eta=eta,
        phase_space_purity=ps_purity,
        transition=transition,
    )
    return report, exit_code


def add_parsers(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    purity_parser = subparsers.add_parser("purity", help="purity of a mixture manifest")
    purity_parser.add_argument("manifest", help="mixture manifest (JSON)")
    purity_parser.add_argument(
        "--eta", type=float, default=None, help="also check the mixture at this eta"
    )
    purity_parser.set_defaults(
        handler=lambda args, config: cmd_purity(args.manifest, config, args.eta)
    )

    transition_parser = subparsers.add_parser(
        "transition", help="purity implied by changing hbar to eta"
    )
    transition_parser.add_argument("purity", type=float, help="purity Tr(rho^2) at hbar")
    # Own dest: "hbar" is taken by the global --hbar flag
    transition_parser.add_argument(
        "source_hbar", type=float, metavar="hbar", help="Planck value the purity refers to"
    )
    transition_parser.add_argument("eta", type=float)
    transition_parser.add_argument("n", type=int, help="number of modes")
    transition_parser.set_defaults(
        handler=lambda args, config: cmd_transition(
            args.purity, args.source_hbar, args.eta, args.n, config
        )
    )
