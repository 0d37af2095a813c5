"""Finite mixed states and how their purity constrains a change of Planck parameter.

The trace conditions implemented here are necessary conditions only: passing
them says a target ensemble is not ruled out, never that one exists.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog
from numpy.typing import NDArray

from eta_phase.config import ToleranceSettings, get_settings
from eta_phase.core.wigner import GridWavefunction, PhaseSpaceFunction, wigner_transform
from eta_phase.utils.exceptions import (
    GridMismatchError,
    InvalidParameterError,
    InvalidStateError,
)

logger = structlog.get_logger()


class TransitionKind(str, Enum):
    """Whether a purity is reachable after changing ħ to η."""

    FEASIBLE = "Feasible"
    PURE_ONLY = "PureOnly"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True, eq=False)
class OrthonormalityReport:
    """Gram matrix of a family of grid wavefunctions and its verdict."""

    gram: NDArray[np.complex128]
    max_off_diagonal: float
    max_diagonal_deviation: float
    passed: bool


@dataclass(frozen=True)
class TransitionVerdict:
    """Purity implied at η by |η|^n·Tr(ρ̂²) = ħ^n·Tr(ρ̂_η²)."""

    source_purity: float
    hbar: float
    eta: float
    n: int
    implied_purity: float
    verdict: TransitionKind


@dataclass(frozen=True)
class TransitionPairCheck:
    """Both sides of (2πħ)^{-n}Σα_j² = (2π|η|)^{-n}Σβ_j² for n = 1."""

    holds: bool
    residual: float
    source_side: float
    target_side: float


def validate_orthonormal(
    states: Sequence[GridWavefunction],
    tolerances: ToleranceSettings | None = None,
) -> OrthonormalityReport:
    """Gram matrix of ``states``; passes when it is the identity within tolerance."""
    tol = tolerances or get_settings().tolerances
    if not states:
        raise InvalidParameterError("Orthonormality check needs at least one state")
    first = states[0]
    if any(not first.same_grid(state) for state in states[1:]):
        raise GridMismatchError("States live on different grids")

    matrix = np.stack([state.samples for state in states])
    gram = (np.conj(matrix) @ matrix.T) * first.dx
    off_diagonal = gram - np.diag(np.diag(gram))
    max_off = float(np.max(np.abs(off_diagonal))) if len(states) > 1 else 0.0
    max_diag = float(np.max(np.abs(np.diag(gram).real - 1.0)))

    return OrthonormalityReport(
        gram=gram,
        max_off_diagonal=max_off,
        max_diagonal_deviation=max_diag,
        passed=max_off <= tol.orthogonality_atol and max_diag <= tol.normalization_atol,
    )


@dataclass(frozen=True, eq=False)
class MixedState:
    """ρ̂ = Σ_j α_j|ψ_j⟩⟨ψ_j| with orthonormal ψ_j, asserted quantum at ``hbar``."""

    components: tuple[tuple[float, GridWavefunction], ...]
    hbar: float

    def __post_init__(self) -> None:
        tol = get_settings().tolerances
        if self.hbar <= 0:
            raise InvalidParameterError("hbar must be positive", {"hbar": self.hbar})
        if not self.components:
            raise InvalidStateError("A mixed state needs at least one component")
        if any(weight < 0 for weight, _ in self.components):
            raise InvalidStateError(
                "Weights must be nonnegative", {"weights": [w for w, _ in self.components]}
            )

        kept = tuple((float(w), state) for w, state in self.components if w >= tol.weight_floor)
        if len(kept) < len(self.components):
            logger.warning(
                "Dropped negligible mixture weights",
                dropped=len(self.components) - len(kept),
                floor=tol.weight_floor,
            )
        if not kept:
            raise InvalidStateError("All weights are negligible")

        total = math.fsum(w for w, _ in kept)
        if abs(total - 1.0) > tol.weight_sum_atol:
            raise InvalidStateError("Weights must sum to one", {"sum": total})

        report = validate_orthonormal([state for _, state in kept], tol)
        if not report.passed:
            raise InvalidStateError(
                "Mixture components are not orthonormal",
                {
                    "max_off_diagonal": report.max_off_diagonal,
                    "max_diagonal_deviation": report.max_diagonal_deviation,
                },
            )
        object.__setattr__(self, "components", kept)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.components)

    @property
    def states(self) -> tuple[GridWavefunction, ...]:
        return tuple(state for _, state in self.components)


def eta_wigner_distribution(
    mixture: MixedState,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> PhaseSpaceFunction:
    """P_η = Σ_j α_j W_ηψ_j on the components' shared grid."""
    transforms = [wigner_transform(state, eta, tolerances) for state in mixture.states]
    weights = mixture.weights
    total = PhaseSpaceFunction(
        x0=transforms[0].x0,
        dx=transforms[0].dx,
        p0=transforms[0].p0,
        dp=transforms[0].dp,
        eta=eta,
        samples=weights[0] * transforms[0].samples,
        warnings=transforms[0].warnings,
    )
    for weight, transform in zip(weights[1:], transforms[1:], strict=True):
        total = total.combine(weight, transform)
    return total


def purity(mixture: MixedState) -> float:
    """Tr(ρ̂²) = Σ_j α_j² for an orthonormal ensemble."""
    return math.fsum(w * w for w in mixture.weights)


def transition_purity(
    source_purity: float,
    hbar: float,
    eta: float,
    n: int,
    tolerances: ToleranceSettings | None = None,
) -> TransitionVerdict:
    """Solve |η|^n·Tr(ρ̂²) = ħ^n·Tr(ρ̂_η²) for the purity at η.

    Feasible when the implied purity lies in (0, 1), PureOnly when it equals 1
    within tolerance, Infeasible when it exceeds 1.
    """
    tol = tolerances or get_settings().tolerances
    if not 0 < source_purity <= 1:
        raise InvalidParameterError("Purity must lie in (0, 1]", {"purity": source_purity})
    if hbar <= 0:
        raise InvalidParameterError("hbar must be positive", {"hbar": hbar})
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})
    if n < 1:
        raise InvalidParameterError("Number of modes must be at least 1", {"n": n})

    implied = (abs(eta) / hbar) ** n * source_purity
    if abs(implied - 1.0) <= tol.transition_atol:
        verdict = TransitionKind.PURE_ONLY
    elif implied < 1.0:
        verdict = TransitionKind.FEASIBLE
    else:
        verdict = TransitionKind.INFEASIBLE

    return TransitionVerdict(
        source_purity=source_purity,
        hbar=hbar,
        eta=eta,
        n=n,
        implied_purity=implied,
        verdict=verdict,
    )


def transition_boundary(source_purity: float, hbar: float, n: int) -> float:
    """The |η| at which the implied purity reaches one: ħ·Tr(ρ̂²)^{-1/n}."""
    if not 0 < source_purity <= 1:
        raise InvalidParameterError("Purity must lie in (0, 1]", {"purity": source_purity})
    return float(hbar * source_purity ** (-1.0 / n))


def trace_condition(
    alphas: Sequence[float],
    hbar: float,
    betas: Sequence[float],
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> TransitionPairCheck:
    """Compare (2πħ)^{-1}Σα_j² with (2π|η|)^{-1}Σβ_j²."""
    tol = tolerances or get_settings().tolerances
    for name, weights in (("alpha", alphas), ("beta", betas)):
        if not weights or any(w < 0 for w in weights):
            raise InvalidParameterError(f"{name} weights must be nonnegative", {name: list(weights)})
        if abs(math.fsum(weights) - 1.0) > tol.weight_sum_atol:
            raise InvalidParameterError(f"{name} weights must sum to one", {name: list(weights)})
    if hbar <= 0 or eta == 0:
        raise InvalidParameterError(
            "hbar must be positive and eta non-zero", {"hbar": hbar, "eta": eta}
        )

    source_side = math.fsum(a * a for a in alphas) / (2 * math.pi * hbar)
    target_side = math.fsum(b * b for b in betas) / (2 * math.pi * abs(eta))
    residual = abs(source_side - target_side) / max(source_side, target_side)
    return TransitionPairCheck(
        holds=residual <= tol.pair_rtol,
        residual=residual,
        source_side=source_side,
        target_side=target_side,
    )


def check_transition_pair(
    source: MixedState,
    weights_target: Sequence[float],
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> TransitionPairCheck:
    """Necessary condition for Σα_j Wψ_j = Σβ_j W_ηφ_j to admit a solution."""
    return trace_condition(source.weights, source.hbar, weights_target, eta, tolerances)
