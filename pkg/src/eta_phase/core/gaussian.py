"""Gaussian phase-space distributions ρ_Σ and their status as η varies."""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from eta_phase.config import ToleranceSettings, get_settings
from eta_phase.core.symplectic import (
    CovarianceMatrix,
    SymplecticSpectrum,
    positivity_from_threshold,
    symplectic_spectrum,
)
from eta_phase.core.wigner import PhaseSpaceFunction, momentum_axis
from eta_phase.utils.exceptions import (
    DomainError,
    InvalidDimensionError,
    InvalidParameterError,
    NotAQuantumStateError,
)

logger = structlog.get_logger()


class Verdict(str, Enum):
    """Status of a phase-space distribution at a given η."""

    CLASSICAL = "Classical"
    MIXED_QUANTUM = "MixedQuantum"
    PURE_QUANTUM = "PureQuantum"
    BOUNDARY = "Boundary"


@dataclass(frozen=True, eq=False)
class GaussianState:
    """The normal distribution ρ_Σ with mean vector and covariance Σ."""

    mean: NDArray[np.float64]
    sigma: CovarianceMatrix

    def __post_init__(self) -> None:
        mean = np.array(self.mean, dtype=np.float64).reshape(-1)
        if mean.shape != (2 * self.sigma.n,):
            raise InvalidDimensionError(
                "Mean vector length must be 2n",
                {"length": mean.shape[0], "n": self.sigma.n},
            )
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)

    @classmethod
    def centered(cls, sigma: CovarianceMatrix | ArrayLike) -> "GaussianState":
        cov = sigma if isinstance(sigma, CovarianceMatrix) else CovarianceMatrix.from_array(sigma)
        return cls(mean=np.zeros(2 * cov.n), sigma=cov)

    @property
    def n(self) -> int:
        return self.sigma.n


@dataclass(frozen=True)
class EtaClassification:
    """Classification of a Gaussian state at one value of η."""

    verdict: Verdict
    eta: float
    threshold: float  # 2λ_min
    margin: float  # threshold − |η|
    purity: float | None  # None when classical
    spectrum: tuple[float, ...]

    @property
    def is_quantum(self) -> bool:
        return self.verdict is not Verdict.CLASSICAL


def single_mode(sigma_x: float, sigma_p: float, sigma_xp: float = 0.0) -> GaussianState:
    """Centered one-mode Gaussian with widths σ_X, σ_P and covariance σ_XP."""
    if sigma_x <= 0 or sigma_p <= 0:
        raise DomainError(
            "Gaussian widths must be positive", {"sigma_x": sigma_x, "sigma_p": sigma_p}
        )
    return GaussianState.centered([[sigma_x**2, sigma_xp], [sigma_xp, sigma_p**2]])


def rotated(state: GaussianState, angle: float) -> GaussianState:
    """Apply the phase-space rotation by ``angle`` to every mode.

    Rotations are orthogonal and symplectic, so the symplectic spectrum and
    hence every η-classification are unchanged.
    """
    n = state.n
    c, s = np.cos(angle), np.sin(angle)
    identity = np.identity(n)
    rotation = np.block([[c * identity, s * identity], [-s * identity, c * identity]])
    return GaussianState(
        mean=rotation @ state.mean,
        sigma=CovarianceMatrix(rotation @ state.sigma.entries @ rotation.T),
    )


def density(state: GaussianState, z: ArrayLike) -> float | NDArray[np.float64]:
    """Evaluate (2π)^{-n} det(Σ)^{-1/2} exp(-½ (z−m)ᵀΣ^{-1}(z−m)).

    ``z`` may be a single 2n-vector or an array whose last axis has length 2n.
    """
    points = np.asarray(z, dtype=np.float64)
    if points.shape[-1] != 2 * state.n:
        raise InvalidDimensionError(
            "Phase-space point must have 2n coordinates",
            {"shape": list(points.shape), "n": state.n},
        )
    factor = linalg.cho_factor(state.sigma.entries)
    log_det = 2.0 * float(np.sum(np.log(np.diag(factor[0]))))

    shifted = points - state.mean
    flat = shifted.reshape(-1, 2 * state.n)
    solved = linalg.cho_solve(factor, flat.T).T
    quadratic = np.einsum("ij,ij->i", flat, solved).reshape(shifted.shape[:-1])

    values = np.exp(-0.5 * quadratic - state.n * np.log(2.0 * np.pi) - 0.5 * log_det)
    if values.ndim == 0:
        return float(values)
    return values


def _purity_value(state: GaussianState, eta: float) -> float:
    """(|η|/2)^n det(Σ)^{-1/2}, without the quantum check."""
    _, log_det = np.linalg.slogdet(state.sigma.entries)
    return float(np.exp(state.n * np.log(abs(eta) / 2.0) - 0.5 * log_det))


def quantum_threshold(
    state: GaussianState,
    tolerances: ToleranceSettings | None = None,
) -> float:
    """Largest |η| at which ρ_Σ is still an η-Wigner distribution: 2λ_min."""
    return symplectic_spectrum(state.sigma, tolerances).threshold


def purity_eta(
    state: GaussianState,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> float:
    """Purity Tr(ρ̂²) of the η-density operator of ρ_Σ.

    Uses |η| so that time reversal η ↦ −η leaves the purity unchanged.

    Raises:
        InvalidParameterError: if η = 0.
        NotAQuantumStateError: if |η| > 2λ_min outside the boundary band.
    """
    report = positivity_from_threshold(quantum_threshold(state, tolerances), eta, tolerances)
    if not report.is_quantum:
        raise NotAQuantumStateError(eta, report.threshold)
    return _purity_value(state, eta)


def _classify_with_spectrum(
    state: GaussianState,
    spectrum: SymplecticSpectrum,
    eta: float,
    tol: ToleranceSettings,
) -> EtaClassification:
    report = positivity_from_threshold(spectrum.threshold, eta, tol)
    if not report.is_quantum:
        verdict, purity = Verdict.CLASSICAL, None
    else:
        half = abs(eta) / 2.0
        purity = _purity_value(state, eta)
        if all(abs(value - half) <= tol.pure_rtol * half for value in spectrum.values):
            verdict = Verdict.PURE_QUANTUM
        elif report.boundary:
            verdict = Verdict.BOUNDARY
        else:
            verdict = Verdict.MIXED_QUANTUM

    return EtaClassification(
        verdict=verdict,
        eta=eta,
        threshold=report.threshold,
        margin=report.margin,
        purity=purity,
        spectrum=spectrum.values,
    )


def classify(
    state: GaussianState,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> EtaClassification:
    """Classify ρ_Σ at η as classical, mixed quantum, pure quantum or boundary.

    Classical when |η| > 2λ_min. Among quantum cases the state is pure when
    every symplectic eigenvalue equals |η|/2 (pure band), which is the
    condition det Σ = (η/2)^{2n} combined with λ_j ≥ |η|/2. A non-pure state
    whose margin sits inside the boundary band is reported as Boundary.
    """
    tol = tolerances or get_settings().tolerances
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})
    return _classify_with_spectrum(state, symplectic_spectrum(state.sigma, tol), eta, tol)


def sweep(
    state: GaussianState,
    eta_values: Sequence[float],
    tolerances: ToleranceSettings | None = None,
) -> list[EtaClassification]:
    """Classify ρ_Σ at each η of an ordered list."""
    tol = tolerances or get_settings().tolerances
    if len(eta_values) == 0:
        raise InvalidParameterError("eta sweep needs at least one value")
    if any(eta == 0 for eta in eta_values):
        raise InvalidParameterError(
            "eta must be a non-zero real number", {"eta_values": list(eta_values)}
        )

    spectrum = symplectic_spectrum(state.sigma, tol)
    results = [_classify_with_spectrum(state, spectrum, float(eta), tol) for eta in eta_values]

    logger.info(
        "Eta sweep classified",
        points=len(results),
        threshold=spectrum.threshold,
        classical=sum(r.verdict is Verdict.CLASSICAL for r in results),
    )
    return results


def uncertainty_margin(state: GaussianState, eta: float) -> float:
    """Robertson–Schrödinger margin σ_X²σ_P² − σ_XP² − η²/4 of a one-mode state.

    Nonnegative exactly when the state is quantum at η, since for one mode
    det Σ = (λ^σ)².
    """
    if state.n != 1:
        raise InvalidDimensionError("Uncertainty margin is defined for one mode", {"n": state.n})
    return float(np.linalg.det(state.sigma.entries) - eta**2 / 4.0)


def gaussian_phase_space(
    state: GaussianState,
    x0: float,
    dx: float,
    size: int,
    eta: float,
) -> PhaseSpaceFunction:
    """Sample a one-mode ρ_Σ on the phase-space grid an η-Wigner transform would use."""
    if state.n != 1:
        raise InvalidDimensionError("Grid sampling is defined for one mode", {"n": state.n})
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})
    x = x0 + dx * np.arange(size)
    p0, dp = momentum_axis(dx, size, eta)
    p = p0 + dp * np.arange(size)
    points = np.stack(np.meshgrid(x, p, indexing="ij"), axis=-1)
    return PhaseSpaceFunction(
        x0=x0,
        dx=dx,
        p0=p0,
        dp=dp,
        eta=eta,
        samples=np.asarray(density(state, points)),
    )


def moment_matched(w: PhaseSpaceFunction) -> GaussianState:
    """One-mode Gaussian with the first and second moments of sign(η)·W.

    Raises:
        DomainError: if the moments do not form a positive definite covariance.
    """
    weights = np.sign(w.eta) * w.samples * w.dx * w.dp
    total = float(weights.sum())
    if total <= 0:
        raise DomainError("Phase-space function has no positive mass", {"integral": total})
    x, p = np.meshgrid(w.x_points, w.p_points, indexing="ij")
    mean = np.array([np.sum(weights * x), np.sum(weights * p)]) / total
    dx_, dp_ = x - mean[0], p - mean[1]
    cov = np.array(
        [
            [np.sum(weights * dx_ * dx_), np.sum(weights * dx_ * dp_)],
            [np.sum(weights * dx_ * dp_), np.sum(weights * dp_ * dp_)],
        ]
    ) / total
    return GaussianState(mean=mean, sigma=CovarianceMatrix.from_array(cov))
