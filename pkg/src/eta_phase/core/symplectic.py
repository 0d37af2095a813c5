"""Symplectic linear algebra for covariance matrices.

Phase-space vectors use the block convention z = (x_1..x_n, p_1..p_n), so the
standard symplectic form is J = [[0, I], [-I, 0]].
"""

from dataclasses import dataclass, field

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from eta_phase.config import ToleranceSettings, get_settings
from eta_phase.utils.exceptions import (
    DomainError,
    InvalidDimensionError,
    InvalidParameterError,
    NumericalInstabilityError,
)

logger = structlog.get_logger()

FloatMatrix = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric positive-definite 2n×2n matrix Σ, in units of action."""

    entries: FloatMatrix

    def __post_init__(self) -> None:
        matrix = np.array(self.entries, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidDimensionError(
                "Covariance matrix must be square", {"shape": list(matrix.shape)}
            )
        if matrix.shape[0] == 0 or matrix.shape[0] % 2 != 0:
            raise InvalidDimensionError(
                "Covariance matrix must have an even, nonzero number of rows",
                {"rows": matrix.shape[0]},
            )
        if not np.all(np.isfinite(matrix)):
            raise DomainError("Covariance matrix has non-finite entries")

        tolerances = get_settings().tolerances
        scale = float(np.max(np.abs(matrix)))
        asymmetry = float(np.max(np.abs(matrix - matrix.T)))
        if asymmetry > tolerances.symmetry_rtol * scale:
            raise DomainError(
                "Covariance matrix is not symmetric",
                {"asymmetry": asymmetry, "limit": tolerances.symmetry_rtol * scale},
            )

        matrix = 0.5 * (matrix + matrix.T)
        smallest = float(linalg.eigvalsh(matrix)[0])
        if smallest <= 0:
            raise DomainError(
                f"Covariance matrix is not positive definite (smallest eigenvalue {smallest:.6g})",
                {"smallest_eigenvalue": smallest},
            )

        matrix.setflags(write=False)
        object.__setattr__(self, "entries", matrix)

    @classmethod
    def from_array(cls, matrix: ArrayLike) -> "CovarianceMatrix":
        """Build a validated covariance matrix from any 2-D array-like."""
        return cls(np.asarray(matrix, dtype=np.float64))

    @property
    def n(self) -> int:
        """Number of modes."""
        return self.entries.shape[0] // 2

    def congruent(self, transform: ArrayLike) -> "CovarianceMatrix":
        """Return SᵀΣS for a 2n×2n matrix S."""
        s = np.asarray(transform, dtype=np.float64)
        return CovarianceMatrix(s.T @ self.entries @ s)

    def scaled(self, factor: float) -> "CovarianceMatrix":
        return CovarianceMatrix(factor * self.entries)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """The n symplectic eigenvalues λ_1 ≤ … ≤ λ_n of a covariance matrix."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values or any(v <= 0 for v in self.values):
            raise DomainError("Symplectic eigenvalues must be positive", {"values": self.values})
        if any(a > b for a, b in zip(self.values, self.values[1:], strict=False)):
            raise DomainError("Symplectic eigenvalues must be sorted", {"values": self.values})

    @property
    def minimum(self) -> float:
        return self.values[0]

    @property
    def threshold(self) -> float:
        """Largest |η| for which the Gaussian is quantum: 2λ_min."""
        return 2.0 * self.values[0]


@dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """Σ = SᵀDS with S symplectic and D = diag(Λ, Λ)."""

    S: FloatMatrix
    D: FloatMatrix
    symplectic_residual: float = 0.0
    reconstruction_residual: float = 0.0

    @property
    def spectrum(self) -> SymplecticSpectrum:
        n = self.D.shape[0] // 2
        return SymplecticSpectrum(tuple(float(v) for v in np.diag(self.D)[:n]))


@dataclass(frozen=True)
class PositivityReport:
    """Outcome of the test Σ + (iη/2)J ≥ 0 ⟺ |η| ≤ 2λ_min."""

    eta: float
    threshold: float
    margin: float  # threshold − |η|
    boundary: bool
    is_quantum: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "is_quantum", self.margin >= 0 or self.boundary)


def standard_symplectic_matrix(n: int) -> FloatMatrix:
    """Return J = [[0, I], [-I, 0]] of size 2n."""
    if n < 1:
        raise InvalidDimensionError("Number of modes must be at least 1", {"n": n})
    identity = np.identity(n)
    zeros = np.zeros((n, n))
    return np.block([[zeros, identity], [-identity, zeros]])


def _symmetric_root(sigma: CovarianceMatrix) -> FloatMatrix:
    """Σ^{1/2} from the symmetric eigendecomposition."""
    eigenvalues, vectors = linalg.eigh(sigma.entries)
    root = (vectors * np.sqrt(eigenvalues)) @ vectors.T
    return 0.5 * (root + root.T)


def _skew_form(sigma: CovarianceMatrix, root: FloatMatrix) -> FloatMatrix:
    """K = Σ^{1/2} J Σ^{1/2}, antisymmetrized against rounding."""
    k = root @ standard_symplectic_matrix(sigma.n) @ root
    return 0.5 * (k - k.T)


def symplectic_spectrum(
    sigma: CovarianceMatrix,
    tolerances: ToleranceSettings | None = None,
) -> SymplecticSpectrum:
    """Symplectic eigenvalues of Σ from the singular values of Σ^{1/2}JΣ^{1/2}.

    Each singular value of the skew matrix appears twice; they are sorted,
    paired with their neighbour and averaged.

    Raises:
        NumericalInstabilityError: if a pair disagrees beyond the pairing band
            or the product of squares misses det Σ.
    """
    tol = tolerances or get_settings().tolerances
    root = _symmetric_root(sigma)
    singular = np.sort(linalg.svdvals(_skew_form(sigma, root)))
    pairs = singular.reshape(sigma.n, 2)

    spread = np.abs(pairs[:, 1] - pairs[:, 0]) / pairs.max(axis=1)
    worst = float(spread.max())
    if worst > tol.pairing_rtol:
        raise NumericalInstabilityError(
            "Singular values of the skew form do not pair up", worst, tol.pairing_rtol
        )
    values = pairs.mean(axis=1)

    sign, logdet = np.linalg.slogdet(sigma.entries)
    log_product = float(2.0 * np.sum(np.log(values)))
    det_error = abs(np.expm1(log_product - logdet))
    if sign <= 0 or det_error > tol.spectrum_det_rtol:
        raise NumericalInstabilityError(
            "Symplectic spectrum does not reproduce det(Sigma)", det_error, tol.spectrum_det_rtol
        )

    return SymplecticSpectrum(tuple(float(v) for v in values))


def williamson(
    sigma: CovarianceMatrix,
    tolerances: ToleranceSettings | None = None,
) -> WilliamsonDecomposition:
    """Symplectic (Williamson) diagonalization Σ = SᵀDS.

    K = Σ^{1/2}JΣ^{1/2} is brought to real canonical form by an orthogonal O
    (real Schur form, 2×2 blocks made positive above the diagonal and
    regrouped into the (x, p) convention) so that OᵀKO = JD. Then
    S = D^{-1/2}OᵀΣ^{1/2}. S is defined up to an orthogonal-symplectic factor;
    only the residual checks are the contract.
    """
    tol = tolerances or get_settings().tolerances
    n = sigma.n
    root = _symmetric_root(sigma)
    t, o = linalg.schur(_skew_form(sigma, root), output="real")

    lambdas = np.empty(n)
    for i in range(n):
        upper, lower = t[2 * i, 2 * i + 1], t[2 * i + 1, 2 * i]
        lambdas[i] = np.sqrt(abs(upper * lower))
        if upper < 0:
            o[:, [2 * i, 2 * i + 1]] = o[:, [2 * i + 1, 2 * i]]

    order = np.argsort(lambdas, kind="stable")
    lambdas = lambdas[order]
    canonical = np.hstack([o[:, 2 * order], o[:, 2 * order + 1]])

    d = np.diag(np.concatenate([lambdas, lambdas]))
    inverse_sqrt_d = np.concatenate([lambdas, lambdas]) ** -0.5
    s = inverse_sqrt_d[:, np.newaxis] * (canonical.T @ root)

    j = standard_symplectic_matrix(n)
    scale = max(1.0, float(np.max(np.abs(s))))
    symplectic_residual = float(np.max(np.abs(s.T @ j @ s - j))) / scale**2
    reconstruction_residual = float(
        np.max(np.abs(s.T @ d @ s - sigma.entries)) / np.max(np.abs(sigma.entries))
    )

    if symplectic_residual > tol.symplectic_atol:
        raise NumericalInstabilityError(
            "Williamson factor is not symplectic", symplectic_residual, tol.symplectic_atol
        )
    if reconstruction_residual > tol.reconstruction_rtol:
        raise NumericalInstabilityError(
            "Williamson factors do not reconstruct Sigma",
            reconstruction_residual,
            tol.reconstruction_rtol,
        )

    logger.debug(
        "Williamson decomposition computed",
        n=n,
        symplectic_residual=symplectic_residual,
        reconstruction_residual=reconstruction_residual,
    )
    return WilliamsonDecomposition(
        S=s,
        D=d,
        symplectic_residual=symplectic_residual,
        reconstruction_residual=reconstruction_residual,
    )


def positivity_from_threshold(
    threshold: float,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> PositivityReport:
    """Compare |η| with a known quantum threshold 2λ_min."""
    tol = tolerances or get_settings().tolerances
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})
    margin = threshold - abs(eta)
    return PositivityReport(
        eta=eta,
        threshold=threshold,
        margin=margin,
        boundary=abs(margin) <= tol.boundary_rtol * threshold,
    )


def eta_positivity(
    sigma: CovarianceMatrix,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> PositivityReport:
    """Decide Σ + (iη/2)J ≥ 0 through |η| ≤ 2λ_min.

    Equality cannot be certified in floating point, so margins inside the
    boundary band are flagged ``boundary`` and counted as quantum.
    """
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})
    spectrum = symplectic_spectrum(sigma, tolerances)
    return positivity_from_threshold(spectrum.threshold, eta, tolerances)
