"""One-mode grid wavefunctions and their η-Wigner representations.

Discretization: a wavefunction lives on x_j = x0 + j·dx, j < N (N a power of
two). The η-Wigner integral over y is sampled at y = 2m·dx so that x ± y/2
fall on grid points; the matching momentum axis is p_k = p0 + k·dp with
dp = π|η|/(N·dx) and p0 = −N·dp/2, hence dp·(2dx)·N = 2π|η|. Samples
outside the grid count as zero.

The prefactor 1/(2πη) keeps its sign, so for η < 0 the distribution
integrates to −1 and W_ηψ = −W_{−η}ψ* holds exactly.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import special

from eta_phase.config import ToleranceSettings, get_settings
from eta_phase.utils.exceptions import (
    GridMismatchError,
    InvalidDimensionError,
    InvalidParameterError,
    NumericalInstabilityError,
)

logger = structlog.get_logger()

ComplexVector = NDArray[np.complex128]
FloatArray = NDArray[np.float64]


def _require_eta(eta: float) -> None:
    if eta == 0:
        raise InvalidParameterError("eta must be a non-zero real number", {"eta": eta})


def momentum_axis(dx: float, size: int, eta: float) -> tuple[float, float]:
    """Return (p0, dp) of the momentum grid paired with a position grid."""
    _require_eta(eta)
    dp = math.pi * abs(eta) / (size * dx)
    return -size * dp / 2.0, dp


@dataclass(frozen=True, eq=False)
class GridWavefunction:
    """Complex samples ψ(x0 + k·dx), k = 0..N−1."""

    x0: float
    dx: float
    samples: ComplexVector

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.complex128).reshape(-1)
        size = samples.shape[0]
        if size < 2 or size & (size - 1):
            raise InvalidDimensionError("Grid size must be a power of two", {"size": size})
        if self.dx <= 0:
            raise InvalidParameterError("Grid spacing must be positive", {"dx": self.dx})
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(
        cls,
        func: Callable[[FloatArray], ArrayLike],
        x0: float,
        dx: float,
        size: int,
    ) -> "GridWavefunction":
        """Sample ``func`` on the grid x0 + k·dx."""
        x = x0 + dx * np.arange(size)
        return cls(x0=x0, dx=dx, samples=np.asarray(func(x), dtype=np.complex128))

    @property
    def size(self) -> int:
        return int(self.samples.shape[0])

    @property
    def points(self) -> FloatArray:
        return self.x0 + self.dx * np.arange(self.size)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.dx))

    def normalized(self) -> "GridWavefunction":
        norm = self.norm()
        if norm == 0:
            raise InvalidParameterError("Cannot normalize the zero wavefunction")
        return GridWavefunction(self.x0, self.dx, self.samples / norm)

    def conjugate(self) -> "GridWavefunction":
        return GridWavefunction(self.x0, self.dx, np.conj(self.samples))

    def is_normalized(self, tolerances: ToleranceSettings | None = None) -> bool:
        tol = tolerances or get_settings().tolerances
        return abs(self.norm() ** 2 - 1.0) <= tol.normalization_atol

    def edge_mass(self, fraction: float) -> float:
        """|ψ|²·dx mass in the outer ``fraction`` of the grid, split between both ends."""
        band = max(1, int(fraction * self.size / 2))
        density = np.abs(self.samples) ** 2
        return float((density[:band].sum() + density[-band:].sum()) * self.dx)

    def same_grid(self, other: "GridWavefunction") -> bool:
        return (
            self.size == other.size
            and math.isclose(self.x0, other.x0, rel_tol=1e-12, abs_tol=1e-12 * self.dx)
            and math.isclose(self.dx, other.dx, rel_tol=1e-12)
        )


@dataclass(frozen=True, eq=False)
class PhaseSpaceFunction:
    """Real samples of a quasi-distribution on the (x, p) grid built for η."""

    x0: float
    dx: float
    p0: float
    dp: float
    eta: float
    samples: FloatArray
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _require_eta(self.eta)
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 2:
            raise InvalidDimensionError(
                "Phase-space samples must be a 2-D array", {"shape": list(samples.shape)}
            )
        reciprocity = self.dp * 2.0 * self.dx * samples.shape[1]
        if not math.isclose(reciprocity, 2.0 * math.pi * abs(self.eta), rel_tol=1e-9):
            raise GridMismatchError(
                "Momentum step does not match the position grid and eta",
                {"dp": self.dp, "dx": self.dx, "M": samples.shape[1], "eta": self.eta},
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.samples.shape[0]), int(self.samples.shape[1])

    @property
    def x_points(self) -> FloatArray:
        return self.x0 + self.dx * np.arange(self.shape[0])

    @property
    def p_points(self) -> FloatArray:
        return self.p0 + self.dp * np.arange(self.shape[1])

    def integral(self) -> float:
        return float(self.samples.sum() * self.dx * self.dp)

    def compatible_with(self, other: "PhaseSpaceFunction") -> bool:
        return (
            self.shape == other.shape
            and self.eta == other.eta
            and math.isclose(self.x0, other.x0, rel_tol=1e-12, abs_tol=1e-12 * self.dx)
            and math.isclose(self.dx, other.dx, rel_tol=1e-12)
            and math.isclose(self.p0, other.p0, rel_tol=1e-12, abs_tol=1e-12 * self.dp)
            and math.isclose(self.dp, other.dp, rel_tol=1e-12)
        )

    def combine(self, weight: float, other: "PhaseSpaceFunction") -> "PhaseSpaceFunction":
        """Return self + weight·other on the shared grid."""
        if not self.compatible_with(other):
            raise GridMismatchError("Phase-space grids differ")
        return PhaseSpaceFunction(
            x0=self.x0,
            dx=self.dx,
            p0=self.p0,
            dp=self.dp,
            eta=self.eta,
            samples=self.samples + weight * other.samples,
            warnings=self.warnings + other.warnings,
        )


# ---------------------------------------------------------------------------
# Test-state constructors
# ---------------------------------------------------------------------------


def centered_origin(size: int, dx: float) -> float:
    """Grid origin that puts x = 0 on sample N/2."""
    return -size * dx / 2.0


def coherent_state(
    x0: float,
    dx: float,
    size: int,
    sigma_x: float,
    x_center: float = 0.0,
    p_center: float = 0.0,
    eta: float = 1.0,
) -> GridWavefunction:
    """Minimum-uncertainty Gaussian with position variance σ_X².

    ψ(x) = (2πσ_X²)^{-1/4} exp(−(x−x_c)²/4σ_X² + i p_c x/η); its η-Wigner
    transform is the normal density with σ_P = |η|/(2σ_X).
    """
    if sigma_x <= 0:
        raise InvalidParameterError("Width must be positive", {"sigma_x": sigma_x})
    _require_eta(eta)

    def amplitude(x: FloatArray) -> ComplexVector:
        envelope = (2 * np.pi * sigma_x**2) ** -0.25 * np.exp(-((x - x_center) ** 2) / (4 * sigma_x**2))
        return envelope * np.exp(1j * p_center * x / eta)

    return GridWavefunction.from_function(amplitude, x0, dx, size)


def hermite_state(x0: float, dx: float, size: int, k: int, eta: float = 1.0) -> GridWavefunction:
    """k-th normalized harmonic-oscillator eigenfunction with length scale √|η|."""
    if k < 0:
        raise InvalidParameterError("Hermite index must be nonnegative", {"k": k})
    _require_eta(eta)
    scale = math.sqrt(abs(eta))
    norm = (math.pi * abs(eta)) ** -0.25 / math.sqrt(2.0**k * math.factorial(k))

    def amplitude(x: FloatArray) -> FloatArray:
        xi = x / scale
        return norm * special.eval_hermite(k, xi) * np.exp(-(xi**2) / 2.0)

    return GridWavefunction.from_function(amplitude, x0, dx, size)


def chirped_gaussian(
    x0: float,
    dx: float,
    size: int,
    sigma_x: float,
    chirp: float,
    x_center: float = 0.0,
) -> GridWavefunction:
    """Coherent-state envelope multiplied by the chirp exp(i·chirp·x²)."""
    envelope = coherent_state(x0, dx, size, sigma_x, x_center=x_center)
    x = envelope.points
    return GridWavefunction(x0, dx, envelope.samples * np.exp(1j * chirp * x**2))


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def inner_product(psi: GridWavefunction, phi: GridWavefunction) -> complex:
    """⟨ψ|φ⟩ by grid quadrature."""
    if not psi.same_grid(phi):
        raise GridMismatchError("Wavefunctions live on different grids")
    return complex(np.sum(np.conj(psi.samples) * phi.samples) * psi.dx)


def _correlation(psi: GridWavefunction) -> tuple[NDArray[np.complex128], NDArray[np.int_]]:
    """C_j[m] = ψ[j+m]·ψ*[j−m] for m = −N/2..N/2−1, zero off the grid."""
    size = psi.size
    j = np.arange(size)[:, np.newaxis]
    m = np.arange(-size // 2, size // 2)[np.newaxis, :]
    plus, minus = j + m, j - m
    valid = (plus >= 0) & (plus < size) & (minus >= 0) & (minus < size)
    corr = np.zeros((size, size), dtype=np.complex128)
    corr[valid] = psi.samples[plus[valid]] * np.conj(psi.samples[minus[valid]])
    return corr, m[0]


def _edge_warnings(psi: GridWavefunction, tol: ToleranceSettings) -> tuple[str, ...]:
    mass = psi.edge_mass(tol.edge_fraction)
    if mass <= tol.edge_mass_max:
        return ()
    logger.warning("Edge decay violated", edge_mass=mass, limit=tol.edge_mass_max)
    return (f"edge mass {mass:.3e} exceeds {tol.edge_mass_max:.1e}; grid truncation may bias results",)


def _real_part(values: NDArray[np.complex128], tol: ToleranceSettings) -> FloatArray:
    scale = float(np.max(np.abs(values.real))) if values.size else 0.0
    residual = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if scale > 0 and residual > tol.imaginary_rtol * scale:
        raise NumericalInstabilityError(
            "Wigner transform is not real", residual / scale, tol.imaginary_rtol
        )
    return np.ascontiguousarray(values.real)


def wigner_transform(
    psi: GridWavefunction,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> PhaseSpaceFunction:
    """η-Wigner transform W_ηψ(x, p) = (1/2πη)∫e^{−ipy/η}ψ(x+y/2)ψ*(x−y/2)dy.

    With y = 2m·dx the phase on the grid factors as (−1)^m·e^{∓2πikm/N}, so each
    row is one length-N DFT over m.
    """
    tol = tolerances or get_settings().tolerances
    _require_eta(eta)
    warnings = _edge_warnings(psi, tol)

    corr, m = _correlation(psi)
    corr *= np.where(m % 2 == 0, 1.0, -1.0)
    corr = np.fft.ifftshift(corr, axes=1)
    if eta > 0:
        spectrum = np.fft.fft(corr, axis=1)
    else:
        spectrum = psi.size * np.fft.ifft(corr, axis=1)

    p0, dp = momentum_axis(psi.dx, psi.size, eta)
    return PhaseSpaceFunction(
        x0=psi.x0,
        dx=psi.dx,
        p0=p0,
        dp=dp,
        eta=eta,
        samples=_real_part(spectrum * (psi.dx / (math.pi * eta)), tol),
        warnings=warnings,
    )


def wigner_transform_direct(
    psi: GridWavefunction,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> PhaseSpaceFunction:
    """Reference η-Wigner transform by direct summation over m, without FFTs."""
    tol = tolerances or get_settings().tolerances
    _require_eta(eta)
    corr, m = _correlation(psi)
    p0, dp = momentum_axis(psi.dx, psi.size, eta)
    p = p0 + dp * np.arange(psi.size)
    phases = np.exp(-1j * np.outer(2.0 * m * psi.dx, p) / eta)
    values = (corr @ phases) * (psi.dx / (math.pi * eta))
    return PhaseSpaceFunction(
        x0=psi.x0,
        dx=psi.dx,
        p0=p0,
        dp=dp,
        eta=eta,
        samples=_real_part(values, tol),
        warnings=_edge_warnings(psi, tol),
    )


def eta_fourier(psi: GridWavefunction, eta: float) -> GridWavefunction:
    """F_ηψ(p) = (2π|η|)^{-1/2}∫e^{−ipx/η}ψ(x)dx on the Wigner momentum grid.

    The returned wavefunction's ``x0``/``dx`` hold p0/dp. The momentum step is
    half the natural DFT step, so the sum runs over a zero-padded length 2N.
    """
    _require_eta(eta)
    size = psi.size
    p0, dp = momentum_axis(psi.dx, size, eta)
    j = np.arange(size)
    twisted = psi.samples * np.exp(-1j * p0 * j * psi.dx / eta)
    if eta > 0:
        spectrum = np.fft.fft(twisted, n=2 * size)[:size]
    else:
        spectrum = 2 * size * np.fft.ifft(twisted, n=2 * size)[:size]
    p = p0 + dp * j
    values = spectrum * np.exp(-1j * p * psi.x0 / eta) * psi.dx / math.sqrt(2 * math.pi * abs(eta))
    return GridWavefunction(x0=p0, dx=dp, samples=values)


def marginals(w: PhaseSpaceFunction) -> tuple[FloatArray, FloatArray]:
    """Return (∫W dp on the x-grid, ∫W dx on the p-grid).

    For a normalized ψ these are sign(η)·|ψ(x)|² and sign(η)·|F_ηψ(p)|².
    """
    return w.samples.sum(axis=1) * w.dp, w.samples.sum(axis=0) * w.dx


def moyal_overlap(w_psi: PhaseSpaceFunction, w_phi: PhaseSpaceFunction) -> float:
    """(2π|η|)∬W_ηψ·W_ηφ dx dp, which equals |⟨ψ|φ⟩|²."""
    if not w_psi.compatible_with(w_phi):
        raise GridMismatchError(
            "Phase-space functions were built on different grids or eta",
            {"eta": [w_psi.eta, w_phi.eta], "shape": [w_psi.shape, w_phi.shape]},
        )
    total = float(np.sum(w_psi.samples * w_phi.samples) * w_psi.dx * w_psi.dp)
    return 2.0 * math.pi * abs(w_psi.eta) * total


def phase_space_purity(w: PhaseSpaceFunction) -> float:
    """(2π|η|)∬W² dz: the purity of the operator whose η-Wigner function is W."""
    return moyal_overlap(w, w)


def conjugation_relation_check(
    psi: GridWavefunction,
    eta: float,
    tolerances: ToleranceSettings | None = None,
) -> float:
    """Max deviation between W_ηψ and −W_{−η}ψ* (one mode) on the shared grid."""
    if eta <= 0:
        raise InvalidParameterError("eta must be positive for the conjugation check", {"eta": eta})
    forward = wigner_transform(psi, eta, tolerances)
    reversed_ = wigner_transform(psi.conjugate(), -eta, tolerances)
    return float(np.max(np.abs(forward.samples + reversed_.samples)))


def _half_step_shift(rows: FloatArray) -> FloatArray:
    """Band-limited interpolation of each column to x + dx/2."""
    size = rows.shape[0]
    spectrum = np.fft.fft(rows, axis=0)
    spectrum[size // 2] = 0.0
    shift = np.exp(1j * np.pi * np.fft.fftfreq(size))[:, np.newaxis]
    return np.fft.ifft(spectrum * shift, axis=0).real


def weyl_apply(
    rho: PhaseSpaceFunction,
    psi: GridWavefunction,
    eta: float,
) -> GridWavefunction:
    """Apply the operator ρ̂ψ(x) = ∬e^{ip(x−y)/η}ρ(½(x+y), p)ψ(y) dy dp.

    The p-integral is an inverse DFT of ρ along p at each centre ½(x+y).
    Pairs with even index offset have their centre on the grid; odd offsets
    have it half-way between samples, where ρ is band-limited interpolated.
    For ρ = W_ηψ₀ the kernel is sign(η)·ψ₀(x)ψ₀*(y), so the operator is the
    projector on ψ₀ for η > 0 and its negative for η < 0.
    """
    _require_eta(eta)
    if not math.isclose(eta, rho.eta, rel_tol=1e-12):
        raise GridMismatchError("Symbol was built for a different eta", {"eta": eta, "symbol_eta": rho.eta})
    size = psi.size
    p0, dp = momentum_axis(psi.dx, size, eta)
    if (
        rho.shape != (size, size)
        or not math.isclose(rho.x0, psi.x0, rel_tol=1e-12, abs_tol=1e-12 * psi.dx)
        or not math.isclose(rho.dx, psi.dx, rel_tol=1e-12)
        or not math.isclose(rho.p0, p0, rel_tol=1e-12)
    ):
        raise GridMismatchError("Symbol grid does not match the wavefunction grid")

    m = np.arange(-size // 2, size // 2)
    columns = m % size
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    k = np.arange(size)

    def inverse_p(samples: NDArray[np.complex128]) -> NDArray[np.complex128]:
        # Σ_k samples[c, k]·e^{±2πikm/N}, columns ordered by m
        if eta > 0:
            out = size * np.fft.ifft(samples, axis=1)
        else:
            out = np.fft.fft(samples, axis=1)
        return out[:, columns]

    even = dp * inverse_p(rho.samples.astype(np.complex128)) * sign
    s = 1.0 if eta > 0 else -1.0
    twist = np.exp(1j * s * np.pi * k / size)
    odd = dp * inverse_p(_half_step_shift(rho.samples) * twist) * np.exp(-1j * s * np.pi * (2 * m + 1) / 2)

    kernel = np.zeros((size, size), dtype=np.complex128)
    c = np.arange(size)[:, np.newaxis]
    row, col = c + m, c - m
    valid = (row >= 0) & (row < size) & (col >= 0) & (col < size)
    kernel[row[valid], col[valid]] = even[valid]
    row = c + m + 1
    valid = (row >= 0) & (row < size) & (col >= 0) & (col < size)
    kernel[row[valid], col[valid]] = odd[valid]

    return GridWavefunction(psi.x0, psi.dx, kernel @ psi.samples * psi.dx)
