"""Report schemas emitted by the CLI commands."""

from pydantic import BaseModel, Field


class ClassificationReport(BaseModel):
    """Classification of a Gaussian covariance at one eta."""

    verdict: str
    eta: float
    hbar: float
    threshold: float
    margin: float
    spectrum: list[float]
    purity: float | None = None

    def headline(self) -> str:
        return f"{self.verdict} at eta={self.eta:g} (threshold {self.threshold:.12g})"


class SweepRow(BaseModel):
    """One eta of a sweep; plot-ready."""

    eta: float
    verdict: str
    purity: float | None = None
    margin: float


class SweepReport(BaseModel):
    """Classification over an eta range."""

    threshold: float
    spectrum: list[float]
    rows: list[SweepRow]


class WilliamsonReport(BaseModel):
    """Williamson factors and their residuals."""

    S: list[list[float]]
    D: list[list[float]]
    spectrum: list[float]
    symplectic_residual: float
    reconstruction_residual: float
    within_tolerance: bool
    output: str | None = None


class WignerReport(BaseModel):
    """Diagnostics of an eta-Wigner transform written to a dump file."""

    output: str
    eta: float
    grid_size: int
    integral: float
    min_value: float
    max_value: float
    position_marginal_residual: float
    momentum_marginal_residual: float
    moyal_self_purity: float
    gaussian_deviation: float | None = None
    warnings: list[str] = Field(default_factory=list)


class TransitionReport(BaseModel):
    """Implied purity after changing the Planck parameter from hbar to eta."""

    source_purity: float
    hbar: float
    eta: float
    n: int
    implied_purity: float
    verdict: str
    boundary_eta: float

    def headline(self) -> str:
        return f"implied purity {self.implied_purity:g}, {self.verdict}"


class PurityReport(BaseModel):
    """Purity of a mixture manifest, optionally checked in phase space at eta."""

    hbar: float
    components: int
    weights: list[float]
    purity: float
    max_off_diagonal: float
    max_diagonal_deviation: float
    eta: float | None = None
    phase_space_purity: float | None = None
    transition: TransitionReport | None = None
