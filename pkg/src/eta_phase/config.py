"""Configuration management for eta-phase."""

from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToleranceSettings(BaseSettings):
    """Numerical tolerance bands, all in one record."""

    model_config = SettingsConfigDict(env_prefix="TOL_")

    # Covariance matrices
    symmetry_rtol: float = 1e-12  # |Σ_ij − Σ_ji| relative to max|Σ|
    spectrum_det_rtol: float = 1e-9  # Π λ_j² against det Σ
    pairing_rtol: float = 1e-6  # duplicated singular values of Σ^½JΣ^½

    # Williamson residuals
    symplectic_atol: float = 1e-10  # ‖SᵀJS − J‖_max, per unit norm of S
    reconstruction_rtol: float = 1e-9  # ‖SᵀDS − Σ‖_max / ‖Σ‖_max

    # Classification
    boundary_rtol: float = 1e-9  # band around |η| = 2λ_min
    pure_rtol: float = 1e-9  # λ_j against |η|/2

    # Grid wavefunctions
    imaginary_rtol: float = 1e-10  # imaginary residual of a Wigner transform
    normalization_atol: float = 1e-9
    orthogonality_atol: float = 1e-8
    edge_mass_max: float = 1e-8
    edge_fraction: float = 0.05  # share of the grid, split between both ends

    # Mixtures
    weight_sum_atol: float = 1e-12
    weight_floor: float = 1e-14  # weights below are dropped
    transition_atol: float = 1e-12  # PureOnly band of implied purity
    pair_rtol: float = 1e-9  # both sides of the trace condition

    @field_validator("*")
    @classmethod
    def must_be_positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerances must be positive")
        return value


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )

    # Application
    app_name: str = "eta-phase"
    app_version: str = "0.1.0"

    # Physics: Planck's constant in natural units
    hbar: float = 1.0

    # Logging
    log_level: str = "WARNING"
    log_format: Literal["json", "console"] = "console"

    # Command output
    output_format: Literal["human", "json", "csv"] = "human"

    # Sub-configs
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)

    @field_validator("hbar")
    @classmethod
    def hbar_positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("hbar must be positive")
        return value


class RunConfig(BaseModel):
    """Per-invocation configuration of a CLI command."""

    hbar: float = Field(gt=0)
    output_format: Literal["human", "json", "csv"] = "human"
    tolerances: ToleranceSettings

    @classmethod
    def from_settings(
        cls,
        hbar: float | None = None,
        output_format: Literal["human", "json", "csv"] | None = None,
        boundary_tol: float | None = None,
    ) -> "RunConfig":
        """Create config from application settings, applying CLI overrides."""
        settings = get_settings()
        tolerances = settings.tolerances
        if boundary_tol is not None:
            tolerances = ToleranceSettings(
                **{**tolerances.model_dump(), "boundary_rtol": boundary_tol}
            )
        return cls(
            hbar=settings.hbar if hbar is None else hbar,
            output_format=output_format or settings.output_format,
            tolerances=tolerances,
        )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
