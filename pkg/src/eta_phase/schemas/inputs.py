"""Schemas for structured input files."""

from pydantic import BaseModel, Field, model_validator


class CovarianceFile(BaseModel):
    """JSON covariance file: {"n": int, "sigma": [[row], ...]}."""

    n: int = Field(ge=1)
    sigma: list[list[float]]

    @model_validator(mode="after")
    def check_shape(self) -> "CovarianceFile":
        size = 2 * self.n
        if len(self.sigma) != size or any(len(row) != size for row in self.sigma):
            raise ValueError(f"sigma must be a {size}x{size} matrix for n={self.n}")
        return self


class ManifestComponent(BaseModel):
    """One (weight, wavefunction file) pair of a mixture."""

    weight: float = Field(ge=0)
    wavefunction: str


class MixtureManifest(BaseModel):
    """Mixture manifest: Planck value plus weighted wavefunction files."""

    hbar: float = Field(gt=0)
    components: list[ManifestComponent] = Field(min_length=1)
