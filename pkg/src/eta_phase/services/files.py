"""Reading and writing the text file formats.

Covariance: JSON ``{"n": int, "sigma": [[...], ...]}`` or a CSV/whitespace
matrix body. Wavefunction: header ``x0 dx N`` then N lines ``re im``.
Phase-space dump: header ``x0 dx N p0 dp M eta`` then N lines of M values.
Mixture manifest: JSON with ``hbar`` and weighted wavefunction paths
relative to the manifest.
"""

import json
from pathlib import Path

import numpy as np
import structlog
from pydantic import ValidationError as PydanticValidationError

from eta_phase.core.mixture import MixedState
from eta_phase.core.symplectic import CovarianceMatrix
from eta_phase.core.wigner import GridWavefunction, PhaseSpaceFunction
from eta_phase.schemas.inputs import CovarianceFile, MixtureManifest
from eta_phase.utils.exceptions import FileFormatError

logger = structlog.get_logger()


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(str(path), f"unreadable ({e.strerror or e})") from e


def _parse_matrix_body(path: str | Path, text: str) -> np.ndarray:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(v) for v in line.replace(",", " ").split()])
        except ValueError as e:
            raise FileFormatError(str(path), f"non-numeric entry in row {len(rows) + 1}") from e
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise FileFormatError(str(path), "matrix rows are empty or ragged")
    return np.array(rows, dtype=np.float64)


def load_covariance(path: str | Path) -> CovarianceMatrix:
    """Load a covariance matrix from JSON, falling back to a CSV body."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            parsed = CovarianceFile.model_validate_json(text)
        except PydanticValidationError as e:
            raise FileFormatError(str(path), e.errors()[0]["msg"]) from e
        matrix = np.array(parsed.sigma, dtype=np.float64)
    else:
        matrix = _parse_matrix_body(path, text)

    logger.debug("Covariance loaded", path=str(path), shape=list(matrix.shape))
    return CovarianceMatrix.from_array(matrix)


def save_covariance(sigma: CovarianceMatrix, path: str | Path) -> None:
    payload = {"n": sigma.n, "sigma": sigma.entries.tolist()}
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_wavefunction(path: str | Path) -> GridWavefunction:
    """Load ``x0 dx N`` followed by N lines ``re im``."""
    lines = [line for line in _read_text(path).splitlines() if line.strip()]
    if not lines:
        raise FileFormatError(str(path), "empty file")
    header = lines[0].split()
    if len(header) != 3:
        raise FileFormatError(str(path), "header must be 'x0 dx N'")
    try:
        x0, dx, size = float(header[0]), float(header[1]), int(header[2])
        values = np.array([[float(v) for v in line.split()] for line in lines[1:]])
    except ValueError as e:
        raise FileFormatError(str(path), "non-numeric value") from e
    if values.shape != (size, 2):
        raise FileFormatError(str(path), f"expected {size} lines of 're im'")
    return GridWavefunction(x0=x0, dx=dx, samples=values[:, 0] + 1j * values[:, 1])


def save_wavefunction(psi: GridWavefunction, path: str | Path) -> None:
    lines = [f"{float(psi.x0)!r} {float(psi.dx)!r} {psi.size}"]
    lines.extend(f"{float(v.real)!r} {float(v.imag)!r}" for v in psi.samples)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def save_phase_space(w: PhaseSpaceFunction, path: str | Path) -> None:
    """Write the dump header ``x0 dx N p0 dp M eta`` and the N×M samples."""
    n, m = w.shape
    lines = [f"{float(w.x0)!r} {float(w.dx)!r} {n} {float(w.p0)!r} {float(w.dp)!r} {m} {float(w.eta)!r}"]
    lines.extend(" ".join(repr(float(v)) for v in row) for row in w.samples)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_phase_space(path: str | Path) -> PhaseSpaceFunction:
    lines = [line for line in _read_text(path).splitlines() if line.strip()]
    if not lines:
        raise FileFormatError(str(path), "empty file")
    header = lines[0].split()
    if len(header) != 7:
        raise FileFormatError(str(path), "header must be 'x0 dx N p0 dp M eta'")
    try:
        x0, dx, p0, dp, eta = (float(header[i]) for i in (0, 1, 3, 4, 6))
        n, m = int(header[2]), int(header[5])
        samples = np.array([[float(v) for v in line.split()] for line in lines[1:]])
    except ValueError as e:
        raise FileFormatError(str(path), "non-numeric value") from e
    if samples.shape != (n, m):
        raise FileFormatError(str(path), f"expected {n} rows of {m} values")
    return PhaseSpaceFunction(x0=x0, dx=dx, p0=p0, dp=dp, eta=eta, samples=samples)


def load_mixture(path: str | Path) -> MixedState:
    """Load a mixture manifest and the wavefunctions it points to."""
    try:
        manifest = MixtureManifest.model_validate_json(_read_text(path))
    except PydanticValidationError as e:
        raise FileFormatError(str(path), e.errors()[0]["msg"]) from e

    base = Path(path).parent
    components = tuple(
        (entry.weight, load_wavefunction(base / entry.wavefunction))
        for entry in manifest.components
    )
    logger.debug("Mixture manifest loaded", path=str(path), components=len(components))
    return MixedState(components=components, hbar=manifest.hbar)
