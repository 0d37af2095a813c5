"""Tests for settings, per-run configuration and the exception hierarchy."""

import pytest
from pydantic import ValidationError as PydanticValidationError

from eta_phase.config import RunConfig, Settings, ToleranceSettings, get_settings
from eta_phase.utils.exceptions import (
    DomainError,
    EtaPhaseError,
    FileFormatError,
    NotAQuantumStateError,
    NumericalInstabilityError,
    ValidationError,
)


@pytest.fixture
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# ---------------------------------------------------------------------------
# ToleranceSettings
# ---------------------------------------------------------------------------

class TestToleranceSettings:

    def test_defaults(self):
        tol = ToleranceSettings()
        assert tol.boundary_rtol == 1e-9
        assert tol.edge_fraction == 0.05

    @pytest.mark.parametrize("field", ["boundary_rtol", "pure_rtol", "weight_floor"])
    def test_non_positive_rejected(self, field):
        with pytest.raises(PydanticValidationError, match="tolerances must be positive"):
            ToleranceSettings(**{field: 0.0})

    def test_env_prefix(self, monkeypatch):
        monkeypatch.setenv("TOL_PURE_RTOL", "1e-6")
        assert ToleranceSettings().pure_rtol == 1e-6


# ---------------------------------------------------------------------------
# Settings / RunConfig
# ---------------------------------------------------------------------------

class TestSettings:

    def test_defaults(self, fresh_settings):
        settings = get_settings()
        assert settings.hbar == 1.0
        assert settings.output_format == "human"
        assert settings.log_level == "WARNING"

    def test_cached(self, fresh_settings):
        assert get_settings() is get_settings()

    def test_env_override(self, fresh_settings, monkeypatch):
        monkeypatch.setenv("HBAR", "2.5")
        monkeypatch.setenv("OUTPUT_FORMAT", "json")
        settings = get_settings()
        assert (settings.hbar, settings.output_format) == (2.5, "json")

    def test_non_positive_hbar_rejected(self):
        with pytest.raises(PydanticValidationError, match="hbar must be positive"):
            Settings(hbar=0.0)


class TestRunConfig:

    def test_from_settings_defaults(self, fresh_settings):
        config = RunConfig.from_settings()
        assert config.hbar == 1.0
        assert config.output_format == "human"
        assert config.tolerances == get_settings().tolerances

    def test_overrides(self, fresh_settings):
        config = RunConfig.from_settings(hbar=3.0, output_format="csv", boundary_tol=1e-4)
        assert (config.hbar, config.output_format) == (3.0, "csv")
        assert config.tolerances.boundary_rtol == 1e-4
        assert config.tolerances.pure_rtol == get_settings().tolerances.pure_rtol

    def test_negative_hbar_rejected(self, fresh_settings):
        with pytest.raises(PydanticValidationError):
            RunConfig.from_settings(hbar=-1.0)

    def test_non_positive_boundary_tol_rejected(self, fresh_settings):
        with pytest.raises(PydanticValidationError):
            RunConfig.from_settings(boundary_tol=0.0)


# ---------------------------------------------------------------------------
# Exceptions
# ---------------------------------------------------------------------------

class TestExceptions:

    def test_hierarchy(self):
        assert issubclass(DomainError, ValidationError)
        assert issubclass(FileFormatError, ValidationError)
        assert issubclass(NotAQuantumStateError, EtaPhaseError)
        assert not issubclass(NotAQuantumStateError, ValidationError)

    def test_file_format_details(self):
        exc = FileFormatError("sigma.json", "ragged rows")
        assert exc.message == "Cannot parse sigma.json: ragged rows"
        assert exc.details == {"path": "sigma.json", "reason": "ragged rows"}

    def test_not_a_quantum_state(self):
        exc = NotAQuantumStateError(-1.5, 1.0)
        assert exc.eta == -1.5
        assert "1.5" in exc.message

    def test_numerical_instability(self):
        exc = NumericalInstabilityError("Williamson reconstruction", 1e-6, 1e-9)
        assert "residual 1.000e-06" in str(exc)
        assert exc.details["tolerance"] == 1e-9
