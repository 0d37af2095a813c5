"""Tests for the covariance, wavefunction, dump and manifest file formats."""

import json
import math

import numpy as np
import pytest

from eta_phase.core.wigner import centered_origin, coherent_state, hermite_state, wigner_transform
from eta_phase.services.files import (
    load_covariance,
    load_mixture,
    load_phase_space,
    load_wavefunction,
    save_covariance,
    save_phase_space,
    save_wavefunction,
)
from eta_phase.utils.exceptions import DomainError, FileFormatError, InvalidDimensionError


# ---------------------------------------------------------------------------
# Covariance files
# ---------------------------------------------------------------------------

class TestLoadCovariance:

    def test_json(self, tmp_path):
        path = tmp_path / "sigma.json"
        path.write_text(json.dumps({"n": 1, "sigma": [[0.5, 0.0], [0.0, 0.5]]}))
        np.testing.assert_array_equal(load_covariance(path).entries, np.diag([0.5, 0.5]))

    def test_csv_body(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("# two modes\n1, 0, 0, 0\n0, 2, 0, 0\n0, 0, 3, 0\n0, 0, 0, 4\n")
        sigma = load_covariance(path)
        assert sigma.n == 2
        np.testing.assert_array_equal(sigma.entries, np.diag([1.0, 2.0, 3.0, 4.0]))

    def test_whitespace_body(self, tmp_path):
        path = tmp_path / "sigma.txt"
        path.write_text("1 0.2\n0.2 1\n")
        assert load_covariance(path).entries[0, 1] == 0.2

    def test_json_shape_must_match_n(self, tmp_path):
        path = tmp_path / "sigma.json"
        path.write_text(json.dumps({"n": 2, "sigma": [[1, 0], [0, 1]]}))
        with pytest.raises(FileFormatError, match="4x4"):
            load_covariance(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "sigma.json"
        path.write_text('{"n": 1, "sigma": [[1, 0], [0, 1]')
        with pytest.raises(FileFormatError):
            load_covariance(path)

    def test_ragged_rows(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("1,0\n0\n")
        with pytest.raises(FileFormatError, match="ragged"):
            load_covariance(path)

    def test_non_numeric_entry(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("1,x\n0,1\n")
        with pytest.raises(FileFormatError, match="row 1"):
            load_covariance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileFormatError, match="unreadable"):
            load_covariance(tmp_path / "absent.json")

    def test_odd_matrix_body(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("1,0,0\n0,1,0\n0,0,1\n")
        with pytest.raises(InvalidDimensionError):
            load_covariance(path)

    def test_non_symmetric_matrix(self, tmp_path):
        path = tmp_path / "sigma.json"
        path.write_text(json.dumps({"n": 1, "sigma": [[1.0, 0.5], [0.0, 1.0]]}))
        with pytest.raises(DomainError):
            load_covariance(path)

    def test_saved_file_reloads(self, tmp_path):
        path = tmp_path / "sigma.json"
        original = load_covariance(_write(tmp_path / "in.csv", "2,0.3\n0.3,1.5\n"))
        save_covariance(original, path)
        assert json.loads(path.read_text())["n"] == 1
        np.testing.assert_array_equal(load_covariance(path).entries, original.entries)


# ---------------------------------------------------------------------------
# Wavefunction and phase-space dump files
# ---------------------------------------------------------------------------

class TestWavefunctionFiles:

    def test_saved_samples_are_exact(self, tmp_path):
        psi = _coherent(64)
        path = tmp_path / "psi.txt"
        save_wavefunction(psi, path)
        assert path.read_text().splitlines()[0].split()[2] == "64"
        loaded = load_wavefunction(path)
        assert (loaded.x0, loaded.dx) == (psi.x0, psi.dx)
        np.testing.assert_array_equal(loaded.samples, psi.samples)

    def test_bad_header(self, tmp_path):
        with pytest.raises(FileFormatError, match="x0 dx N"):
            load_wavefunction(_write(tmp_path / "psi.txt", "0.0 0.1\n1 0\n"))

    def test_line_count_must_match(self, tmp_path):
        with pytest.raises(FileFormatError, match="expected 4 lines"):
            load_wavefunction(_write(tmp_path / "psi.txt", "0.0 0.1 4\n1 0\n0 0\n"))

    def test_empty_file(self, tmp_path):
        with pytest.raises(FileFormatError, match="empty"):
            load_wavefunction(_write(tmp_path / "psi.txt", "\n"))

    def test_non_power_of_two_size(self, tmp_path):
        body = "0.0 0.1 3\n" + "1 0\n" * 3
        with pytest.raises(InvalidDimensionError):
            load_wavefunction(_write(tmp_path / "psi.txt", body))


class TestPhaseSpaceFiles:

    def test_dump_header_and_samples(self, tmp_path):
        w = wigner_transform(_coherent(32), -1.0)
        path = tmp_path / "w.txt"
        save_phase_space(w, path)
        header = path.read_text().splitlines()[0].split()
        assert header[2] == header[5] == "32"
        assert float(header[6]) == -1.0
        loaded = load_phase_space(path)
        assert (loaded.p0, loaded.dp, loaded.eta) == (w.p0, w.dp, w.eta)
        np.testing.assert_array_equal(loaded.samples, w.samples)

    def test_truncated_dump(self, tmp_path):
        with pytest.raises(FileFormatError, match="expected 2 rows"):
            load_phase_space(_write(tmp_path / "w.txt", "0 0.1 2 -1 0.5 2 1\n0 0\n"))


# ---------------------------------------------------------------------------
# Mixture manifests
# ---------------------------------------------------------------------------

class TestLoadMixture:

    def test_paths_relative_to_manifest(self, tmp_path):
        size = 128
        dx = math.sqrt(math.pi / size)
        x0 = centered_origin(size, dx)
        states = tmp_path / "states"
        states.mkdir()
        for k in range(2):
            save_wavefunction(hermite_state(x0, dx, size, k), states / f"h{k}.txt")
        manifest = {
            "hbar": 1.0,
            "components": [
                {"weight": 0.75, "wavefunction": "states/h0.txt"},
                {"weight": 0.25, "wavefunction": "states/h1.txt"},
            ],
        }
        mixture = load_mixture(_write(tmp_path / "mix.json", json.dumps(manifest)))
        assert mixture.weights == (0.75, 0.25)
        assert mixture.hbar == 1.0

    def test_non_positive_hbar(self, tmp_path):
        manifest = {"hbar": 0, "components": [{"weight": 1, "wavefunction": "a.txt"}]}
        with pytest.raises(FileFormatError):
            load_mixture(_write(tmp_path / "mix.json", json.dumps(manifest)))

    def test_no_components(self, tmp_path):
        with pytest.raises(FileFormatError):
            load_mixture(_write(tmp_path / "mix.json", json.dumps({"hbar": 1, "components": []})))

    def test_missing_wavefunction_file(self, tmp_path):
        manifest = {"hbar": 1, "components": [{"weight": 1, "wavefunction": "absent.txt"}]}
        with pytest.raises(FileFormatError, match="absent.txt"):
            load_mixture(_write(tmp_path / "mix.json", json.dumps(manifest)))


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _write(path, text):
    path.write_text(text)
    return path


def _coherent(size):
    dx = math.sqrt(math.pi / size)
    return coherent_state(centered_origin(size, dx), dx, size, 0.7, p_center=0.4)
