"""Tests for Gaussian states, their purity and eta-classification."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import stats

from eta_phase.core.gaussian import (
    GaussianState,
    Verdict,
    classify,
    density,
    gaussian_phase_space,
    moment_matched,
    purity_eta,
    quantum_threshold,
    rotated,
    single_mode,
    sweep,
    uncertainty_margin,
)
from eta_phase.core.symplectic import eta_positivity, symplectic_spectrum
from eta_phase.core.wigner import centered_origin, phase_space_purity
from eta_phase.utils.exceptions import (
    DomainError,
    InvalidDimensionError,
    InvalidParameterError,
    NotAQuantumStateError,
)

COHERENT = math.sqrt(0.5)


# ---------------------------------------------------------------------------
# single_mode / rotated
# ---------------------------------------------------------------------------

class TestSingleMode:

    def test_coherent_widths(self):
        state = single_mode(COHERENT, COHERENT)
        np.testing.assert_allclose(state.sigma.entries, np.diag([0.5, 0.5]))
        assert symplectic_spectrum(state.sigma).values == pytest.approx((0.5,))

    def test_unequal_widths(self):
        np.testing.assert_allclose(single_mode(2.0, 3.0).sigma.entries, np.diag([4.0, 9.0]))

    def test_correlated_widths(self):
        state = single_mode(1.0, 2.0, 0.5)
        assert state.sigma.entries[0, 1] == 0.5
        assert state.mean.tolist() == [0.0, 0.0]

    @pytest.mark.parametrize("widths", [(0.0, 1.0), (1.0, -1.0)])
    def test_non_positive_width_rejected(self, widths):
        with pytest.raises(DomainError):
            single_mode(*widths)

    def test_correlation_must_keep_positive_definite(self):
        with pytest.raises(DomainError):
            single_mode(1.0, 1.0, 1.5)

    def test_mean_length_checked(self):
        with pytest.raises(InvalidDimensionError):
            GaussianState(mean=np.zeros(3), sigma=single_mode(1.0, 1.0).sigma)

    def test_rotation_keeps_spectrum_and_rotates_mean(self):
        state = GaussianState(mean=np.array([1.0, 0.0]), sigma=single_mode(0.5, 2.0).sigma)
        turned = rotated(state, math.pi / 2)
        np.testing.assert_allclose(turned.mean, [0.0, -1.0], atol=1e-15)
        np.testing.assert_allclose(turned.sigma.entries, np.diag([4.0, 0.25]), atol=1e-12)
        assert quantum_threshold(turned) == pytest.approx(quantum_threshold(state), rel=1e-12)


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

class TestDensity:

    def test_identity_at_origin(self):
        assert density(GaussianState.centered(np.identity(2)), [0.0, 0.0]) == pytest.approx(
            1 / (2 * math.pi)
        )

    def test_prefactor_at_origin(self):
        state = single_mode(0.8, 1.7)
        assert density(state, [0.0, 0.0]) == pytest.approx(1 / (2 * math.pi * 0.8 * 1.7))

    def test_matches_product_of_normals(self):
        state = single_mode(0.8, 1.7)
        x, p = 0.3, -1.1
        expected = stats.norm.pdf(x, scale=0.8) * stats.norm.pdf(p, scale=1.7)
        assert density(state, [x, p]) == pytest.approx(expected, rel=1e-12)

    def test_vectorized_over_leading_axes(self):
        state = single_mode(1.0, 1.0, 0.3)
        points = np.random.default_rng(0).normal(size=(4, 5, 2))
        values = density(state, points)
        assert values.shape == (4, 5)
        assert values[2, 3] == pytest.approx(density(state, points[2, 3]))

    def test_wrong_point_dimension(self):
        with pytest.raises(InvalidDimensionError):
            density(single_mode(1.0, 1.0), [0.0, 0.0, 0.0])

    def test_integrates_to_one(self):
        state = single_mode(1.0, 2.0, 0.6)
        axis = np.arange(-20.0, 20.0 + 1e-9, 0.05)
        points = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1)
        assert density(state, points).sum() * 0.05**2 == pytest.approx(1.0, abs=1e-6)


# ---------------------------------------------------------------------------
# purity_eta / quantum_threshold
# ---------------------------------------------------------------------------

class TestPurity:

    def test_coherent_state_is_pure(self):
        assert purity_eta(single_mode(COHERENT, COHERENT), 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_halved_eta_halves_purity(self):
        assert purity_eta(single_mode(COHERENT, COHERENT), 0.5) == pytest.approx(0.5, rel=1e-12)

    def test_squeezed(self):
        state = GaussianState.centered(np.diag([1.0, 4.0]))
        assert purity_eta(state, 1.0) == pytest.approx(0.25, rel=1e-12)
        assert purity_eta(state, -1.0) == pytest.approx(0.25, rel=1e-12)

    def test_classical_raises(self):
        with pytest.raises(NotAQuantumStateError) as exc_info:
            purity_eta(single_mode(COHERENT, COHERENT), 1.2)
        assert exc_info.value.threshold == pytest.approx(1.0)

    def test_threshold_examples(self):
        assert quantum_threshold(single_mode(COHERENT, COHERENT)) == pytest.approx(1.0)
        assert quantum_threshold(GaussianState.centered(np.identity(4))) == pytest.approx(2.0)
        assert quantum_threshold(
            GaussianState.centered(np.diag([1.0, 1.0, 9.0, 9.0]))
        ) == pytest.approx(6.0)

    @settings(max_examples=100, deadline=None)
    @given(
        sigma_x=st.floats(min_value=0.2, max_value=3.0),
        sigma_p=st.floats(min_value=0.2, max_value=3.0),
        rho=st.floats(min_value=-0.8, max_value=0.8),
        low=st.floats(min_value=0.05, max_value=1.0),
        high=st.floats(min_value=0.05, max_value=1.0),
    )
    def test_strictly_increasing_in_abs_eta(self, sigma_x, sigma_p, rho, low, high):
        assume(high - low > 1e-6)
        state = single_mode(sigma_x, sigma_p, rho * sigma_x * sigma_p)
        threshold = quantum_threshold(state)
        assert purity_eta(state, low * threshold) < purity_eta(state, high * threshold)
        assert purity_eta(state, -low * threshold) < purity_eta(state, -high * threshold)

    @settings(max_examples=100, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        n=st.integers(min_value=1, max_value=2),
        factor=st.floats(min_value=0.1, max_value=10.0),
        fraction=st.floats(min_value=0.05, max_value=0.99),
    )
    def test_homogeneous_under_joint_scaling(self, seed, n, factor, fraction):
        a = np.random.default_rng(seed).normal(size=(2 * n, 2 * n))
        state = GaussianState.centered(a @ a.T + 0.5 * np.identity(2 * n))
        scaled = GaussianState.centered(state.sigma.scaled(factor))
        eta = fraction * quantum_threshold(state)
        assert quantum_threshold(scaled) == pytest.approx(factor * quantum_threshold(state), rel=1e-9)
        assert purity_eta(scaled, factor * eta) == pytest.approx(purity_eta(state, eta), rel=1e-9)

    def test_single_mode_purity_matches_grid_quadrature(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            state = rotated(
                single_mode(*np.sqrt(rng.uniform(0.5, 2.0, size=2))), rng.uniform(0, math.pi)
            )
            eta = rng.uniform(0.3, 1.0) * quantum_threshold(state)
            size = 512
            dx = math.sqrt(math.pi * eta / size)
            rho = gaussian_phase_space(state, centered_origin(size, dx), dx, size, eta)
            assert phase_space_purity(rho) == pytest.approx(purity_eta(state, eta), abs=1e-6)

    def test_two_mode_purity_matches_gaussian_integral(self):
        rng = np.random.default_rng(77)
        for _ in range(20):
            a = rng.normal(size=(4, 4))
            sigma = a @ a.T + 0.5 * np.identity(4)
            state = GaussianState.centered(sigma)
            eta = rng.uniform(0.1, 1.0) * quantum_threshold(state)
            # ∫ρ_Σ² dz is the N(0, 2Σ) density at the origin
            integral = stats.multivariate_normal(mean=np.zeros(4), cov=2 * sigma).pdf(np.zeros(4))
            expected = (2 * math.pi * eta) ** 2 * integral
            assert purity_eta(state, eta) == pytest.approx(expected, rel=1e-9)


# ---------------------------------------------------------------------------
# classify / sweep
# ---------------------------------------------------------------------------

class TestClassify:

    @pytest.fixture
    def coherent(self):
        return single_mode(COHERENT, COHERENT)

    def test_smaller_eta_is_mixed(self, coherent):
        result = classify(coherent, 0.9)
        assert result.verdict is Verdict.MIXED_QUANTUM
        assert result.purity == pytest.approx(0.9)
        assert result.is_quantum

    def test_threshold_eta_is_pure(self, coherent):
        result = classify(coherent, 1.0)
        assert result.verdict is Verdict.PURE_QUANTUM
        assert result.purity == pytest.approx(1.0)
        assert result.threshold == pytest.approx(1.0)

    def test_larger_eta_is_classical(self, coherent):
        result = classify(coherent, 1.2)
        assert result.verdict is Verdict.CLASSICAL
        assert result.purity is None
        assert result.margin == pytest.approx(-0.2)
        assert not result.is_quantum

    def test_non_pure_boundary(self):
        state = GaussianState.centered(np.diag([0.5, 2.0, 0.5, 2.0]))
        result = classify(state, 1.0)
        assert result.verdict is Verdict.BOUNDARY
        assert result.spectrum == pytest.approx((0.5, 2.0))

    @pytest.mark.parametrize("fraction", [0.3, 0.8, 1.0, 1.3])
    def test_depends_on_eta_only_through_modulus(self, fraction):
        state = rotated(single_mode(0.6, 1.1, 0.2), 0.7)
        eta = fraction * quantum_threshold(state)
        positive, negative = classify(state, eta), classify(state, -eta)
        assert negative.verdict is positive.verdict
        assert negative.purity == positive.purity
        assert (negative.threshold, negative.margin) == (positive.threshold, positive.margin)
        assert negative.eta == -eta

    def test_pure_state_sign_symmetric(self):
        coherent = single_mode(COHERENT, COHERENT)
        assert classify(coherent, -1.0).verdict is Verdict.PURE_QUANTUM
        assert classify(coherent, -1.2).verdict is Verdict.CLASSICAL

    def test_zero_eta_rejected(self, coherent):
        with pytest.raises(InvalidParameterError):
            classify(coherent, 0.0)


class TestSweep:

    def test_coherent_sequence(self):
        results = sweep(single_mode(COHERENT, COHERENT), [0.5, 1.0, 1.5])
        assert [r.verdict for r in results] == [
            Verdict.MIXED_QUANTUM,
            Verdict.PURE_QUANTUM,
            Verdict.CLASSICAL,
        ]

    def test_identity_sequence(self):
        results = sweep(GaussianState.centered(np.identity(2)), [1.0, 2.0, 3.0])
        assert results[0].verdict is Verdict.MIXED_QUANTUM
        assert results[1].verdict in (Verdict.PURE_QUANTUM, Verdict.BOUNDARY)
        assert results[2].verdict is Verdict.CLASSICAL
        assert results[0].purity == pytest.approx(0.5)

    def test_empty_list_rejected(self):
        with pytest.raises(InvalidParameterError):
            sweep(single_mode(1.0, 1.0), [])

    def test_zero_in_list_rejected(self):
        with pytest.raises(InvalidParameterError):
            sweep(single_mode(1.0, 1.0), [0.5, 0.0])

    @pytest.mark.parametrize("correlated", [False, True])
    def test_monotone_transition_sequence(self, correlated):
        rng = np.random.default_rng(31 if correlated else 13)
        for _ in range(5):
            state = single_mode(*rng.uniform(0.3, 2.0, size=2))
            if correlated:
                state = rotated(state, rng.uniform(0.1, math.pi - 0.1))
            threshold = quantum_threshold(state)
            results = sweep(state, np.linspace(0.5 * threshold, 1.5 * threshold, 11).tolist())
            verdicts = [r.verdict for r in results]
            assert verdicts == (
                [Verdict.MIXED_QUANTUM] * 5 + [Verdict.PURE_QUANTUM] + [Verdict.CLASSICAL] * 5
            )


# ---------------------------------------------------------------------------
# uncertainty_margin
# ---------------------------------------------------------------------------

class TestUncertaintyMargin:

    def test_coherent_saturates(self):
        assert uncertainty_margin(single_mode(COHERENT, COHERENT), 1.0) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_multi_mode_rejected(self):
        with pytest.raises(InvalidDimensionError):
            uncertainty_margin(GaussianState.centered(np.identity(4)), 1.0)

    @settings(max_examples=100, deadline=None)
    @given(
        sigma_x=st.floats(min_value=0.1, max_value=5.0),
        sigma_p=st.floats(min_value=0.1, max_value=5.0),
        rho=st.floats(min_value=-0.9, max_value=0.9),
        eta=st.floats(min_value=0.01, max_value=20.0),
    )
    def test_agrees_with_eta_positivity(self, sigma_x, sigma_p, rho, eta):
        state = single_mode(sigma_x, sigma_p, rho * sigma_x * sigma_p)
        margin = uncertainty_margin(state, eta)
        assume(abs(margin) > 1e-6 * eta**2)
        assert (margin >= 0) == eta_positivity(state.sigma, eta).is_quantum


# ---------------------------------------------------------------------------
# gaussian_phase_space / moment_matched
# ---------------------------------------------------------------------------

class TestGaussianPhaseSpace:

    def test_grid_and_peak(self):
        size, dx = 256, math.sqrt(math.pi / 256)
        rho = gaussian_phase_space(single_mode(1.0, 0.5), centered_origin(size, dx), dx, size, 1.0)
        assert rho.shape == (size, size)
        assert rho.dp * 2 * rho.dx * size == pytest.approx(2 * math.pi)
        assert rho.samples[size // 2, size // 2] == pytest.approx(1 / (2 * math.pi * 0.5))
        assert rho.integral() == pytest.approx(1.0, abs=1e-9)

    def test_multi_mode_rejected(self):
        with pytest.raises(InvalidDimensionError):
            gaussian_phase_space(GaussianState.centered(np.identity(4)), 0.0, 0.1, 16, 1.0)

    def test_moment_matched_recovers_covariance(self):
        size, dx = 256, math.sqrt(math.pi / 256)
        state = GaussianState(mean=np.array([0.4, -0.3]), sigma=single_mode(1.0, 0.5, 0.2).sigma)
        rho = gaussian_phase_space(state, centered_origin(size, dx), dx, size, 1.0)
        fitted = moment_matched(rho)
        np.testing.assert_allclose(fitted.mean, state.mean, atol=1e-9)
        np.testing.assert_allclose(fitted.sigma.entries, state.sigma.entries, atol=1e-8)
