import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decaylab import (
    EnergyTrace,
    GaussianFamily,
    GridField,
    QuadratureSpec,
    RadialSpectralProfile,
    TailBound,
    TraceSource,
    band_energy,
    dft_forward,
    dft_inverse,
    gradient_energy,
    grid_energy,
    heat_energy,
    loglog_slope,
    low_ball_mass,
    power_cutoff_profile,
    radial_energy,
    ring_profile,
    sphere_area,
    spectral_energy,
    zero_profile,
)
from decaylab.spectral import SpectralField


class TestSphereArea:
    def test_known_dimensions(self):
        assert sphere_area(1) == pytest.approx(2.0, rel=1e-14)
        assert sphere_area(2) == pytest.approx(2.0 * math.pi, rel=1e-14)
        assert sphere_area(3) == pytest.approx(4.0 * math.pi, rel=1e-14)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sphere_area(0)


class TestRadialIntegrals:
    def test_gaussian_energy_is_beta(self, gaussian):
        assert radial_energy(gaussian.profile()) == pytest.approx(1.0, rel=1e-9)

    def test_zero_profile(self):
        assert radial_energy(zero_profile(2)) == 0.0

    def test_unit_disc_energy(self):
        # 2 pi * int_0^1 r dr = pi
        p = power_cutoff_profile(0.0, 2)
        assert radial_energy(p) == pytest.approx(math.pi, rel=1e-10)

    def test_gaussian_gradient_energy(self):
        fam = GaussianFamily(beta=1.3, alpha=0.7, n=2)
        assert gradient_energy(fam.profile()) == pytest.approx(1.3 * 0.7**2, rel=1e-9)

    def test_unit_disc_gradient(self):
        # 2 pi * int_0^1 r^3 dr = pi/2
        p = power_cutoff_profile(0.0, 2)
        assert gradient_energy(p) == pytest.approx(math.pi / 2.0, rel=1e-10)

    def test_gaussian_ball_mass(self):
        fam = GaussianFamily(beta=2.0, alpha=1.5, n=2)
        K = 0.9
        want = 2.0 * (1.0 - math.exp(-(K / 1.5) ** 2))
        assert low_ball_mass(fam.profile(), K) == pytest.approx(want, rel=1e-9)

    def test_ball_mass_below_support_is_zero(self):
        p = ring_profile(rho0=1.0, n=2)
        assert low_ball_mass(p, 0.5) == 0.0
        assert low_ball_mass(p, 1.0) == 0.0

    def test_half_disc_ball(self):
        p = power_cutoff_profile(0.0, 2)
        assert low_ball_mass(p, 0.5) == pytest.approx(math.pi / 4.0, rel=1e-10)

    def test_ball_plus_band_is_total(self, rng):
        from decaylab import random_band_limited

        spec = QuadratureSpec()
        for _ in range(5):
            p = random_band_limited(rng, 2)
            K = float(rng.uniform(0.2, 1.5))
            total = radial_energy(p, spec)
            split = low_ball_mass(p, K, spec) + band_energy(p, K, math.inf, spec)
            assert split == pytest.approx(total, rel=2.0 * spec.rel_tol + 1e-12)

    def test_closed_forms_across_scales(self):
        # oracle agreement over four decades of alpha
        for alpha in np.logspace(-2, 2, 9):
            fam = GaussianFamily(beta=1.7, alpha=float(alpha), n=2)
            p = fam.profile()
            assert radial_energy(p) == pytest.approx(fam.energy(), rel=1e-8)
            assert gradient_energy(p) == pytest.approx(fam.gradient_energy(), rel=1e-8)
            K = 0.7 * float(alpha)
            assert low_ball_mass(p, K) == pytest.approx(fam.ball_mass(K), rel=1e-8)


class TestHeatEnergy:
    def test_gaussian_closed_form(self, gaussian):
        p = gaussian.profile()
        for t in np.logspace(-2, 4, 20):
            assert heat_energy(p, float(t)) == pytest.approx(
                gaussian.heat_energy(float(t)), rel=1e-6
            )

    def test_t_zero_is_energy(self, rng):
        from decaylab import random_band_limited

        p = random_band_limited(rng, 2)
        assert heat_energy(p, 0.0) == radial_energy(p)

    def test_gap_data_beats_exponential_envelope(self):
        p = ring_profile(rho0=1.5, n=2)
        e0 = radial_energy(p)
        for t in (0.1, 1.0, 5.0):
            assert heat_energy(p, t) <= math.exp(-2.0 * 1.5**2 * t) * e0 * (1.0 + 1e-9)

    @given(t1=st.floats(0.0, 50.0), dt=st.floats(0.01, 50.0))
    def test_monotone_in_time(self, t1, dt):
        p = GaussianFamily(beta=1.0, alpha=1.0, n=2).profile()
        assert heat_energy(p, t1 + dt) <= heat_energy(p, t1) * (1.0 + 1e-12)


class TestDFT:
    def test_round_trip(self, rng):
        samples = rng.standard_normal((16, 8))
        f = GridField.from_samples(samples, (2.0 * math.pi, 1.0))
        back = dft_inverse(dft_forward(f))
        assert np.max(np.abs(back.samples - f.samples)) <= 1e-12 * np.max(np.abs(f.samples))

    def test_constant_field_concentrates_at_zero_mode(self):
        f = GridField.from_samples(np.full((8, 8), 3.0), (1.0, 1.0))
        F = dft_forward(f)
        coeffs = F.coeffs.copy()
        zero_mode = coeffs[0, 0]
        coeffs[0, 0] = 0.0
        assert abs(zero_mode) > 0
        assert np.max(np.abs(coeffs)) <= 1e-14 * abs(zero_mode)

    def test_pure_mode_has_two_coefficients(self):
        L = 2.0 * math.pi
        x = np.arange(32) * (L / 32)
        f = GridField.from_samples(np.cos(2.0 * math.pi * x / L), (L,))
        F = dft_forward(f)
        mags = np.abs(F.coeffs)
        assert int(np.sum(mags > 1e-12 * mags.max())) == 2

    def test_parseval(self, rng):
        samples = rng.standard_normal((32, 32))
        f = GridField.from_samples(samples, (3.0, 5.0))
        assert spectral_energy(dft_forward(f)) == pytest.approx(grid_energy(f), rel=1e-10)

    def test_shape_mismatch_rejected(self):
        F = SpectralField((4, 4), (1.0, 1.0), np.zeros((4, 2), dtype=complex))
        with pytest.raises(ValueError):
            dft_inverse(F)


class TestGridField:
    def test_sample_count_must_match(self):
        with pytest.raises(ValueError):
            GridField(2, (4, 4), (1.0, 1.0), np.zeros((4, 2)))

    def test_samples_must_be_finite(self):
        bad = np.zeros((4, 4))
        bad[0, 0] = math.nan
        with pytest.raises(ValueError):
            GridField(2, (4, 4), (1.0, 1.0), bad)


class TestEnergyTrace:
    def test_times_strictly_increasing(self):
        with pytest.raises(ValueError):
            EnergyTrace(np.array([0.0, 0.0, 1.0]), np.ones(3), TraceSource.NSE_SOLVER)

    def test_negative_energy_rejected(self):
        with pytest.raises(ValueError):
            EnergyTrace(np.array([0.0, 1.0]), np.array([1.0, -0.5]), TraceSource.NSE_SOLVER)

    def test_exact_semigroup_must_decay(self):
        with pytest.raises(ValueError):
            EnergyTrace(
                np.array([0.0, 1.0]), np.array([1.0, 1.5]), TraceSource.EXACT_SEMIGROUP
            )


class TestLoglogSlope:
    @given(p=st.floats(0.1, 3.0))
    def test_exact_power_law(self, p):
        times = np.logspace(0, 3, 50)
        tr = EnergyTrace(times, (1.0 + times) ** (-p), TraceSource.EXACT_SEMIGROUP)
        assert loglog_slope(tr, (1.0, 1e3)) == pytest.approx(-p, abs=1e-9)

    def test_constant_values(self):
        times = np.linspace(1.0, 10.0, 20)
        tr = EnergyTrace(times, np.full(20, 2.5), TraceSource.NSE_SOLVER)
        assert loglog_slope(tr, (1.0, 10.0)) == pytest.approx(0.0, abs=1e-12)

    def test_gaussian_window_slope(self, gaussian):
        times = np.logspace(-2, 4, 60)
        tr = EnergyTrace(
            times, [gaussian.heat_energy(float(t)) for t in times], TraceSource.EXACT_SEMIGROUP
        )
        assert loglog_slope(tr, (10.0, 1e4)) == pytest.approx(-1.0, abs=0.02)

    def test_too_few_samples(self):
        tr = EnergyTrace(np.array([1.0, 2.0, 3.0]), np.ones(3), TraceSource.NSE_SOLVER)
        with pytest.raises(ValueError):
            loglog_slope(tr, (1.0, 3.0))

    def test_nonpositive_values_rejected(self):
        times = np.linspace(1.0, 5.0, 10)
        vals = np.ones(10)
        vals[4] = 0.0
        tr = EnergyTrace(times, vals, TraceSource.NSE_SOLVER)
        with pytest.raises(ValueError):
            loglog_slope(tr, (1.0, 5.0))


class TestQuadratureSpec:
    def test_tolerances_positive(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)

    def test_profile_negative_magnitude_rejected(self):
        p = RadialSpectralProfile(
            n=2, magnitude=lambda r: -1.0, tail_bound=TailBound(1.0, vanishes=True)
        )
        with pytest.raises(ValueError):
            radial_energy(p)
