import math

import numpy as np
import pytest

from rdcert.stability import (Linearization2, critical_d1, det_m, dispersion_scan, eig2,
                              growth_rate_experiment, instability_band, m_of_k,
                              numerical_abscissa, trace_m, turing_conditions)

TURING = Linearization2(a=1.0, b=2.0, c=-2.0, d=-2.0, d1=0.5, d2=10.0)


class TestEig2:
    def test_defective_shear(self):
        lam1, lam2 = eig2(np.array([[-1.0, 3.0], [0.0, -1.0]]))
        assert lam1 == -1.0 and lam2 == -1.0

    def test_identity(self):
        assert eig2(np.eye(2)) == (1.0 + 0.0j, 1.0 + 0.0j)

    def test_rotation(self):
        lam1, lam2 = eig2(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert lam1 == pytest.approx(1.0j)
        assert lam2 == pytest.approx(-1.0j)

    def test_matches_numpy_on_random_draws(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            m = rng.normal(size=(2, 2)) * rng.uniform(0.1, 10.0)
            ours = eig2(m)
            ref = sorted(np.linalg.eigvals(m), key=lambda z: (-z.real, -z.imag))
            scale = max(1.0, float(np.max(np.abs(m))))
            assert ours[0] == pytest.approx(ref[0], abs=1e-9 * scale)
            assert ours[1] == pytest.approx(ref[1], abs=1e-9 * scale)


class TestNumericalAbscissa:
    def test_shear_dense_sampling(self):
        m = np.array([[-1.0, 3.0], [0.0, -1.0]])
        theta = np.linspace(0.0, 2.0 * np.pi, 400_001)
        u = np.stack([np.cos(theta), np.sin(theta)])
        sampled = float(np.max(np.sum(u * (m @ u), axis=0)))
        assert numerical_abscissa(m) == pytest.approx(sampled, abs=1e-9)
        assert numerical_abscissa(m) == pytest.approx(0.5, abs=1e-12)

    def test_symmetric_diagonal(self):
        assert numerical_abscissa(np.diag([-2.0, -1.0])) == pytest.approx(-1.0)

    def test_dominates_spectral_abscissa(self):
        rng = np.random.default_rng(21)
        for _ in range(300):
            m = rng.normal(size=(2, 2)) * rng.uniform(0.1, 5.0)
            spectral = max(z.real for z in eig2(m))
            assert numerical_abscissa(m) >= spectral - 1e-10

    def test_strict_gap_for_shear(self):
        # spectrum in the open left half-plane, quadratic form not negative
        m = np.array([[-1.0, 3.0], [0.0, -1.0]])
        assert max(z.real for z in eig2(m)) == -1.0
        assert numerical_abscissa(m) > 0.0


class TestModeMatrix:
    def test_at_zero_wavenumber(self):
        assert np.array_equal(m_of_k(TURING, 0.0), TURING.matrix)

    def test_direct_substitution(self):
        assert m_of_k(TURING, 1.0) == pytest.approx(np.array([[0.5, 2.0], [-2.0, -12.0]]))

    def test_vanishing_diffusion_limit(self):
        lin = Linearization2(1.0, 2.0, -2.0, -2.0, 1e-14, 1e-14)
        assert m_of_k(lin, 3.0) == pytest.approx(lin.matrix, abs=1e-10)

    def test_vieta_along_scan(self):
        report = dispersion_scan(TURING, k_max=3.0, samples=200)
        prod = report.lam1 * report.lam2
        s = report.lam1 + report.lam2
        assert np.allclose(prod.real, report.det, atol=1e-9)
        assert np.allclose(prod.imag, 0.0, atol=1e-9)
        assert np.allclose(s.real, report.trace, atol=1e-9)

    def test_closed_form_det_matches_matrix(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            lin = Linearization2(*rng.normal(size=4), *rng.uniform(0.05, 5.0, size=2))
            k = rng.uniform(0.0, 4.0)
            assert det_m(lin, k) == pytest.approx(float(np.linalg.det(m_of_k(lin, k))),
                                                  rel=1e-9, abs=1e-9)
            assert trace_m(lin, k) == pytest.approx(float(np.trace(m_of_k(lin, k))))


class TestBandAndConditions:
    def test_turing_band_closed_form(self):
        band = instability_band(TURING)
        lo = math.sqrt((9.0 - math.sqrt(41.0)) / 10.0)
        hi = math.sqrt((9.0 + math.sqrt(41.0)) / 10.0)
        assert band == pytest.approx((lo, hi), abs=1e-12)

    def test_band_against_polynomial_roots_oracle(self):
        band = instability_band(TURING)
        roots = np.roots([TURING.d1 * TURING.d2,
                          -(TURING.a * TURING.d2 + TURING.d * TURING.d1),
                          TURING.a * TURING.d - TURING.b * TURING.c])
        expected = np.sort(np.sqrt(roots.real))
        assert band == pytest.approx(tuple(expected), abs=1e-10)

    def test_negative_diagonal_has_no_band(self):
        lin = Linearization2(-1.0, 0.0, 0.0, -1.0, 0.3, 7.0)
        assert instability_band(lin) is None
        assert np.all(det_m(lin, np.linspace(0.0, 10.0, 200)) > 0.0)

    def test_turing_conditions_unstable_example(self):
        rep = turing_conditions(TURING)
        assert rep.trace_negative and rep.determinant_positive
        assert rep.kinetics_stable
        assert rep.band is not None
        assert rep.trace_negative_on_band
        assert rep.turing_unstable

    def test_turing_conditions_stable_kinetics_no_band(self):
        rep = turing_conditions(Linearization2(-1.0, 0.0, 0.0, -1.0, 1.0, 2.0))
        assert rep.trace_negative and rep.determinant_positive
        assert rep.band is None and not rep.turing_unstable

    def test_turing_conditions_failing_trace(self):
        rep = turing_conditions(Linearization2(2.0, 0.0, 0.0, -1.0, 1.0, 2.0))
        assert not rep.trace_negative
        assert not rep.kinetics_stable

    def test_det_negative_inside_band_only(self):
        band = instability_band(TURING)
        inside = np.linspace(band[0] * 1.01, band[1] * 0.99, 50)
        outside = np.concatenate([np.linspace(1e-3, band[0] * 0.99, 50),
                                  np.linspace(band[1] * 1.01, 4.0, 50)])
        assert np.all(det_m(TURING, inside) < 0.0)
        assert np.all(det_m(TURING, outside) > 0.0)

    def test_mode_band_consistency(self):
        report = dispersion_scan(TURING, L=4.0)
        band = report.band
        for mode in report.modes:
            inside = band[0] < mode.k < band[1]
            assert mode.unstable == inside


class TestCriticalD1:
    def test_turing_example_value(self):
        out = critical_d1(1.0, 2.0, -2.0, -2.0, d2=10.0, k=1.0)
        assert out.d1_star == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert out.det_slope > 0.0  # detM increases in d1 here: unstable side is below

    def test_determinant_vanishes_at_star(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            a, b, c, d = rng.normal(size=4)
            d2 = rng.uniform(0.1, 10.0)
            k = rng.uniform(0.2, 3.0)
            denom = k * k * (d2 * k * k - d)
            if abs(denom) < 1e-6:
                continue
            star = critical_d1(a, b, c, d, d2, k).d1_star
            if star <= 0.0:
                continue
            lin = Linearization2(a, b, c, d, star, d2)
            scale = max(1.0, abs(a * d - b * c))
            assert abs(float(det_m(lin, k))) <= 1e-12 * scale * 10

    def test_bisection_oracle(self):
        # locate the root of detM(k) in d1 by bisection and compare
        def det_of_d1(d1):
            return float(det_m(Linearization2(1.0, 2.0, -2.0, -2.0, d1, 10.0), 1.0))
        lo, hi = 1e-6, 10.0
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if det_of_d1(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        star = critical_d1(1.0, 2.0, -2.0, -2.0, 10.0, 1.0).d1_star
        assert star == pytest.approx(0.5 * (lo + hi), abs=1e-10)

    def test_unstable_side(self):
        assert float(det_m(TURING, 1.0)) == -2.0  # d1 = 0.5 < 2/3

    def test_degenerate_direction_raises(self):
        # d2 k^2 = d makes det independent of d1
        with pytest.raises(ValueError):
            critical_d1(1.0, 2.0, -2.0, 4.0, d2=1.0, k=2.0)


class TestGrowthRateExperiment:
    def test_zero_amplitude_degenerate(self):
        res = growth_rate_experiment(TURING, 4.0, 1, n_nodes=64, dt=1e-2,
                                     horizon=0.5, amplitude=0.0)
        assert res.degenerate
        assert res.measured is None
        assert math.isinf(res.relative_gap)

    def test_stable_mode_matches_prediction(self):
        res = growth_rate_experiment(TURING, 4.0, 2, n_nodes=200, dt=2e-3, horizon=4.0)
        assert not res.degenerate
        assert res.predicted < 0.0
        assert res.relative_gap < 0.02

    def test_unstable_mode_matches_prediction(self):
        res = growth_rate_experiment(TURING, 4.0, 1, n_nodes=200, dt=2e-3, horizon=4.0)
        assert res.predicted > 0.0
        assert res.measured > 0.0
        assert res.relative_gap < 0.02

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            growth_rate_experiment(TURING, 4.0, 0)

    def test_noise_seeded_growth_matches_fastest_mode(self):
        # random perturbations organize onto the fastest admissible mode
        from rdcert.grid import Grid1D, noise_field
        from rdcert.profiles import KineticsSpec, TimeProfile
        from rdcert.solver import SystemSpec, simulate

        L = 4.0
        grid = Grid1D(L, 200, "dirichlet")
        kin = KineticsSpec(n_components=2, linear=TURING.matrix)
        sys = SystemSpec(grid=grid, kinetics=kin,
                         diffusion=(TimeProfile.constant(0.5, positive=True),
                                    TimeProfile.constant(10.0, positive=True)),
                         initial=noise_field(grid, 2, 1e-4, seed=6))
        traj = simulate(sys, 8.0, dt=2e-3)
        sel = traj.times >= 4.0  # after the stable modes have died
        slope = float(np.polyfit(traj.times[sel], np.log(traj.g[sel]), 1)[0])
        predicted = max(m.rate.real for m in dispersion_scan(TURING, L=L).modes)
        assert slope == pytest.approx(predicted, rel=0.05)
