import math

import numpy as np
import pytest

from rdcert.apriori import (agmon_aggregate, build_paraboloid, constant_upper_solution,
                            estimate_agmon_constant, find_constant_upper, h2_monitor,
                            verify_pointwise_bound)
from rdcert.grid import Grid1D, field_from_function, mode_field, zero_field
from rdcert.profiles import KineticsSpec, TimeProfile
from rdcert.solver import SystemSpec, simulate

CONST_D = TimeProfile.constant(1.0, positive=True)


def make_traj(sys, T=1.0, dt=1e-3, **kw):
    return simulate(sys, T, dt=dt, **kw)


def diffusion_traj(n=128, L=1.0, amp=1.0, T=1.0, bc="dirichlet"):
    g = Grid1D(L, n, bc)
    sys = SystemSpec(grid=g, kinetics=KineticsSpec(n_components=1),
                     diffusion=(CONST_D,), initial=mode_field(g, 1, amp))
    return sys, make_traj(sys, T=T)


class TestBuildParaboloid:
    def test_reference_coefficients(self):
        # m1 = 2, d = 1, L = 1, u0 = 0: slope 1, level 1, both conditions hold
        g = Grid1D(1.0, 64)
        us = build_paraboloid(2.0, (CONST_D,), 1.0, zero_field(g, 1), horizon=5.0)
        assert us.a_us == pytest.approx(1.0)
        assert us.b_us == pytest.approx(1.0)
        assert us.radius >= 1.0
        # -2 a d + m1 <= 0
        assert -2.0 * us.a_us * 1.0 + 2.0 <= 1e-12

    def test_initial_peak_raises_level(self):
        g = Grid1D(1.0, 101)
        peak = field_from_function(g, lambda x: 5.0 * np.exp(-200.0 * (x - 0.5) ** 2))
        us = build_paraboloid(2.0, (CONST_D,), 1.0, peak, horizon=5.0)
        assert us.b_us >= 5.0 + us.a_us * 0.25 - 1e-9
        bound = us.bound_at(g.x, 1)
        assert np.all(peak.values <= bound + 1e-12)

    def test_decaying_diffusion_uses_infimum(self):
        g = Grid1D(1.0, 64)
        d = TimeProfile.power_decay(1.0, 1.0, positive=True)  # inf over [0,3] is 1/4
        us = build_paraboloid(2.0, (d,), 1.0, zero_field(g, 1), horizon=3.0)
        assert us.a_us == pytest.approx(4.0)

    def test_vanishing_diffusion_rejected(self):
        g = Grid1D(1.0, 64)
        dying = TimeProfile.tabulated([0.0, 1.0], [1.0, 0.0])
        with pytest.raises(ValueError):
            build_paraboloid(2.0, (dying,), 1.0, zero_field(g, 1), horizon=1.0)

    def test_zero_reaction_bound(self):
        g = Grid1D(1.0, 64)
        us = build_paraboloid(0.0, (CONST_D,), 1.0, zero_field(g, 1), horizon=1.0)
        assert us.a_us > 0.0  # tiny but positive so the radius is defined
        assert us.radius >= 1.0


class TestVerifyPointwise:
    def test_zero_trajectory_clean(self):
        g = Grid1D(1.0, 32)
        sys = SystemSpec(grid=g, kinetics=KineticsSpec(n_components=1),
                         diffusion=(CONST_D,), initial=zero_field(g, 1))
        traj = make_traj(sys, T=0.1)
        us = build_paraboloid(1.0, (CONST_D,), 1.0, sys.initial, horizon=0.1)
        assert verify_pointwise_bound(traj, us) == []

    def test_pure_diffusion_respects_barrier(self):
        sys, traj = diffusion_traj(amp=0.5)
        us = build_paraboloid(0.0, sys.diffusion, 1.0, sys.initial, horizon=1.0)
        assert verify_pointwise_bound(traj, us) == []

    def test_corrupted_barrier_flags_initial_time(self):
        from rdcert.apriori import UpperSolution
        sys, traj = diffusion_traj(amp=1.0)
        low = UpperSolution(kind="paraboloid", a_us=0.1, b_us=0.5)  # below the peak
        violations = verify_pointwise_bound(traj, low)
        assert violations
        assert violations[0].t == 0.0
        assert violations[0].value > violations[0].bound

    def test_constant_barrier_checks_both_sides(self):
        from rdcert.apriori import UpperSolution
        g = Grid1D(1.0, 32, "neumann")
        sys = SystemSpec(grid=g, kinetics=KineticsSpec(n_components=1),
                         diffusion=(CONST_D,),
                         initial=field_from_function(g, lambda x: -np.ones_like(x)))
        traj = make_traj(sys, T=0.05)
        tight = UpperSolution(kind="constant", levels=[0.5])
        violations = verify_pointwise_bound(traj, tight)
        assert violations and violations[0].value == -1.0


class TestMonitors:
    def test_h2_monitor_diffusion_peaks_at_start(self):
        # diffusion only smooths: the H2 norm is largest at t = 0
        sys, traj = diffusion_traj(n=200, L=2.0, amp=0.3)
        m2, t_at = h2_monitor(traj)
        assert t_at == 0.0
        assert m2 == pytest.approx(0.92735766352080915, rel=2e-4)

    def test_h2_dominates_l2(self):
        _, traj = diffusion_traj()
        m2, _ = h2_monitor(traj)
        assert m2 >= float(np.max(traj.l2))

    def test_agmon_constant_of_sine(self):
        # sup/(l2^(1/4) h2^(3/4)) of sin(x) on (0, pi)
        sys, traj = diffusion_traj(n=400, L=math.pi, amp=1.0, T=0.01)
        c_hat = estimate_agmon_constant(traj)
        assert c_hat == pytest.approx(0.52846909040633747, rel=5e-4)

    def test_agmon_scale_invariance_exact(self):
        g = Grid1D(1.0, 64)
        def run(amp):
            sys = SystemSpec(grid=g, kinetics=KineticsSpec(n_components=1),
                             diffusion=(CONST_D,), initial=mode_field(g, 1, amp))
            return estimate_agmon_constant(make_traj(sys, T=0.05))
        assert run(1.0) == run(16.0)  # homogeneity degrees 1/4 + 3/4 cancel exactly

    def test_agmon_monotone_under_extension(self):
        g = Grid1D(1.0, 64)
        kin = KineticsSpec(n_components=1, linear=np.array([[1.0]]))
        sys = SystemSpec(grid=g, kinetics=kin, diffusion=(CONST_D,),
                         initial=mode_field(g, 1, 0.5))
        short = make_traj(sys, T=0.5)
        long = make_traj(sys, T=1.0)
        assert estimate_agmon_constant(long) >= estimate_agmon_constant(short) - 1e-15

    def test_zero_trajectory_undefined(self):
        g = Grid1D(1.0, 32)
        sys = SystemSpec(grid=g, kinetics=KineticsSpec(n_components=1),
                         diffusion=(CONST_D,), initial=zero_field(g, 1))
        with pytest.raises(ValueError):
            estimate_agmon_constant(make_traj(sys, T=0.1))

    def test_aggregate_combines_both_constants(self):
        _, traj = diffusion_traj()
        agg = agmon_aggregate(traj, p=2.0)
        assert agg.value == pytest.approx(agg.c_hat * agg.m2_hat ** 0.75)

    def test_holder_interpolation_chain_discrete(self):
        # integral of |u|^(p+1) <= c_hat^(p-1) h2^(3(p-1)/4) g^((p+7)/4) at all steps
        g = Grid1D(1.0, 96)
        kin = KineticsSpec(n_components=1, linear=np.array([[1.5]]),
                           nonlinearity="saturated_power",
                           c0=TimeProfile.constant(0.5), p=2.0)
        sys = SystemSpec(grid=g, kinetics=kin, diffusion=(CONST_D,),
                         initial=mode_field(g, 1, 0.7))
        traj = make_traj(sys, T=1.0)
        c_hat = estimate_agmon_constant(traj)
        p = 2.0
        cap = c_hat ** (p - 1.0) * traj.h2 ** (0.75 * (p - 1.0)) * traj.g ** ((p + 7.0) / 4.0)
        assert np.all(traj.lp1 <= cap * (1.0 + 1e-12))


class TestConstantUpper:
    def saturated_kinetics(self, gamma0=0.1, c0=0.2, k=2.0):
        return KineticsSpec(n_components=1, linear=np.array([[gamma0]]),
                            nonlinearity="saturated_power",
                            c0=TimeProfile.constant(c0), p=2.0,
                            modulation=TimeProfile.power_decay(1.0, k, positive=True))

    def test_analytic_level_accepted(self):
        # F(u) = phi (gamma0 u - c0 u^2/(1+u)) <= 0 iff u >= gamma0/(c0-gamma0)
        kin = self.saturated_kinetics()
        level = 0.1 / (0.2 - 0.1)  # = 1
        us = constant_upper_solution(kin, [level * 1.001], u_max=50.0, horizon=20.0)
        assert us.levels[0] == pytest.approx(1.001)

    def test_too_small_level_rejected(self):
        kin = self.saturated_kinetics()
        with pytest.raises(ValueError):
            constant_upper_solution(kin, [0.5], u_max=50.0, horizon=20.0)

    def test_automatic_search(self):
        kin = self.saturated_kinetics()
        us = find_constant_upper(kin, u_max=8.0, horizon=20.0)
        assert us is not None
        assert us.levels[0] >= 1.0 - 1e-6

    def test_search_fails_without_dissipation(self):
        kin = KineticsSpec(n_components=1, linear=np.array([[0.5]]))
        assert find_constant_upper(kin, u_max=10.0, horizon=5.0) is None

    def test_barrier_holds_along_neumann_run(self):
        kin = self.saturated_kinetics()
        g = Grid1D(1.0, 64, "neumann")
        sys = SystemSpec(grid=g, kinetics=kin,
                         diffusion=(CONST_D,),
                         initial=field_from_function(g, lambda x: 0.5 + 0.1 * np.cos(np.pi * x)))
        traj = make_traj(sys, T=5.0, dt=1e-3)
        us = constant_upper_solution(kin, [1.5], u_max=50.0, horizon=5.0)
        assert verify_pointwise_bound(traj, us) == []
