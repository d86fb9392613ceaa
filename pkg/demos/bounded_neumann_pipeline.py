"""Boundedness without decay under Neumann ends.

With no-flux boundaries the Poincare constant is zero, so diffusion gives no
decay at all; here the linear part is even destabilizing (rate
gamma0/(1+t)^k > 0) and only its integrability plus the saturated
nonlinearity keep the solution in check.  The decreasing bounded weight
mu(t) = mu0 + mu1 (1+t)^(-nu) certifies g(t) <= 1/mu0 for all time, and the
trajectory indeed settles at a positive level instead of decaying.
"""

import numpy as np

from rdcert import (Grid1D, KineticsSpec, ScenarioInputs, SystemSpec, TimeProfile,
                    agmon_aggregate, bounded_neumann_scenario, constant_field,
                    effective_c0, find_constant_upper, simulate, verify_envelope,
                    verify_pointwise_bound)

L, gamma0, k, nu, level, p = 1.0, 0.1, 2.0, 1.0, 0.5, 2.0
grid = Grid1D(L, 64, "neumann")
initial = constant_field(grid, level)
modulation = TimeProfile.power_decay(1.0, k, positive=True)


def system(c0_strength):
    kin = KineticsSpec(n_components=1, linear=np.array([[gamma0]]),
                       nonlinearity="saturated_power",
                       c0=TimeProfile.constant(c0_strength), p=p, modulation=modulation)
    return SystemSpec(grid=grid, kinetics=kin,
                      diffusion=(TimeProfile.constant(1.0, positive=True),),
                      initial=initial)


pilot = simulate(system(0.0), 5.0, dt=2e-3)
g0 = float(pilot.g[0])
mu0 = mu1 = 0.5 / g0  # mu(0) = mu0 + mu1 = 1/g(0)
q = (p + 3.0) / 4.0
exact_cap = (mu0 + mu1) ** (q - 1.0) * (nu * mu1 / (mu0 + mu1) - gamma0)
c0_strength = 0.5 * exact_cap / agmon_aggregate(pilot, p).value
print(f"g0 = {g0:.3f}; nonlinearity strength c0 = {c0_strength:.4f} "
      f"(> gamma0 = {gamma0}: the balance that prevents blow-up)")

traj = simulate(system(c0_strength), 50.0, dt=2e-3)
inputs = ScenarioInputs(L=L, bc="neumann", gamma0=gamma0, k=k, nu=nu, mu0=mu0,
                        mu1=mu1, p=p, g0=float(traj.g[0]),
                        c0=effective_c0(system(c0_strength).kinetics),
                        alpha_factor=agmon_aggregate(traj, p).value)
scenario = bounded_neumann_scenario(inputs, horizon=float(traj.times[-1]))

print("hypotheses:", scenario.hypotheses.conditions)
print("certifies decay:", scenario.certifies_decay,
      " uniform bound:", f"{scenario.uniform_bound:.3f}")
violations = verify_envelope(traj.times, traj.g, scenario.certificate, slack=0.02)
print("envelope holds:", violations.size == 0)
print(f"norm stays alive: min g = {float(np.min(traj.g)):.4f} "
      f"(envelope limit {scenario.uniform_bound:.2f}, never below a tenth of it)")

# the matching pointwise statement: a constant level is never crossed
barrier = find_constant_upper(system(c0_strength).kinetics, u_max=5.0, horizon=50.0,
                              min_level=1.0001 * float(np.max(traj.sup)))
print("constant barrier level:", None if barrier is None else float(barrier.levels[0]))
print("barrier violations:", len(verify_pointwise_bound(traj, barrier)))
