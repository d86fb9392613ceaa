"""Power-rate decay when the diffusion itself dies out like 1/(1+t).

With d(t) = d0/(1+t) the spectral picture degenerates as t grows, so no
exponential rate can hold; the certificate mu(t) = (1+t)^m / g(0) still
certifies algebraic decay as long as c(Omega) d0 > gamma0 + m.  The regime
flag m (q-1) vs 1 decides whether the nonlinearity strength may grow in time.
"""

import math

import numpy as np

from rdcert import (Grid1D, KineticsSpec, ScenarioInputs, SystemSpec, TimeProfile,
                    agmon_aggregate, effective_c0, mode_field, power_decay_scenario,
                    simulate, verify_envelope)

L, d0, gamma0, k, m, p = 1.0, 1.0, 0.2, 1.0, 2.0, 2.0
grid = Grid1D(L, 96, "dirichlet")
initial = mode_field(grid, 1, 0.3 / math.sqrt(L / 2.0))
diffusion = (TimeProfile.power_decay(d0, 1.0, positive=True),)
modulation = TimeProfile.power_decay(1.0, k, positive=True)  # gamma(t) = -gamma0/(1+t)^k


def system(c0_strength):
    kin = KineticsSpec(n_components=1, linear=np.array([[gamma0]]),
                       nonlinearity="saturated_power",
                       c0=TimeProfile.constant(c0_strength), p=p, modulation=modulation)
    return SystemSpec(grid=grid, kinetics=kin, diffusion=diffusion, initial=initial)


pilot = simulate(system(0.0), 5.0, dt=2e-3)
g0 = float(pilot.g[0])
q = (p + 3.0) / 4.0
margin = (math.pi / L) ** 2 * d0 - gamma0 - m
print(f"decay margin c(Omega) d0 - gamma0 - m = {margin:.3f}")
cap = (1.0 / g0) ** (q - 1.0) * margin / agmon_aggregate(pilot, p).value
c0_strength = 0.5 * cap

traj = simulate(system(c0_strength), 50.0, dt=2e-3)
inputs = ScenarioInputs(L=L, bc="dirichlet", d0=d0, gamma0=gamma0, k=k, m=m, p=p,
                        g0=float(traj.g[0]), c0=effective_c0(system(c0_strength).kinetics),
                        alpha_factor=agmon_aggregate(traj, p).value)
scenario = power_decay_scenario(inputs, horizon=float(traj.times[-1]))

print("hypotheses:", scenario.hypotheses.conditions)
print("strength must decay in time:", scenario.hypotheses.details["c0_must_decay"])
violations = verify_envelope(traj.times, traj.g, scenario.certificate, slack=0.02)
print(f"envelope {scenario.envelope_description}: "
      f"{'verified' if violations.size == 0 else 'VIOLATED'}")
for t_probe in (1.0, 10.0, 50.0):
    i = int(np.searchsorted(traj.times, t_probe))
    print(f"  t = {t_probe:5.1f}: g = {traj.g[i]:.3e}  envelope = "
          f"{float(traj.g[0]) * (1 + t_probe) ** (-m):.3e}")
