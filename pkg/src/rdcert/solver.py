"""IMEX time integration of the semilinear parabolic system.

Diffusion is treated implicitly (Crank-Nicolson with the coefficient at the
step midpoint, one tridiagonal solve per component); the reaction and any
manufactured forcing are explicit, with an optional predictor-corrector stage
for second order in time.  A simulation records the norm time series that the
decay certificates are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import solve_banded

from .grid import Field, Grid1D, NormSet, norms_from_values, quadrature_weights
from .profiles import KineticsSpec, TimeProfile, eval_profile, eval_reaction

Scheme = str  # "one_stage" | "two_stage"


class BlowUpError(RuntimeError):
    """Raised when the discrete solution loses finiteness; carries the time."""

    def __init__(self, time: float, message: str = ""):
        super().__init__(message or f"solution lost finiteness at t = {time:.6g}")
        self.time = float(time)


class InconclusiveOrderError(RuntimeError):
    """Raised when refinement errors do not decrease monotonically."""


@dataclass(frozen=True)
class SystemSpec:
    """Full problem: grid, kinetics, per-component diffusion profiles, initial data."""

    grid: Grid1D
    kinetics: KineticsSpec
    diffusion: Sequence[TimeProfile]
    initial: Field
    forcing: Optional[Callable[[np.ndarray, float], np.ndarray]] = None

    def __post_init__(self):
        profiles = tuple(self.diffusion)
        if len(profiles) != self.kinetics.n_components:
            raise ValueError("one diffusion profile per component is required")
        object.__setattr__(self, "diffusion", profiles)
        if self.initial.grid != self.grid:
            raise ValueError("initial field lives on a different grid")
        if self.initial.n_components != self.kinetics.n_components:
            raise ValueError("initial field component count mismatch")


@dataclass
class Trajectory:
    """Discrete solution record: per-step norm series plus thinned snapshots."""

    times: np.ndarray
    l2: np.ndarray
    sup: np.ndarray
    h1_semi: np.ndarray
    h2: np.ndarray
    lp1: np.ndarray  # integral of |u|**(p+1), for the energy-inequality check
    snapshot_times: np.ndarray
    snapshots: list
    metadata: dict = field(default_factory=dict)

    @property
    def g(self) -> np.ndarray:
        """L2 norm series, the quantity the comparison inequality bounds."""
        return self.l2

    def norms(self, i: int) -> NormSet:
        return NormSet(l2=float(self.l2[i]), sup=float(self.sup[i]),
                       h1_semi=float(self.h1_semi[i]), h2=float(self.h2[i]))


def apply_laplacian(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Three-point Laplacian; Dirichlet uses the implicit zero boundary values,
    Neumann the symmetric reflected stencil 2(u_1 - u_0)/h^2 at the ends."""
    h2 = grid.h * grid.h
    out = np.empty_like(values)
    out[:, 1:-1] = (values[:, :-2] - 2.0 * values[:, 1:-1] + values[:, 2:]) / h2
    if grid.bc == "dirichlet":
        out[:, 0] = (-2.0 * values[:, 0] + values[:, 1]) / h2
        out[:, -1] = (values[:, -2] - 2.0 * values[:, -1]) / h2
    else:
        out[:, 0] = 2.0 * (values[:, 1] - values[:, 0]) / h2
        out[:, -1] = 2.0 * (values[:, -2] - values[:, -1]) / h2
    return out


def _laplacian_bands(grid: Grid1D):
    # solve_banded layout: row 0 superdiagonal (padded left), row 1 diagonal,
    # row 2 subdiagonal (padded right).
    h2 = grid.h * grid.h
    diag = np.full(grid.n, -2.0 / h2)
    sup = np.zeros(grid.n)
    sub = np.zeros(grid.n)
    sup[1:] = 1.0 / h2
    sub[:-1] = 1.0 / h2
    if grid.bc == "neumann":
        sup[1] = 2.0 / h2
        sub[-2] = 2.0 / h2
    return sup, diag, sub


def _diffusion_values(sys: SystemSpec, t: float) -> np.ndarray:
    d = np.array([eval_profile(p, t) for p in sys.diffusion], dtype=float)
    if np.any(d <= 0.0):
        raise ValueError(f"diffusion coefficient is not positive at t = {t:.6g}")
    return d


def _explicit_term(sys: SystemSpec, values: np.ndarray, xs: np.ndarray, t: float) -> np.ndarray:
    out = eval_reaction(sys.kinetics, values, xs, t)
    if sys.forcing is not None:
        out = out + np.asarray(sys.forcing(xs, t), dtype=float)
    return out


def _implicit_solve(rhs: np.ndarray, d_vals: np.ndarray, dt: float, grid: Grid1D) -> np.ndarray:
    sup, diag, sub = _laplacian_bands(grid)
    out = np.empty_like(rhs)
    ab = np.empty((3, grid.n))
    for i in range(rhs.shape[0]):
        delta = 0.5 * dt * d_vals[i]
        # I - delta * Laplacian is strictly diagonally dominant for delta > 0
        np.multiply(sup, -delta, out=ab[0])
        np.multiply(diag, -delta, out=ab[1])
        ab[1] += 1.0
        np.multiply(sub, -delta, out=ab[2])
        out[i] = solve_banded((1, 1), ab, rhs[i], overwrite_ab=True, check_finite=False)
    return out


def _advance(values: np.ndarray, t: float, dt: float, sys: SystemSpec,
             scheme: Scheme, xs: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        d_mid = _diffusion_values(sys, t + 0.5 * dt)
        base = values + (0.5 * dt) * d_mid[:, None] * apply_laplacian(values, sys.grid)
        f0 = _explicit_term(sys, values, xs, t)
        pred = _implicit_solve(base + dt * f0, d_mid, dt, sys.grid)
        if not np.all(np.isfinite(pred)):
            raise BlowUpError(t + dt)
        if scheme == "one_stage":
            new = pred
        elif scheme == "two_stage":
            f1 = _explicit_term(sys, pred, xs, t + dt)
            new = _implicit_solve(base + (0.5 * dt) * (f0 + f1), d_mid, dt, sys.grid)
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
    if not np.all(np.isfinite(new)):
        raise BlowUpError(t + dt)
    return new


def step_imex(state: Field, t: float, dt: float, sys: SystemSpec,
              scheme: Scheme = "two_stage") -> Field:
    """One IMEX step from time t; returns a new field, the input is untouched."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if state.grid != sys.grid:
        raise ValueError("state lives on a different grid")
    return Field(sys.grid, _advance(state.values, t, dt, sys, scheme, sys.grid.x))


def simulate(sys: SystemSpec, T: float, dt: Optional[float] = None,
             record_every: Optional[int] = None, scheme: Scheme = "two_stage",
             seed: Optional[int] = None) -> Trajectory:
    """Advance the system to time T, recording norms every step.

    ``T`` is rounded to a whole number of steps of size ``dt`` (default
    min(1e-3, h)).  Snapshots of the full field are kept every
    ``record_every`` steps (default about 2000 over the run) plus the final
    state.  Blow-up raises :class:`BlowUpError` carrying the failure time;
    non-finite values are never recorded.
    """
    if T <= 0.0:
        raise ValueError("final time T must be positive")
    grid = sys.grid
    if dt is None:
        dt = min(1e-3, grid.h)
    if dt <= 0.0 or dt > T * (1.0 + 1e-12):
        raise ValueError("need 0 < dt <= T")
    n_steps = max(1, int(round(T / dt)))
    if record_every is None:
        record_every = max(1, n_steps // 2000)
    xs = grid.x
    weights = quadrature_weights(grid)
    lp_exp = sys.kinetics.p + 1.0

    times = dt * np.arange(n_steps + 1)
    l2 = np.empty(n_steps + 1)
    sup = np.empty(n_steps + 1)
    h1 = np.empty(n_steps + 1)
    h2 = np.empty(n_steps + 1)
    lp1 = np.empty(n_steps + 1)
    snapshot_times = [0.0]
    snapshots = [Field(grid, sys.initial.values.copy())]

    def record(i, vals):
        with np.errstate(over="ignore", invalid="ignore"):
            ns = norms_from_values(vals, grid, weights)
            mag = np.sqrt(np.sum(vals * vals, axis=0))
            lp_val = float((mag ** lp_exp) @ weights)
        row = (ns.l2, ns.sup, ns.h1_semi, ns.h2, lp_val)
        if not all(math.isfinite(v) for v in row):
            # finite state whose squared norms overflow: treat as blow-up,
            # non-finite values are never recorded
            raise BlowUpError(float(times[i]))
        l2[i], sup[i], h1[i], h2[i], lp1[i] = row

    values = sys.initial.values.copy()
    record(0, values)
    for step in range(1, n_steps + 1):
        values = _advance(values, times[step - 1], dt, sys, scheme, xs)
        record(step, values)
        if step % record_every == 0 or step == n_steps:
            snapshot_times.append(float(times[step]))
            snapshots.append(Field(grid, values.copy()))

    metadata = {"dt": dt, "scheme": scheme, "seed": seed,
                "record_every": record_every, "T": float(times[-1])}
    return Trajectory(times=times, l2=l2, sup=sup, h1_semi=h1, h2=h2, lp1=lp1,
                      snapshot_times=np.asarray(snapshot_times), snapshots=snapshots,
                      metadata=metadata)


def energy_inequality_residuals(traj: Trajectory, sys: SystemSpec) -> np.ndarray:
    """Residuals of the discrete energy inequality between consecutive steps.

    Checks (g_{i+1}^2 - g_i^2) / (2 dt) <= -d(t) ||grad u||^2 - gamma(t) g^2
    + c0(t) * integral |u|^{p+1}, with the right side averaged over the two
    endpoints.  Positive entries measure violation; along a consistent
    trajectory they stay within O(dt + h^2) of zero.
    """
    from .profiles import effective_c0, gamma_of_t, symmetric_part_max

    times = traj.times
    dt = float(times[1] - times[0])
    d_min = np.minimum.reduce([np.asarray(eval_profile(p, times), dtype=float)
                               for p in sys.diffusion])
    kin = sys.kinetics
    phi = np.asarray(eval_profile(kin.modulation, times), dtype=float)
    if kin.linear is None:
        gammas = np.zeros_like(times)
    elif callable(kin.linear):
        gammas = np.array([gamma_of_t(kin, float(t), sys.grid.x) for t in times])
    else:
        gammas = -phi * symmetric_part_max(kin.linear)
    c0_eff = np.asarray(effective_c0(kin)(times), dtype=float)

    rhs = (-d_min * traj.h1_semi ** 2 - gammas * traj.l2 ** 2 + c0_eff * traj.lp1)
    lhs = (traj.l2[1:] ** 2 - traj.l2[:-1] ** 2) / (2.0 * dt)
    return lhs - 0.5 * (rhs[1:] + rhs[:-1])


@dataclass(frozen=True)
class ManufacturedCase:
    """Closed-form solution with its derivatives, for order verification.

    All three callables map (x array, t) to values of shape (n_components, n).
    """

    solution: Callable[[np.ndarray, float], np.ndarray]
    time_derivative: Callable[[np.ndarray, float], np.ndarray]
    laplacian: Callable[[np.ndarray, float], np.ndarray]


def manufactured_system(grid: Grid1D, kinetics: KineticsSpec,
                        diffusion: Sequence[TimeProfile],
                        case: ManufacturedCase) -> SystemSpec:
    """System whose exact solution is ``case.solution``: the induced forcing
    f = u*_t - D(t) (u*)_xx - F(u*) is appended to the reaction."""
    profiles = tuple(diffusion)

    def forcing(xs, t):
        exact = np.atleast_2d(np.asarray(case.solution(xs, t), dtype=float))
        d_vals = np.array([eval_profile(p, t) for p in profiles])
        lap = np.atleast_2d(np.asarray(case.laplacian(xs, t), dtype=float))
        dudt = np.atleast_2d(np.asarray(case.time_derivative(xs, t), dtype=float))
        return dudt - d_vals[:, None] * lap - eval_reaction(kinetics, exact, xs, t)

    initial = Field(grid, np.atleast_2d(np.asarray(case.solution(grid.x, 0.0), dtype=float)))
    return SystemSpec(grid=grid, kinetics=kinetics, diffusion=profiles,
                      initial=initial, forcing=forcing)


def _final_error(sys: SystemSpec, case: ManufacturedCase, T: float, dt: float,
                 scheme: Scheme) -> float:
    traj = simulate(sys, T, dt=dt, record_every=10 ** 9, scheme=scheme)
    exact = np.atleast_2d(np.asarray(case.solution(sys.grid.x, traj.metadata["T"]), dtype=float))
    diff = traj.snapshots[-1].values - exact
    return norms_from_values(diff, sys.grid).l2


@dataclass(frozen=True)
class ConvergenceReport:
    p_space: float
    p_time: float
    space_h: tuple
    space_errors: tuple
    time_dts: tuple
    time_errors: tuple
    space_label: str  # "measured" or "exact"
    time_label: str


def _fit_order(steps, errors, what: str):
    errors = np.asarray(errors, dtype=float)
    scale = max(float(np.max(errors)), 0.0)
    if scale < 1e-12:
        return math.inf, "exact"
    if np.any(np.diff(errors) >= 0.0):
        raise InconclusiveOrderError(
            f"{what} errors do not decrease monotonically: {errors.tolist()}")
    slope = np.polyfit(np.log(np.asarray(steps, dtype=float)), np.log(errors), 1)[0]
    return float(slope), "measured"


def convergence_orders(case: ManufacturedCase, kinetics: KineticsSpec,
                       diffusion: Sequence[TimeProfile], L: float = 1.0,
                       bc: str = "dirichlet", T: float = 1.0,
                       space_ns: Sequence[int] = (64, 128, 256),
                       space_dt: float = 2e-4,
                       time_n: int = 2001,
                       time_dts: Sequence[float] = (0.2, 0.1, 0.05),
                       scheme: Scheme = "two_stage") -> ConvergenceReport:
    """Observed spatial and temporal orders against a manufactured solution.

    Spatial study: refine the grid at a small fixed dt.  Temporal study:
    refine dt on one fine grid.  Errors at round-off level short-circuit to
    the label "exact"; non-monotone errors raise
    :class:`InconclusiveOrderError`.
    """
    space_errors = []
    space_h = []
    for n in space_ns:
        g = Grid1D(L, int(n), bc)
        sys = manufactured_system(g, kinetics, diffusion, case)
        space_errors.append(_final_error(sys, case, T, space_dt, scheme))
        space_h.append(g.h)
    p_space, space_label = _fit_order(space_h, space_errors, "spatial")

    g = Grid1D(L, time_n, bc)
    sys = manufactured_system(g, kinetics, diffusion, case)
    time_errors = [_final_error(sys, case, T, dt, scheme) for dt in time_dts]
    p_time, time_label = _fit_order(time_dts, time_errors, "temporal")

    return ConvergenceReport(p_space=p_space, p_time=p_time,
                             space_h=tuple(space_h), space_errors=tuple(space_errors),
                             time_dts=tuple(time_dts), time_errors=tuple(time_errors),
                             space_label=space_label, time_label=time_label)
