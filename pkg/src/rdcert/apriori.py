"""A-priori pointwise bounds and empirical constants measured along trajectories.

Upper solutions give pointwise control: a downward paraboloid for Dirichlet
problems whose reaction is bounded by M1, a constant level for Neumann
problems whose reaction turns nonpositive above it.  Trajectory
post-processing supplies the two empirical constants every certificate needs:
the running maximum of the discrete H2 norm and the multiplicative-inequality
constant sup ||u||_inf / (||u||^(1/4) ||u||_H2^(3/4)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .grid import Field
from .profiles import KineticsSpec, TimeProfile, eval_profile, eval_reaction
from .solver import Trajectory

__all__ = [
    "UpperSolution", "PointwiseViolation", "build_paraboloid",
    "constant_upper_solution", "find_constant_upper", "verify_pointwise_bound",
    "h2_monitor", "estimate_agmon_constant", "agmon_aggregate", "AgmonAggregate",
]

# The paraboloid condition involves the Laplacian of -a|x|^2, which is -2a per
# space dimension; this package is one-dimensional throughout.
_DIMENSION = 1


@dataclass(frozen=True)
class UpperSolution:
    """Pointwise barrier: v(x) = -a x^2 + b (paraboloid) or constant levels."""

    kind: str  # "paraboloid" | "constant"
    a_us: float = 0.0
    b_us: float = 0.0
    levels: Optional[np.ndarray] = None
    note: str = ""

    def __post_init__(self):
        if self.kind == "paraboloid":
            if self.a_us <= 0.0 or self.b_us <= 0.0:
                raise ValueError("paraboloid coefficients must be positive")
        elif self.kind == "constant":
            if self.levels is None:
                raise ValueError("constant upper solutions need levels")
            object.__setattr__(self, "levels", np.atleast_1d(np.asarray(self.levels, float)))
        else:
            raise ValueError(f"unknown upper solution kind {self.kind!r}")

    @property
    def radius(self) -> float:
        """Radius of the ball on which the paraboloid is nonnegative."""
        if self.kind != "paraboloid":
            raise ValueError("radius only applies to paraboloids")
        return math.sqrt(self.b_us / self.a_us)

    def bound_at(self, x: np.ndarray, n_components: int) -> np.ndarray:
        """Upper bound per component, shape (n_components, len(x))."""
        if self.kind == "paraboloid":
            v = -self.a_us * np.asarray(x, float) ** 2 + self.b_us
            return np.repeat(v[None, :], n_components, axis=0)
        return np.repeat(self.levels[:, None], len(x), axis=1)


class PointwiseViolation(NamedTuple):
    t: float
    x: float
    component: int
    value: float
    bound: float


def build_paraboloid(m1: float, diffusion: Sequence[TimeProfile], L: float,
                     u0: Field, horizon: float, t_samples: int = 513,
                     margin: float = 0.0) -> UpperSolution:
    """Certified paraboloid barrier v(x) = -a x^2 + b for a Dirichlet problem
    whose reaction magnitude never exceeds ``m1``.

    Chooses a = m1 / (2 * inf_t min_i d_i(t)) so the barrier's diffusion
    deficit dominates the reaction for every component at all sampled times,
    then b large enough that the zero set of v contains (0, L) and v dominates
    the initial data.  Fails when the diffusion infimum vanishes over the
    horizon (nothing to push the barrier down against).
    """
    if m1 < 0.0:
        raise ValueError("reaction bound m1 must be >= 0")
    ts = np.linspace(0.0, horizon, t_samples)
    d_inf = min(float(np.min(np.asarray(eval_profile(p, ts), dtype=float)))
                for p in diffusion)
    if d_inf <= 0.0:
        raise ValueError("diffusion infimum over the horizon is not positive; "
                         "no paraboloid barrier exists")
    a = m1 / (2.0 * _DIMENSION * d_inf) if m1 > 0.0 else 1e-12
    xs = u0.grid.x
    b_init = float(np.max(u0.values + a * xs[None, :] ** 2))
    b = max(a * L * L, b_init + margin)
    if b <= 0.0:
        b = a * L * L  # nonpositive initial data: containment alone decides
    note = (f"barrier slope a = m1/(2*{_DIMENSION}*inf d) with the factor 2 per "
            f"space dimension; d_inf = {d_inf:.6g} over [0, {horizon:g}]")
    return UpperSolution(kind="paraboloid", a_us=a, b_us=b, note=note)


def constant_upper_solution(kin: KineticsSpec, levels, u_max: float, horizon: float,
                            samples: int = 4096, seed: int = 0) -> UpperSolution:
    """Constant barrier levels for a Neumann problem, verified by sampling.

    Checks F_i(u) <= 0 whenever u_i >= level_i (and the mirrored condition
    below -level_i) over random states with |u_j| <= u_max and sampled times.
    Raises when a sampled state violates the sign condition.
    """
    levels_arr = np.atleast_1d(np.asarray(levels, dtype=float))
    if levels_arr.shape[0] != kin.n_components:
        raise ValueError("one level per component is required")
    if np.any(levels_arr <= 0.0):
        raise ValueError("levels must be positive")
    ok, detail = _check_sign_condition(kin, levels_arr, u_max, horizon, samples, seed)
    if not ok:
        raise ValueError(f"sign condition fails: {detail}")
    return UpperSolution(kind="constant", levels=levels_arr,
                         note=f"sign condition sampled with {samples} states on "
                              f"[0, {horizon:g}], |u| <= {u_max:g}")


def _check_sign_condition(kin, levels, u_max, horizon, samples, seed):
    rng = np.random.default_rng(seed)
    ts = np.linspace(0.0, horizon, 33)
    n = kin.n_components
    for i in range(n):
        above = rng.uniform(-u_max, u_max, size=(n, samples))
        above[i] = rng.uniform(levels[i], max(u_max, levels[i] * 1.0001), size=samples)
        below = -above
        for t in ts:
            f_hi = eval_reaction(kin, above, None, float(t))
            if np.any(f_hi[i] > 0.0):
                j = int(np.argmax(f_hi[i]))
                return False, (f"F_{i}(u) = {f_hi[i][j]:.3g} > 0 at u = "
                               f"{above[:, j].tolist()}, t = {t:g}")
            f_lo = eval_reaction(kin, below, None, float(t))
            if np.any(f_lo[i] < 0.0):
                j = int(np.argmin(f_lo[i]))
                return False, (f"F_{i}(u) = {f_lo[i][j]:.3g} < 0 at u = "
                               f"{below[:, j].tolist()}, t = {t:g}")
    return True, ""


def find_constant_upper(kin: KineticsSpec, u_max: float, horizon: float,
                        min_level: float = 0.0,
                        candidates: int = 64) -> Optional[UpperSolution]:
    """Scan candidate levels (single equation only) for the smallest constant
    barrier; None when no level up to u_max works.

    ``min_level`` lets callers force the barrier above the initial data,
    which the comparison argument needs in addition to the sign condition.
    """
    if kin.n_components != 1:
        raise ValueError("automatic level search only supports single equations")
    lo = max(u_max / candidates, min_level, 1e-12)
    if lo > u_max:
        return None
    for level in np.geomspace(lo, u_max, candidates):
        try:
            return constant_upper_solution(kin, [level], u_max, horizon)
        except ValueError:
            continue
    return None


def verify_pointwise_bound(traj: Trajectory, us: UpperSolution,
                           tol: Optional[float] = None) -> list:
    """All recorded (t, x, component) points where the trajectory escapes the
    barrier, above v or below -v.  Empty list means the bound holds."""
    if not traj.snapshots:
        raise ValueError("trajectory carries no snapshots")
    grid = traj.snapshots[0].grid
    xs = grid.x
    n_comp = traj.snapshots[0].n_components
    bound = us.bound_at(xs, n_comp)
    if tol is None:
        tol = 1e-9 * max(1.0, float(np.max(np.abs(bound))))
    violations = []
    for t, snap in zip(traj.snapshot_times, traj.snapshots):
        vals = snap.values
        over = vals > bound + tol
        under = vals < -bound - tol
        for comp, j in zip(*np.nonzero(over | under)):
            violations.append(PointwiseViolation(
                t=float(t), x=float(xs[j]), component=int(comp),
                value=float(vals[comp, j]), bound=float(bound[comp, j])))
    return violations


def h2_monitor(traj: Trajectory) -> tuple[float, float]:
    """Largest recorded discrete H2 norm and the time it was attained."""
    i = int(np.argmax(traj.h2))
    return float(traj.h2[i]), float(traj.times[i])


def estimate_agmon_constant(traj: Trajectory) -> float:
    """Empirical constant of ||u||_inf <= c ||u||^(1/4) ||u||_H2^(3/4):
    the largest recorded ratio.  Scale-invariant (the homogeneity degrees sum
    to one) and nondecreasing as more of the trajectory is included."""
    mask = (traj.l2 > 0.0) & (traj.h2 > 0.0)
    if not np.any(mask):
        raise ValueError("trajectory is identically zero; the ratio is undefined")
    ratios = traj.sup[mask] / (traj.l2[mask] ** 0.25 * traj.h2[mask] ** 0.75)
    return float(np.max(ratios))


class AgmonAggregate(NamedTuple):
    value: float    # c_hat**(p-1) * m2_hat**(3(p-1)/4), multiplies c0(t) in alpha
    c_hat: float
    m2_hat: float
    t_at_max_h2: float


def agmon_aggregate(traj: Trajectory, p: float) -> AgmonAggregate:
    """The measured factor turning the nonlinearity strength c0(t) into the
    comparison coefficient alpha(t).  Marked empirical in every report that
    uses it: both ingredients are maxima over the recorded trajectory, not
    proved constants."""
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    c_hat = estimate_agmon_constant(traj)
    m2_hat, t_at = h2_monitor(traj)
    value = c_hat ** (p - 1.0) * m2_hat ** (0.75 * (p - 1.0))
    return AgmonAggregate(value=float(value), c_hat=c_hat, m2_hat=m2_hat, t_at_max_h2=t_at)
