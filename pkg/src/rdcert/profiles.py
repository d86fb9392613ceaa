"""Time-dependent scalar coefficients and reaction kinetics.

Every coefficient that varies in time (diffusion lower bound, linear decay
rate, nonlinearity strength, global modulation) is a :class:`TimeProfile`.
The reaction term has the split form ``F(u, x, t) = phi(t) * (A u + B(u))``
with a linear part ``A`` (constant matrix or coefficient field) and an
optional saturated power-law nonlinearity ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Literal, NamedTuple, Optional, Union

import numpy as np

ProfileKind = Literal["constant", "power_decay", "power_growth", "exponential", "tabulated"]
TimeLike = Union[float, np.ndarray]
ProfileLike = Union["TimeProfile", Callable[[TimeLike], TimeLike]]
LinearPart = Union[None, np.ndarray, Callable[[float, float], np.ndarray]]

_PARAMETRIC_KINDS = ("constant", "power_decay", "power_growth", "exponential")


@dataclass(frozen=True)
class TimeProfile:
    """Parametric scalar function of time, defined for t >= 0.

    Value at time t by kind:

    ==============  =========================================
    constant        v0 + offset
    power_decay     v0 * (1 + t)**(-exponent) + offset
    power_growth    v0 * (1 + t)**exponent + offset
    exponential     v0 * exp(rate * t) + offset
    tabulated       linear interpolation of (t, value) rows
    ==============  =========================================

    Tabulated profiles are only defined on [0, t_max] and refuse evaluation
    outside.  Profiles declared ``positive`` raise if they ever evaluate to a
    value <= 0 (used for diffusion bounds and certificate weights).
    """

    kind: ProfileKind = "constant"
    v0: float = 0.0
    exponent: float = 0.0
    rate: float = 0.0
    offset: float = 0.0
    table: Optional[np.ndarray] = None
    positive: bool = False

    def __post_init__(self):
        if self.kind not in _PARAMETRIC_KINDS and self.kind != "tabulated":
            raise ValueError(f"unknown profile kind {self.kind!r}")
        for name in ("v0", "exponent", "rate", "offset"):
            if not math.isfinite(float(getattr(self, name))):
                raise ValueError(f"profile parameter {name!r} must be finite")
        if self.kind == "tabulated":
            if self.table is None:
                raise ValueError("tabulated profile requires a table")
            table = np.asarray(self.table, dtype=float)
            if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
                raise ValueError("profile table must have shape (m, 2) with m >= 2")
            if not np.all(np.isfinite(table)):
                raise ValueError("profile table entries must be finite")
            if table[0, 0] > 0.0:
                raise ValueError("profile table must start at t = 0")
            if np.any(np.diff(table[:, 0]) <= 0.0):
                raise ValueError("profile table times must be strictly increasing")
            object.__setattr__(self, "table", table)
        elif self.table is not None:
            raise ValueError("only tabulated profiles carry a table")

    @staticmethod
    def constant(v0: float, positive: bool = False) -> "TimeProfile":
        return TimeProfile("constant", v0=float(v0), positive=positive)

    @staticmethod
    def power_decay(v0: float, exponent: float, offset: float = 0.0,
                    positive: bool = False) -> "TimeProfile":
        return TimeProfile("power_decay", v0=float(v0), exponent=float(exponent),
                           offset=float(offset), positive=positive)

    @staticmethod
    def power_growth(v0: float, exponent: float, offset: float = 0.0,
                     positive: bool = False) -> "TimeProfile":
        return TimeProfile("power_growth", v0=float(v0), exponent=float(exponent),
                           offset=float(offset), positive=positive)

    @staticmethod
    def exponential(v0: float, rate: float, offset: float = 0.0,
                    positive: bool = False) -> "TimeProfile":
        return TimeProfile("exponential", v0=float(v0), rate=float(rate),
                           offset=float(offset), positive=positive)

    @staticmethod
    def tabulated(times, values, positive: bool = False) -> "TimeProfile":
        table = np.column_stack([np.asarray(times, float), np.asarray(values, float)])
        return TimeProfile("tabulated", table=table, positive=positive)

    def scaled(self, factor: float) -> "TimeProfile":
        """Profile evaluating to factor * value(t); every kind is closed under scaling."""
        if not math.isfinite(factor):
            raise ValueError("scale factor must be finite")
        positive = self.positive and factor > 0.0
        if self.kind == "tabulated":
            table = self.table.copy()
            table[:, 1] *= factor
            return replace(self, table=table, positive=positive)
        return replace(self, v0=factor * self.v0, offset=factor * self.offset,
                       positive=positive)

    @property
    def t_max(self) -> float:
        return float(self.table[-1, 0]) if self.kind == "tabulated" else math.inf

    def __call__(self, t: TimeLike) -> TimeLike:
        return eval_profile(self, t)


def eval_profile(profile: TimeProfile, t: TimeLike) -> TimeLike:
    """Evaluate ``profile`` at a scalar or array time t >= 0."""
    if isinstance(t, (float, int)):  # fast scalar path (np.float64 subclasses float)
        if not math.isfinite(t):
            raise ValueError("evaluation time must be finite")
        if t < 0.0:
            raise ValueError("profiles are defined for t >= 0")
        kind = profile.kind
        if kind == "constant":
            out = profile.v0 + profile.offset
        elif kind == "power_decay":
            out = profile.v0 * (1.0 + t) ** (-profile.exponent) + profile.offset
        elif kind == "power_growth":
            out = profile.v0 * (1.0 + t) ** profile.exponent + profile.offset
        elif kind == "exponential":
            out = profile.v0 * math.exp(profile.rate * t) + profile.offset
        else:
            t_top = profile.table[-1, 0]
            if t > t_top:
                raise ValueError(f"tabulated profile queried outside [0, {t_top:g}]")
            out = float(np.interp(t, profile.table[:, 0], profile.table[:, 1])) + profile.offset
        if profile.positive and out <= 0.0:
            raise ValueError("profile declared positive evaluated to a value <= 0")
        return float(out)
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    if not np.all(np.isfinite(t_arr)):
        raise ValueError("evaluation time must be finite")
    if np.any(t_arr < 0.0):
        raise ValueError("profiles are defined for t >= 0")
    kind = profile.kind
    if kind == "constant":
        val = np.full(t_arr.shape, profile.v0 + profile.offset)
    elif kind == "power_decay":
        val = profile.v0 * (1.0 + t_arr) ** (-profile.exponent) + profile.offset
    elif kind == "power_growth":
        val = profile.v0 * (1.0 + t_arr) ** profile.exponent + profile.offset
    elif kind == "exponential":
        val = profile.v0 * np.exp(profile.rate * t_arr) + profile.offset
    else:
        t_top = profile.table[-1, 0]
        if np.any(t_arr > t_top):
            raise ValueError(f"tabulated profile queried outside [0, {t_top:g}]")
        val = np.interp(t_arr, profile.table[:, 0], profile.table[:, 1]) + profile.offset
    if profile.positive and np.any(val <= 0.0):
        raise ValueError("profile declared positive evaluated to a value <= 0")
    return float(val) if scalar else val


def profile_derivative(profile: TimeProfile, t: TimeLike) -> TimeLike:
    """d/dt of a profile; analytic for parametric kinds, refined differences for tables."""
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    kind = profile.kind
    if kind == "constant":
        val = np.zeros(t_arr.shape)
    elif kind == "power_decay":
        val = -profile.exponent * profile.v0 * (1.0 + t_arr) ** (-profile.exponent - 1.0)
    elif kind == "power_growth":
        val = profile.exponent * profile.v0 * (1.0 + t_arr) ** (profile.exponent - 1.0)
    elif kind == "exponential":
        val = profile.rate * profile.v0 * np.exp(profile.rate * t_arr)
    else:
        val = np.vectorize(lambda s: _table_derivative(profile, s))(t_arr)
    return float(val) if scalar else np.asarray(val, dtype=float)


def _table_derivative(profile: TimeProfile, t: float) -> float:
    # Centered differences, halving the step until the estimate stabilizes.
    t_top = profile.table[-1, 0]
    probe = replace(profile, positive=False)
    h = max(t_top / 1024.0, 1e-8)
    prev = None
    est = 0.0
    for _ in range(48):
        lo = max(t - h, 0.0)
        hi = min(t + h, t_top)
        if hi <= lo:
            break
        est = (eval_profile(probe, hi) - eval_profile(probe, lo)) / (hi - lo)
        if prev is not None and abs(est - prev) <= 1e-9 * max(1.0, abs(est)):
            break
        prev = est
        h *= 0.5
        if h < 1e-13 * max(t_top, 1.0):
            break
    return float(est)


def as_time_function(profile: ProfileLike) -> Callable[[TimeLike], TimeLike]:
    """Adapt a TimeProfile or a plain callable to a vectorized function of t."""
    if isinstance(profile, TimeProfile):
        return lambda t: eval_profile(profile, t)
    if callable(profile):
        def wrapped(t):
            t_arr = np.asarray(t, dtype=float)
            try:
                out = np.asarray(profile(t_arr), dtype=float)
                if out.shape != t_arr.shape:
                    raise ValueError
            except (TypeError, ValueError):
                out = np.asarray([profile(float(s)) for s in np.atleast_1d(t_arr)], dtype=float)
                out = out.reshape(t_arr.shape)
            return float(out) if t_arr.ndim == 0 else out
        return wrapped
    raise TypeError(f"cannot interpret {profile!r} as a function of time")


@dataclass(frozen=True)
class KineticsSpec:
    """Reaction term F(u, x, t) = phi(t) * (A u + B(u)).

    ``linear`` is either a constant (n, n) matrix, a callable ``A(x, t)``
    returning the local matrix, or None.  The only built-in nonlinearity is

        B_i(u) = -c0(t) * u_i * |u|**(p-1) / (1 + |u|**(p-1))

    which vanishes at u = 0 and satisfies |B(u)| <= c0(t) * |u|**p for all u.
    ``modulation`` multiplies the whole reaction; configurations that modulate
    the diffusion as well declare matching diffusion profiles separately.
    """

    n_components: int = 1
    linear: LinearPart = None
    nonlinearity: Literal["none", "saturated_power"] = "none"
    c0: TimeProfile = TimeProfile.constant(0.0)
    p: float = 2.0
    modulation: TimeProfile = TimeProfile.constant(1.0)
    lipschitz_const: Optional[float] = None  # informational only

    def __post_init__(self):
        if self.n_components not in (1, 2):
            raise ValueError("kinetics support 1 or 2 components")
        if self.nonlinearity not in ("none", "saturated_power"):
            raise ValueError(f"unknown nonlinearity {self.nonlinearity!r}")
        if not (self.p > 1.0):
            raise ValueError("growth exponent p must exceed 1")
        if self.linear is not None and not callable(self.linear):
            mat = np.asarray(self.linear, dtype=float)
            if mat.shape != (self.n_components, self.n_components):
                raise ValueError(f"linear part must be {self.n_components}x{self.n_components}")
            if not np.all(np.isfinite(mat)):
                raise ValueError("linear part must be finite")
            object.__setattr__(self, "linear", mat)
        if self.lipschitz_const is not None and self.lipschitz_const <= 0:
            raise ValueError("declared Lipschitz constant must be positive")


def eval_reaction(kin: KineticsSpec, u, x=None, t: float = 0.0) -> np.ndarray:
    """Evaluate F(u, x, t) at one point (u shape (n,)) or a batch (n, N).

    Exactly zero at u = 0.
    """
    u_arr = np.asarray(u, dtype=float)
    if u_arr.ndim not in (1, 2) or u_arr.shape[0] != kin.n_components:
        raise ValueError(f"state must have {kin.n_components} leading components")
    if not np.all(np.isfinite(u_arr)):
        raise ValueError("state must be finite")
    out = np.zeros_like(u_arr)
    if kin.linear is not None:
        if callable(kin.linear):
            if u_arr.ndim == 1:
                out += np.asarray(kin.linear(x, t), dtype=float) @ u_arr
            else:
                xs = np.asarray(x, dtype=float)
                for j in range(u_arr.shape[1]):
                    out[:, j] = np.asarray(kin.linear(xs[j], t), dtype=float) @ u_arr[:, j]
        else:
            out += kin.linear @ u_arr
    if kin.nonlinearity == "saturated_power":
        c0 = eval_profile(kin.c0, t)
        if c0 < 0.0:
            raise ValueError("c0 profile must be nonnegative")
        mag = np.sqrt(np.sum(u_arr * u_arr, axis=0))
        s = mag ** (kin.p - 1.0)
        ratio = np.where(np.isinf(s), 1.0, s / (1.0 + s))
        out = out - c0 * u_arr * ratio
    return eval_profile(kin.modulation, t) * out


def gamma_of_t(kin: KineticsSpec, t: float, positions=None) -> float:
    """Tightest gamma(t) with (F_linear(u), u) <= -gamma(t) |u|^2 for all u.

    For a constant matrix this is -phi(t) * lambda_max((A + A^T)/2); for a
    coefficient field the worst case over ``positions`` is taken.  Negative
    values mean the linear part is destabilizing.
    """
    phi = eval_profile(kin.modulation, t)
    if phi <= 0.0:
        raise ValueError("modulation must be positive")
    if kin.linear is None:
        return 0.0
    if callable(kin.linear):
        if positions is None:
            raise ValueError("positions are required for coefficient-field linear parts")
        lam = max(symmetric_part_max(np.asarray(kin.linear(float(xj), t), dtype=float))
                  for xj in np.asarray(positions, dtype=float))
    else:
        lam = symmetric_part_max(kin.linear)
    return -phi * lam


def symmetric_part_max(m) -> float:
    """Largest eigenvalue of (m + m^T)/2."""
    mat = np.asarray(m, dtype=float)
    sym = 0.5 * (mat + mat.T)
    return float(np.linalg.eigvalsh(sym)[-1])


class CouplingBound(NamedTuple):
    gamma0: float        # max(a, d) + (b + c)/2
    cross_nonneg: bool   # b + c >= 0, the regime where gamma0 bounds the form
    form_max: float      # exact max of the quadratic form over the unit circle


def coupling_gamma0(a: float, b: float, c: float, d: float) -> CouplingBound:
    """Bound a*u1^2 + (b+c)*u1*u2 + d*u2^2 <= gamma0 * |u|^2 by splitting the cross term.

    The split uses u1*u2 <= (u1^2 + u2^2)/2, which only gives an upper bound
    when b + c >= 0; the exact maximum of the form is reported alongside so
    callers can see when the split value is not a valid bound.
    """
    half = 0.5 * (b + c)
    gamma0 = max(a + half, d + half)
    mid = 0.5 * (a + d)
    rad = math.hypot(0.5 * (a - d), half)
    return CouplingBound(float(gamma0), bool(b + c >= 0.0), float(mid + rad))


def effective_c0(kin: KineticsSpec) -> Callable[[TimeLike], TimeLike]:
    """c0 of the full reaction: modulation folds into the nonlinearity bound."""
    def fn(t):
        return eval_profile(kin.modulation, t) * eval_profile(kin.c0, t)
    return fn


def reaction_sup_bound(kin: KineticsSpec, u_max: float, horizon: float,
                       u_samples: int = 2001, t_samples: int = 65,
                       directions: int = 64, safety: float = 0.05) -> float:
    """Sampled upper bound for sup |F(u, x, t)| over |u| <= u_max, t in [0, horizon].

    Only valid for kinetics without coefficient fields; the result is inflated
    by ``safety`` to absorb the sampling gap.
    """
    if callable(kin.linear):
        raise ValueError("sampled reaction bound requires a constant linear part")
    ts = np.linspace(0.0, horizon, t_samples)
    if kin.n_components == 1:
        points = np.linspace(-u_max, u_max, u_samples)[None, :]
    else:
        radii = np.linspace(0.0, u_max, max(u_samples // directions, 32))
        angles = np.linspace(0.0, 2.0 * np.pi, directions, endpoint=False)
        points = np.concatenate(
            [np.stack([radii * np.cos(a), radii * np.sin(a)]) for a in angles], axis=1)
    worst = 0.0
    for t in ts:
        f = eval_reaction(kin, points, None, float(t))
        worst = max(worst, float(np.max(np.sqrt(np.sum(f * f, axis=0)))))
    return worst * (1.0 + safety)
