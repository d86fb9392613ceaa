"""Linear stability of two-component kinetics on an interval.

For the system u_t = d1 u_xx + a u + b v, v_t = d2 v_xx + c u + d v with
homogeneous Dirichlet ends, the sin(k x) exp(lambda t) ansatz reduces
stability to the eigenvalues of the 2x2 matrix

    M(k) = [[a - d1 k^2, b], [c, d - d2 k^2]].

This module evaluates M(k), its eigenvalues and determinant/trace closed
forms, locates the instability band in k, and measures mode growth rates on
actual simulations for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .grid import Field, Grid1D
from .profiles import KineticsSpec, TimeProfile
from .solver import SystemSpec, simulate


@dataclass(frozen=True)
class Linearization2:
    """Kinetics Jacobian entries at the origin plus the two diffusion constants."""

    a: float
    b: float
    c: float
    d: float
    d1: float
    d2: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "d1", "d2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.d1 <= 0.0 or self.d2 <= 0.0:
            raise ValueError("diffusion constants must be positive")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])


def m_of_k(lin: Linearization2, k: float) -> np.ndarray:
    """The mode matrix M(k); M(0) is the kinetics matrix itself."""
    k2 = k * k
    return np.array([[lin.a - lin.d1 * k2, lin.b],
                     [lin.c, lin.d - lin.d2 * k2]])


def eig2(m) -> tuple[complex, complex]:
    """Both eigenvalues of a 2x2 matrix, ordered by descending real part.

    Roots of lambda^2 - tr lambda + det = 0 via the cancellation-free
    quadratic formula; complex pairs are returned with the +imag root first.
    """
    mat = np.asarray(m, dtype=float)
    if mat.shape != (2, 2) or not np.all(np.isfinite(mat)):
        raise ValueError("need a finite 2x2 matrix")
    tr = mat[0, 0] + mat[1, 1]
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        r1 = 0.5 * (tr + root) if tr >= 0.0 else 0.5 * (tr - root)
        r2 = det / r1 if r1 != 0.0 else 0.0
        lo, hi = sorted((r1, r2))
        return complex(hi), complex(lo)
    half_im = 0.5 * math.sqrt(-disc)
    return complex(0.5 * tr, half_im), complex(0.5 * tr, -half_im)


def numerical_abscissa(m) -> float:
    """Largest eigenvalue of the symmetric part: the best constant w with
    (m u, u) <= w |u|^2.  May exceed the spectral abscissa for non-normal
    matrices, in which case negative eigenvalues do not give a negative
    quadratic form."""
    mat = np.asarray(m, dtype=float)
    sym = 0.5 * (mat + mat.T)
    return float(np.linalg.eigvalsh(sym)[-1])


def det_m(lin: Linearization2, k) -> np.ndarray:
    """det M(k) in closed form: ad - bc - (a d2 + d d1) k^2 + d1 d2 k^4."""
    k2 = np.asarray(k, dtype=float) ** 2
    return (lin.a * lin.d - lin.b * lin.c
            - (lin.a * lin.d2 + lin.d * lin.d1) * k2 + lin.d1 * lin.d2 * k2 * k2)


def trace_m(lin: Linearization2, k) -> np.ndarray:
    """tr M(k) = a + d - (d1 + d2) k^2."""
    return lin.a + lin.d - (lin.d1 + lin.d2) * np.asarray(k, dtype=float) ** 2


def instability_band(lin: Linearization2) -> Optional[tuple[float, float]]:
    """Open interval of wavenumbers with det M(k) < 0, or None.

    The roots in K = k^2 of d1 d2 K^2 - (a d2 + d d1) K + (ad - bc) = 0 are
    computed with the cancellation-free quadratic formula; a band exists only
    when both roots are real, positive and distinct.
    """
    A = lin.d1 * lin.d2
    B = -(lin.a * lin.d2 + lin.d * lin.d1)
    C = lin.a * lin.d - lin.b * lin.c
    disc = B * B - 4.0 * A * C
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    q = -0.5 * (B + math.copysign(root, B)) if B != 0.0 else 0.5 * root
    k1sq = q / A
    k2sq = C / q if q != 0.0 else 0.0
    lo, hi = sorted((k1sq, k2sq))
    if lo <= 0.0 and hi <= 0.0:
        return None
    if lo <= 0.0 < hi:
        # det < 0 already at k = 0: kinetics unstable, band starts at 0
        lo = 0.0
    return (math.sqrt(lo), math.sqrt(hi))


class ModeRate(NamedTuple):
    n: int
    k: float
    rate: complex      # leading eigenvalue of M(k_n)
    unstable: bool


@dataclass(frozen=True)
class DispersionReport:
    """Per-wavenumber eigenvalue scan plus the instability band."""

    k: np.ndarray
    det: np.ndarray
    trace: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    max_growth_rate: float
    band: Optional[tuple[float, float]]
    modes: tuple  # admissible modes n pi / L when a length was supplied


def _eigen_pair_arrays(tr: np.ndarray, det: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    disc = tr * tr - 4.0 * det
    root = np.sqrt(disc.astype(complex))
    lam_a = 0.5 * (tr + root)
    lam_b = 0.5 * (tr - root)
    swap = lam_a.real < lam_b.real
    lam1 = np.where(swap, lam_b, lam_a)
    lam2 = np.where(swap, lam_a, lam_b)
    return lam1, lam2


def dispersion_scan(lin: Linearization2, k_max: Optional[float] = None,
                    samples: int = 400, L: Optional[float] = None) -> DispersionReport:
    """Evaluate det, trace and eigenvalues of M(k) on a uniform grid of
    wavenumbers in (0, k_max].

    Default k_max is twice the larger of the band's upper edge and 10 pi / L
    (or a kinetics-based scale when there is neither).  When ``L`` is given,
    the admissible Dirichlet modes k_n = n pi / L are listed with their
    leading growth rates.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    band = instability_band(lin)
    if k_max is None:
        candidates = []
        if band is not None:
            candidates.append(band[1])
        if L is not None:
            candidates.append(10.0 * math.pi / L)
        if not candidates:
            scale = max(abs(lin.a), abs(lin.d), 1e-12) / min(lin.d1, lin.d2)
            candidates.append(math.sqrt(scale))
        k_max = 2.0 * max(candidates)
    if k_max <= 0.0:
        raise ValueError("k_max must be positive")
    ks = np.linspace(k_max / samples, k_max, samples)
    det = det_m(lin, ks)
    tr = trace_m(lin, ks)
    lam1, lam2 = _eigen_pair_arrays(tr, det)
    modes = []
    if L is not None:
        n = 1
        while n * math.pi / L <= k_max:
            kn = n * math.pi / L
            lam = eig2(m_of_k(lin, kn))[0]
            modes.append(ModeRate(n=n, k=kn, rate=lam, unstable=lam.real > 0.0))
            n += 1
    return DispersionReport(k=ks, det=det, trace=tr, lam1=lam1, lam2=lam2,
                            max_growth_rate=float(np.max(lam1.real)),
                            band=band, modes=tuple(modes))


@dataclass(frozen=True)
class TuringConditions:
    """Stability of the kinetics together with diffusion-driven instability."""

    trace_negative: bool        # a + d < 0
    determinant_positive: bool  # ad - bc > 0
    kinetics_stable: bool       # both, i.e. Re lambda(M) < 0
    band: Optional[tuple[float, float]]
    trace_negative_on_band: Optional[bool]
    turing_unstable: bool


def turing_conditions(lin: Linearization2) -> TuringConditions:
    """Check the classical conditions: stable kinetics destabilized by
    unequal diffusion through a det M(k) < 0 band on which tr M(k) < 0,
    so the crossing eigenvalue is real through zero."""
    tr_neg = lin.a + lin.d < 0.0
    det_pos = lin.a * lin.d - lin.b * lin.c > 0.0
    band = instability_band(lin)
    tr_on_band = None
    if band is not None:
        # trace decreases in k, so its maximum over the band sits at the left edge
        tr_on_band = bool(trace_m(lin, band[0]) < 0.0)
    return TuringConditions(
        trace_negative=bool(tr_neg),
        determinant_positive=bool(det_pos),
        kinetics_stable=bool(tr_neg and det_pos),
        band=band,
        trace_negative_on_band=tr_on_band,
        turing_unstable=bool(tr_neg and det_pos and band is not None and tr_on_band),
    )


class CriticalDiffusion(NamedTuple):
    d1_star: float
    det_slope: float  # d det/d d1 = k^2 (d2 k^2 - d); its sign locates the unstable side


def critical_d1(a: float, b: float, c: float, d: float, d2: float, k: float) -> CriticalDiffusion:
    """The activator diffusion d1* at which det M(k) = 0 for the given mode.

    d1* = (a d2 k^2 - (ad - bc)) / (k^2 (d2 k^2 - d)).  The reported slope
    sign tells from which side of d1* the determinant is negative.
    """
    if k <= 0.0:
        raise ValueError("wavenumber must be positive")
    denom = k * k * (d2 * k * k - d)
    if denom == 0.0:
        raise ValueError("degenerate direction: det M(k) does not depend on d1")
    d1_star = (a * d2 * k * k - (a * d - b * c)) / denom
    return CriticalDiffusion(d1_star=float(d1_star), det_slope=float(denom))


@dataclass(frozen=True)
class GrowthRateResult:
    measured: Optional[float]
    predicted: float
    mode: int
    k: float
    window: tuple[float, float]
    degenerate: bool
    oscillatory: bool  # leading eigenvalue is complex; the fit is unreliable

    @property
    def relative_gap(self) -> float:
        if self.measured is None:
            return math.inf
        scale = max(abs(self.predicted), 1e-12)
        return abs(self.measured - self.predicted) / scale


def _leading_eigenvector(m: np.ndarray, lam: complex) -> np.ndarray:
    rows = [np.array([m[0, 0] - lam.real, m[0, 1]]),
            np.array([m[1, 0], m[1, 1] - lam.real])]
    # (M - lam I) p = 0: build p from the numerically larger row
    cand1 = np.array([-rows[0][1], rows[0][0]])
    cand2 = np.array([-rows[1][1], rows[1][0]])
    p = cand1 if np.linalg.norm(rows[0]) >= np.linalg.norm(rows[1]) else cand2
    norm = np.linalg.norm(p)
    if norm == 0.0:  # defective or diagonal: fall back to a coordinate direction
        p = np.array([1.0, 0.0])
        norm = 1.0
    return p / norm


def growth_rate_experiment(lin: Linearization2, L: float, mode: int,
                           n_nodes: int = 400, dt: float = 1e-3,
                           horizon: float = 5.0, amplitude: float = 1e-3,
                           fit_window: tuple[float, float] = (0.5, 1.0),
                           scheme: str = "two_stage") -> GrowthRateResult:
    """Simulate the linearized pair seeded with one sin(k_n x) eigenmode and
    fit the log-norm slope against the predicted Re lambda_1(k_n).

    A zero seed gives a zero trajectory and is reported as degenerate instead
    of a rate.
    """
    if mode < 1:
        raise ValueError("mode number must be >= 1")
    k = mode * math.pi / L
    m_k = m_of_k(lin, k)
    lam1 = eig2(m_k)[0]
    oscillatory = abs(lam1.imag) > 1e-12
    grid = Grid1D(L, n_nodes, "dirichlet")
    direction = _leading_eigenvector(m_k, lam1)
    values = amplitude * direction[:, None] * np.sin(k * grid.x)[None, :]
    kin = KineticsSpec(n_components=2, linear=lin.matrix)
    sys = SystemSpec(grid=grid, kinetics=kin,
                     diffusion=(TimeProfile.constant(lin.d1, positive=True),
                                TimeProfile.constant(lin.d2, positive=True)),
                     initial=Field(grid, values))
    traj = simulate(sys, horizon, dt=dt, scheme=scheme)
    lo = fit_window[0] * traj.times[-1]
    hi = fit_window[1] * traj.times[-1]
    sel = (traj.times >= lo) & (traj.times <= hi)
    window = (float(lo), float(hi))
    if amplitude == 0.0 or np.any(traj.g[sel] <= 0.0) or sel.sum() < 2:
        return GrowthRateResult(measured=None, predicted=lam1.real, mode=mode, k=k,
                                window=window, degenerate=True, oscillatory=oscillatory)
    slope = float(np.polyfit(traj.times[sel], np.log(traj.g[sel]), 1)[0])
    return GrowthRateResult(measured=slope, predicted=lam1.real, mode=mode, k=k,
                            window=window, degenerate=False, oscillatory=oscillatory)
