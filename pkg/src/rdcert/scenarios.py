"""Constructors for the specific decay/boundedness certificate scenarios.

Each constructor assembles the scalar comparison problem for one regime,
builds the matching certificate family, checks the regime's hypotheses on a
dense grid, and delegates the growth condition itself to
:func:`rdcert.inequality.check_certificate`.  Outcomes are reports, never
proofs: every check records its grid density and tolerance.

The four regimes (selected on the command line as run-theorem 3.1 .. 3.4):

* ``exponential_decay_scenario``: constant coefficients, Dirichlet ends,
  diffusion strong enough that sigma0 = d0 c(Omega) - a0 > 0; exponential
  certificate with rate sigma0/2.
* ``power_decay_scenario``: diffusion decaying like d0/(1+t), Dirichlet;
  power certificate (1+t)**m.
* ``bounded_neumann_scenario``: Neumann ends (no Poincare help), linear part
  destabilizing with integrable strength; bounded decreasing certificate,
  yielding boundedness without decay.
* ``modulated_scenario``: two components with a common time modulation of
  kinetics and diffusion; the sign of d0 c(Omega) - gamma0 selects between a
  power-decay certificate and a bounded one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .inequality import Certificate, CertificateReport, ScalarProblem, check_certificate
from .profiles import ProfileLike, TimeProfile, as_time_function, coupling_gamma0

__all__ = [
    "ScenarioInputs", "HypothesisReport", "Scenario", "ScenarioNotApplicable",
    "comparison_exponent", "exponential_decay_scenario", "power_decay_scenario",
    "bounded_neumann_scenario", "modulated_scenario",
]


class ScenarioNotApplicable(ValueError):
    """The structural preconditions of the requested scenario fail."""


def comparison_exponent(p: float) -> float:
    """Exponent of the comparison inequality induced by a degree-p nonlinearity."""
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    return (p + 3.0) / 4.0


@dataclass(frozen=True)
class ScenarioInputs:
    """Everything a scenario constructor may need; each constructor validates
    the subset it uses.

    ``c0`` is the effective nonlinearity strength of the full reaction
    (modulation folded in); ``alpha_factor`` is the measured aggregate that
    converts it into the comparison coefficient alpha(t) = alpha_factor * c0(t).
    """

    L: float
    bc: str = "dirichlet"
    a0: Optional[float] = None
    matrix: Optional[np.ndarray] = None
    d0: Optional[float] = None
    d1: Optional[float] = None
    d2: Optional[float] = None
    gamma0: Optional[float] = None
    k: Optional[float] = None
    m: Optional[float] = None
    nu: Optional[float] = None
    mu0: Optional[float] = None
    mu1: Optional[float] = None
    phi: Optional[TimeProfile] = None
    c0: Optional[ProfileLike] = None
    p: float = 2.0
    g0: Optional[float] = None
    alpha_factor: float = 0.0

    def poincare(self) -> float:
        if self.bc == "dirichlet":
            return (math.pi / self.L) ** 2
        return 0.0

    def c0_fn(self) -> Callable:
        if self.c0 is None:
            return as_time_function(TimeProfile.constant(0.0))
        return as_time_function(self.c0)

    def alpha_fn(self) -> Callable:
        c0 = self.c0_fn()
        factor = self.alpha_factor
        return lambda t: factor * c0(t)


@dataclass
class HypothesisReport:
    """Named boolean conditions plus diagnostic numbers for one scenario."""

    applicable: bool
    conditions: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    first_failure_t: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.applicable and all(self.conditions.values())


@dataclass
class Scenario:
    """A constructed certificate scenario, ready for envelope verification."""

    name: str
    case: Optional[str]
    problem: ScalarProblem
    certificate: Optional[Certificate]
    hypotheses: HypothesisReport
    certificate_check: Optional[CertificateReport]
    certifies_decay: bool
    uniform_bound: Optional[float]
    envelope_description: str

    @property
    def ready(self) -> bool:
        """All hypotheses hold and the growth condition passed on the grid."""
        return (self.hypotheses.passed and self.certificate_check is not None
                and self.certificate_check.passed)

    def envelope(self, t):
        if self.certificate is None:
            raise ScenarioNotApplicable("no certificate was constructed")
        return 1.0 / np.asarray(self.certificate.mu(t), dtype=float)


def _require(inp: ScenarioInputs, names) -> None:
    missing = [n for n in names if getattr(inp, n) is None]
    if missing:
        raise ScenarioNotApplicable(f"missing scenario inputs: {', '.join(missing)}")


def _grid_check(fn_lhs, fn_rhs, horizon: float, grid_points: int):
    """all(lhs <= rhs) on a uniform grid; returns (ok, first failing t)."""
    ts = np.linspace(0.0, horizon, grid_points)
    lhs = np.asarray(fn_lhs(ts), dtype=float)
    rhs = np.asarray(fn_rhs(ts), dtype=float)
    bad = np.nonzero(lhs > rhs)[0]
    if bad.size:
        return False, float(ts[int(bad[0])])
    return True, None


def exponential_decay_scenario(inp: ScenarioInputs, horizon: float,
                               grid_points: int = 10_000,
                               tol: float = 1e-12) -> Scenario:
    """Constant-coefficient Dirichlet regime with exponential decay.

    Requires sigma0 = d0 c(Omega) - a0 > 0 and checks that the nonlinearity
    strength satisfies c0(t) <= sigma0/2 * g0**-(q-1) * exp((q-1) sigma0 t / 2)
    / alpha_factor, the sufficient growth bound for this certificate.  The
    certified envelope is g0 * exp(-sigma0 t / 2).
    """
    if inp.bc != "dirichlet":
        raise ScenarioNotApplicable("exponential decay scenario needs Dirichlet ends")
    _require(inp, ("a0", "d0", "g0"))
    if not (inp.g0 > 0.0):
        raise ScenarioNotApplicable("needs g0 > 0")
    c_omega = inp.poincare()
    sigma0 = inp.d0 * c_omega - inp.a0
    if sigma0 <= 0.0:
        raise ScenarioNotApplicable(
            f"not applicable: d0 c(Omega) = {inp.d0 * c_omega:.6g} does not exceed a0 = {inp.a0:.6g}")
    q = comparison_exponent(inp.p)
    nu = 0.5 * sigma0
    cert = Certificate.exponential(1.0 / inp.g0, nu)
    alpha = inp.alpha_fn()
    problem = ScalarProblem(sigma=TimeProfile.constant(sigma0), alpha=alpha, q=q, g0=inp.g0)

    # alpha-level form of the sufficient bound on c0
    def alpha_cap(ts):
        return 0.5 * sigma0 * inp.g0 ** (-(q - 1.0)) * np.exp(0.5 * (q - 1.0) * sigma0 * ts)

    growth_ok, first_bad = _grid_check(alpha, alpha_cap, horizon, grid_points)
    report = check_certificate(problem, cert, horizon, grid_points, tol)
    hyp = HypothesisReport(
        applicable=True,
        conditions={
            "dirichlet_ends": True,
            "sigma_margin_positive": True,
            "nonlinearity_small_enough": growth_ok,
            "initial_value": report.c9_slack >= -tol,
            "comparison_inequality": report.passed,
        },
        details={"sigma0": sigma0, "nu": nu, "q": q, "poincare": c_omega,
                 "alpha_factor": inp.alpha_factor},
        first_failure_t=first_bad,
    )
    return Scenario(name="exponential-decay", case=None, problem=problem,
                    certificate=cert, hypotheses=hyp, certificate_check=report,
                    certifies_decay=True, uniform_bound=None,
                    envelope_description=f"g0 * exp(-{0.5 * sigma0:.6g} * t)")


def power_decay_scenario(inp: ScenarioInputs, horizon: float,
                         grid_points: int = 10_000, tol: float = 1e-12) -> Scenario:
    """Dirichlet regime with diffusion decaying like d0/(1+t) and linear decay
    rate -gamma0/(1+t)**k, certified by mu(t) = (1+t)**m / g0.

    Applicability needs k >= 1 and the margin c(Omega) d0 > gamma0 + m; the
    report also notes whether m (q - 1) < 1, in which case the admissible
    nonlinearity strength has to decay in time.
    """
    if inp.bc != "dirichlet":
        raise ScenarioNotApplicable("power decay scenario needs Dirichlet ends")
    _require(inp, ("d0", "gamma0", "k", "m", "g0"))
    if not (inp.g0 > 0.0):
        raise ScenarioNotApplicable("needs g0 > 0")
    c_omega = inp.poincare()
    margin = c_omega * inp.d0 - inp.gamma0 - inp.m
    if margin <= 0.0:
        raise ScenarioNotApplicable(
            f"not applicable: c(Omega) d0 = {c_omega * inp.d0:.6g} must exceed "
            f"gamma0 + m = {inp.gamma0 + inp.m:.6g}")
    q = comparison_exponent(inp.p)
    cert = Certificate.power(1.0 / inp.g0, inp.m)
    d0, gamma0, k = inp.d0, inp.gamma0, inp.k

    def sigma(ts):
        ts = np.asarray(ts, dtype=float)
        return c_omega * d0 / (1.0 + ts) - gamma0 * (1.0 + ts) ** (-k)

    problem = ScalarProblem(sigma=sigma, alpha=inp.alpha_fn(), q=q, g0=inp.g0)
    report = check_certificate(problem, cert, horizon, grid_points, tol)
    hyp = HypothesisReport(
        applicable=True,
        conditions={
            "dirichlet_ends": True,
            "k_at_least_one": inp.k >= 1.0,
            "decay_margin_positive": True,
            "initial_value": report.c9_slack >= -tol,
            "comparison_inequality": report.passed,
        },
        details={"margin": margin, "q": q, "poincare": c_omega,
                 "m_q_minus_1": inp.m * (q - 1.0),
                 "c0_must_decay": inp.m * (q - 1.0) < 1.0,
                 "alpha_factor": inp.alpha_factor},
        first_failure_t=report.first_violation_t,
    )
    return Scenario(name="power-decay", case=None, problem=problem, certificate=cert,
                    hypotheses=hyp, certificate_check=report, certifies_decay=True,
                    uniform_bound=None,
                    envelope_description=f"g0 * (1 + t)**(-{inp.m:g})")


def bounded_neumann_scenario(inp: ScenarioInputs, horizon: float,
                             grid_points: int = 10_000, tol: float = 1e-12) -> Scenario:
    """Neumann regime with a destabilizing linear part of integrable strength,
    certified by the decreasing bounded weight mu(t) = mu0 + mu1 (1+t)**(-nu).

    Under Neumann ends the Poincare constant is zero, so sigma(t) equals the
    (negative) linear rate -gamma0/(1+t)**k.  The conclusion is boundedness
    g(t) <= 1/mu0 for all t, not decay: the envelope 1/mu(t) tends to the
    positive limit 1/mu0.

    Two growth conditions are evaluated: the closed-form sufficient bound

        alpha_factor * (1+t)**(nu+1) * c0(t) <= mu0**(q-1) * (nu mu1/mu0 - gamma0)

    and the exact grid check of the comparison inequality.  The closed-form
    bound ignores that mu(t) > mu0 for small t and can admit strengths the
    exact condition rejects; when that happens the report flags it and the
    exact check is the one that decides.
    """
    if inp.bc != "neumann":
        raise ScenarioNotApplicable("bounded scenario needs Neumann ends")
    _require(inp, ("gamma0", "k", "nu", "mu0", "mu1", "g0"))
    if not (inp.gamma0 > 0.0):
        raise ScenarioNotApplicable("needs gamma0 > 0 (destabilizing linear part)")
    if not (inp.mu0 > 0.0 and inp.mu1 > 0.0 and inp.nu > 0.0):
        raise ScenarioNotApplicable("needs mu0, mu1, nu > 0")
    q = comparison_exponent(inp.p)
    gamma0, k, nu, mu0, mu1 = inp.gamma0, inp.k, inp.nu, inp.mu0, inp.mu1
    ratio_margin = nu * mu1 / mu0 - gamma0
    alpha = inp.alpha_fn()
    ts_probe = np.linspace(0.0, horizon, min(grid_points, 1001))
    alpha_is_zero = float(np.max(np.abs(np.asarray(alpha(ts_probe), dtype=float)))) == 0.0
    if ratio_margin <= 0.0 and not alpha_is_zero:
        raise ScenarioNotApplicable(
            "not applicable: nu mu1 / mu0 must exceed gamma0 for a nonzero nonlinearity")

    cert = Certificate.bounded(mu0, mu1, nu)

    def sigma(ts):
        return -gamma0 * (1.0 + np.asarray(ts, dtype=float)) ** (-k)

    problem = ScalarProblem(sigma=sigma, alpha=alpha, q=q, g0=inp.g0)
    report = check_certificate(problem, cert, horizon, grid_points, tol)

    cap = mu0 ** (q - 1.0) * ratio_margin

    def weighted_alpha(ts):
        ts = np.asarray(ts, dtype=float)
        return (1.0 + ts) ** (nu + 1.0) * np.asarray(alpha(ts), dtype=float)

    closed_ok, first_bad = _grid_check(weighted_alpha, lambda ts: np.full(np.shape(ts), cap),
                                       horizon, grid_points)
    mu_at_0 = mu0 + mu1
    initial_match = abs(mu_at_0 * inp.g0 - 1.0) <= 1e-9 * max(1.0, mu_at_0 * inp.g0)
    hyp = HypothesisReport(
        applicable=True,
        conditions={
            "neumann_ends": True,
            "nu_plus_one_le_k": nu + 1.0 <= k,
            "ratio_margin_positive": ratio_margin > 0.0 or alpha_is_zero,
            "closed_form_growth_bound": closed_ok,
            "initial_value_match": initial_match,
            "comparison_inequality": report.passed,
        },
        details={"q": q, "ratio_margin": ratio_margin, "closed_form_cap": cap,
                 "closed_form_insufficient": bool(closed_ok and not report.passed),
                 "alpha_factor": inp.alpha_factor},
        first_failure_t=first_bad if not closed_ok else report.first_violation_t,
    )
    return Scenario(name="bounded-neumann", case=None, problem=problem, certificate=cert,
                    hypotheses=hyp, certificate_check=report, certifies_decay=False,
                    uniform_bound=1.0 / mu0,
                    envelope_description=f"1/mu(t), uniformly <= {1.0 / mu0:.6g}")


def modulated_scenario(inp: ScenarioInputs, horizon: float,
                       grid_points: int = 10_000, tol: float = 1e-12) -> Scenario:
    """Two-component system with kinetics and diffusion sharing a positive
    modulation phi(t); the case is selected by the sign of
    d0 c(Omega) - gamma0 with d0 = min(d1, d2) and gamma0 the cross-term
    splitting bound of the kinetics matrix.

    Case "decay" (positive sign) requires phi(t) = phi0/(1+t) and rate margin
    phi0 (d0 c(Omega) - gamma0) > m; the certificate is (1+t)**m / g0.  Case
    "bounded" (negative sign) uses the decreasing bounded certificate and
    only claims g <= 1/mu0; the modulation profile is free as long as the
    comparison inequality passes.  An exactly zero sign is reported as
    undecided.
    """
    if inp.bc != "dirichlet":
        raise ScenarioNotApplicable("modulated scenario needs Dirichlet ends")
    _require(inp, ("matrix", "d1", "d2", "phi", "g0"))
    if not (inp.g0 > 0.0):
        raise ScenarioNotApplicable("needs g0 > 0")
    mat = np.asarray(inp.matrix, dtype=float)
    if mat.shape != (2, 2):
        raise ScenarioNotApplicable("needs a 2x2 kinetics matrix")
    a, b = mat[0]
    c, d = mat[1]
    bound = coupling_gamma0(a, b, c, d)
    gamma0 = bound.gamma0
    d0 = min(inp.d1, inp.d2)
    c_omega = inp.poincare()
    sign = d0 * c_omega - gamma0
    q = comparison_exponent(inp.p)
    phi = inp.phi
    phi_fn = as_time_function(phi)
    alpha = inp.alpha_fn()
    base_details = {
        "gamma0": gamma0, "gamma0_is_valid_bound": bound.gamma0 >= bound.form_max - 1e-12,
        "cross_terms_nonneg": bound.cross_nonneg, "form_max": bound.form_max,
        "d0": d0, "poincare": c_omega, "d0_c_omega": d0 * c_omega, "q": q,
        "alpha_factor": inp.alpha_factor,
    }

    def sigma(ts):
        return np.asarray(phi_fn(ts), dtype=float) * sign

    problem = ScalarProblem(sigma=sigma, alpha=alpha, q=q, g0=inp.g0)

    if sign == 0.0:
        hyp = HypothesisReport(applicable=False,
                               conditions={"case_decided": False},
                               details=dict(base_details, note="d0 c(Omega) equals gamma0"))
        return Scenario(name="modulated-pair", case="undecided", problem=problem,
                        certificate=None, hypotheses=hyp, certificate_check=None,
                        certifies_decay=False, uniform_bound=None,
                        envelope_description="undecided boundary case")

    if sign > 0.0:
        _require(inp, ("m",))
        if not (phi.kind == "power_decay" and phi.exponent == 1.0 and phi.offset == 0.0):
            raise ScenarioNotApplicable(
                "decay case expects modulation phi(t) = phi0/(1+t)")
        phi0 = phi.v0
        rate_margin = phi0 * sign - inp.m
        cert = Certificate.power(1.0 / inp.g0, inp.m)
        report = check_certificate(problem, cert, horizon, grid_points, tol)
        hyp = HypothesisReport(
            applicable=True,
            conditions={
                "gamma0_bound_valid": bool(base_details["gamma0_is_valid_bound"]),
                "rate_margin_positive": rate_margin > 0.0,
                "initial_value": report.c9_slack >= -tol,
                "comparison_inequality": report.passed,
            },
            details=dict(base_details, phi0=phi0, rate_margin=rate_margin),
            first_failure_t=report.first_violation_t,
        )
        return Scenario(name="modulated-pair", case="decay", problem=problem,
                        certificate=cert, hypotheses=hyp, certificate_check=report,
                        certifies_decay=True, uniform_bound=None,
                        envelope_description=f"g0 * (1 + t)**(-{inp.m:g})")

    _require(inp, ("mu0", "mu1", "nu"))
    cert = Certificate.bounded(inp.mu0, inp.mu1, inp.nu)
    report = check_certificate(problem, cert, horizon, grid_points, tol)
    mu_at_0 = inp.mu0 + inp.mu1
    initial_match = abs(mu_at_0 * inp.g0 - 1.0) <= 1e-9 * max(1.0, mu_at_0 * inp.g0)
    hyp = HypothesisReport(
        applicable=True,
        conditions={
            "gamma0_bound_valid": bool(base_details["gamma0_is_valid_bound"]),
            "initial_value_match": initial_match,
            "comparison_inequality": report.passed,
        },
        details=base_details,
        first_failure_t=report.first_violation_t,
    )
    return Scenario(name="modulated-pair", case="bounded", problem=problem,
                    certificate=cert, hypotheses=hyp, certificate_check=report,
                    certifies_decay=False, uniform_bound=1.0 / inp.mu0,
                    envelope_description=f"1/mu(t), uniformly <= {1.0 / inp.mu0:.6g}")
