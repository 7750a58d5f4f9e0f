"""Closed-form bounds of the blowup analysis and per-path checkers.

Every evaluator here is a pure function of explicit inputs: the worst-case
reaction-coefficient floor K_theta over a time window, the amplitude
condition on gamma, the pointwise blowup-time profile and its z = 0 value,
the probability estimate built from the Brownian tail bound, and the
mean-threshold quantities (h_star, eps_star, the outer-shell rate bound L,
and the lower bound on the mean-crossing time t_hat).

The two constants C0 (midpoint slope) and C1 (outer gradient) are not
constructive; they are taken as inputs, normally from the solver's estimate
ops, and callers record which source was used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .brownian import tail_bound
from .errors import DomainError, InfeasibleSelection
from .model import Parameters

if TYPE_CHECKING:  # pragma: no cover
    from .brownian import BrownianPath
    from .solver import BlowupReport, Trajectory


@dataclass
class BoundInputs:
    """Realized inputs for the bound evaluators.

    Only the fields an evaluator actually uses must be set; missing required
    fields raise :class:`DomainError` at evaluation time.
    """

    params: Parameters
    theta: float | None = None
    bstar_theta: float = 0.0
    t_lambda: float | None = None
    bstar_t_lambda: float = 0.0
    h0: float | None = None
    beta: float | None = None
    k: float | None = None
    ell: float | None = None
    R: float | None = None
    c0: float | None = None
    c1: float | None = None
    c0_source: str = "unspecified"
    c1_source: str = "unspecified"


def _need(value, name: str) -> float:
    if value is None:
        raise DomainError(f"BoundInputs.{name} is required for this evaluator")
    return float(value)


# ---------------------------------------------------------------------------
# Reaction-coefficient floor and the amplitude condition
# ---------------------------------------------------------------------------


def k_theta(inputs: BoundInputs) -> float:
    """Worst-case floor of the reaction coefficient K over [0, theta]:
    (lam*xi0)^{-q} * exp(-(p-1)*theta - q*Bstar_theta).

    Valid whenever theta does not exceed the stopping time of the
    transformed inhibitor.
    """
    p, q = inputs.params.p, inputs.params.q
    theta = _need(inputs.theta, "theta")
    if theta <= 0.0:
        raise DomainError(f"theta must be positive, got {theta}")
    bstar = float(inputs.bstar_theta)
    if bstar < 0.0:
        raise DomainError(f"bstar_theta must be nonnegative, got {bstar}")
    lam_xi0 = inputs.params.lam * inputs.params.xi0
    return lam_xi0 ** (-q) * math.exp(-(p - 1.0) * theta - q * bstar)


@dataclass
class GammaCondition:
    margin: float  # gamma^{p-1} K_theta - 4n/(p-1)
    satisfied: bool  # strictly positive margin


def gamma_condition(gamma: float, k_theta_value: float, p: float, n: int) -> GammaCondition:
    """Amplitude condition gamma^{p-1} K_theta > 4n/(p-1) with its margin."""
    margin = gamma ** (p - 1.0) * k_theta_value - 4.0 * n / (p - 1.0)
    return GammaCondition(margin=float(margin), satisfied=bool(margin > 0.0))


# ---------------------------------------------------------------------------
# Blowup-time bound and pointwise profile
# ---------------------------------------------------------------------------


def blowup_time_profile(z: float, gamma: float, k_theta_value: float, p: float,
                        alpha: float, delta: float) -> float:
    """Blowup time of the separable comparison solution started from the
    initial profile value at radius z; increasing in z, minimized at z = 0."""
    if not (0.0 <= z < 1.0):
        raise DomainError(f"z must lie in [0,1), got {z}")
    if k_theta_value <= 0.0 or gamma <= 0.0:
        raise DomainError("gamma and K_theta must be positive")
    scale = 2.0 / (k_theta_value * (p - 1.0)) * gamma ** (-p + 1.0)
    if z <= delta:
        bracket = 1.0 + 0.5 * (1.0 - (z / delta) ** 2) * alpha
        return scale * bracket ** (-p + 1.0) * delta**2
    return scale * z**2


@dataclass
class BlowupTimeBound:
    value: float  # bound on the blowup time (the z = 0 profile value)
    cap: float  # delta^2/(2n) * (1 + alpha/2)^{-p+1}, implied by the condition
    applicable: bool  # whether the amplitude condition held
    margin: float


def blowup_time_bound(gamma: float, k_theta_value: float, p: float, delta: float,
                      alpha: float, n: int) -> BlowupTimeBound:
    """Upper bound 2 delta^2 / (gamma^{p-1} K_theta (p-1)) * (1+alpha/2)^{-p+1}
    on the blowup time, valid under the amplitude condition; also the cap it
    is guaranteed to stay below."""
    cond = gamma_condition(gamma, k_theta_value, p, n)
    value = blowup_time_profile(0.0, gamma, k_theta_value, p, alpha, delta)
    cap = delta**2 / (2.0 * n) * (1.0 + 0.5 * alpha) ** (-p + 1.0)
    return BlowupTimeBound(value=value, cap=cap, applicable=cond.satisfied, margin=cond.margin)


@dataclass
class ProbabilityBound:
    a0: float
    value: float  # lower bound on P(T_b <= cap)
    vacuous: bool  # true when the estimate carries no information


def blowup_probability_bound(theta0: float, gamma: float, lam: float, xi0: float,
                             p: float, q: float, n: int) -> ProbabilityBound:
    """Probability form of the blowup bound over a deterministic window:
    P(T_b <= cap) >= 1 - sqrt(theta0/(2 pi)) (4/A0) exp(-A0^2/(2 theta0))
    with A0 = (1/q) ln((p-1) gamma^{p-1} / (4 n (lam xi0)^q)) - ((p-1)/q) theta0.
    """
    if theta0 <= 0.0:
        raise DomainError(f"theta0 must be positive, got {theta0}")
    a0 = (1.0 / q) * math.log((p - 1.0) * gamma ** (p - 1.0) / (4.0 * n * (lam * xi0) ** q)) \
        - (p - 1.0) / q * theta0
    if a0 <= 0.0:
        return ProbabilityBound(a0=a0, value=-math.inf, vacuous=True)
    value = 1.0 - tail_bound(theta0, a0)
    return ProbabilityBound(a0=a0, value=value, vacuous=bool(value <= 0.0))


# ---------------------------------------------------------------------------
# Mean-threshold quantities
# ---------------------------------------------------------------------------


def _check_beta(params: Parameters, beta: float) -> None:
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"beta must lie in (0,1], got {beta}")
    if params.p + beta - 1.0 < params.r - 1e-12:
        raise DomainError(
            f"beta={beta} inadmissible: p+beta-1 = {params.p + beta - 1.0} below r = {params.r}"
        )


@dataclass
class HStar:
    value: float
    cap: float  # the same expression with the exponential factor dropped


def h_star(inputs: BoundInputs) -> HStar:
    """Guaranteed level of the mean of v^beta at the stopping time:
    h0 + beta (lam-1) lam^{-q} gamma^{beta+p-1-r}
        * exp(-p t_lam - (s+q+1)(3 t_lam/2 + Bstar_{t_lam})) * xi0^{s-q+1},
    together with its cap (exponential factor replaced by 1)."""
    pr = inputs.params
    beta = _need(inputs.beta, "beta")
    _check_beta(pr, beta)
    t_lam = _need(inputs.t_lambda, "t_lambda")
    if not math.isfinite(t_lam) or t_lam < 0.0:
        raise DomainError(f"t_lambda must be finite and nonnegative, got {t_lam}")
    h0 = _need(inputs.h0, "h0")
    bstar = float(inputs.bstar_t_lambda)
    amp = beta * (pr.lam - 1.0) * pr.lam ** (-pr.q) \
        * pr.gamma ** (beta + pr.p - 1.0 - pr.r) * pr.xi0 ** (pr.s - pr.q + 1.0)
    damp = math.exp(-pr.p * t_lam - (pr.s + pr.q + 1.0) * (1.5 * t_lam + bstar))
    return HStar(value=h0 + amp * damp, cap=h0 + amp)


def _check_beta_k_ell(params: Parameters, beta: float, k: float, ell: float) -> None:
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"beta must lie in (0,1], got {beta}")
    if not (1.0 < k < params.p):
        raise DomainError(f"k must lie in (1, p), got k={k}, p={params.p}")
    if ell < k / beta - 1e-12:
        raise DomainError(f"ell must be at least k/beta = {k / beta}, got {ell}")


@dataclass
class EpsStar:
    value: float
    argmin_term: str  # which of the three constraints binds
    terms: tuple[float, float, float]


def eps_star(inputs: BoundInputs) -> EpsStar:
    """Largest admissible comparison amplitude: the minimum of
    alpha (1+alpha/2)^{-k} h0^ell,
    2^{n - ell n} C0 gamma^{beta ell - k}, and
    (p-k) gamma^{p+ell-k} / (2k (lam xi0)^q) * exp(-(p-1) t_lam - q Bstar_{t_lam}).
    """
    pr = inputs.params
    beta = _need(inputs.beta, "beta")
    k = _need(inputs.k, "k")
    ell = _need(inputs.ell, "ell")
    _check_beta_k_ell(pr, beta, k, ell)
    c0 = _need(inputs.c0, "c0")
    if c0 <= 0.0:
        raise DomainError(f"c0 must be positive, got {c0}")
    h0 = _need(inputs.h0, "h0")
    t_lam = _need(inputs.t_lambda, "t_lambda")
    bstar = float(inputs.bstar_t_lambda)
    term1 = pr.alpha * (1.0 + 0.5 * pr.alpha) ** (-k) * h0**ell
    term2 = 2.0 ** (-ell * pr.n + pr.n) * c0 * pr.gamma ** (beta * ell - k)
    term3 = (pr.p - k) * pr.gamma ** (pr.p + ell - k) / (2.0 * k * (pr.lam * pr.xi0) ** pr.q) \
        * math.exp(-(pr.p - 1.0) * t_lam - pr.q * bstar)
    terms = (term1, term2, term3)
    i = int(np.argmin(terms))
    return EpsStar(value=float(terms[i]),
                   argmin_term=("initial-mean", "midpoint-slope", "reaction-floor")[i],
                   terms=terms)


@dataclass
class BetaKSelection:
    beta: float
    k: float
    # Margins of the four constraints, all positive (or zero where equality
    # is allowed): p+beta-1-r, n(p-1)-2beta, min(k-1, p-k), n(k-1)-2beta.
    margins: tuple[float, float, float, float]


def select_beta_k(params: Parameters) -> BetaKSelection:
    """Pick an admissible (beta, k) pair for the mean-threshold estimates.

    beta is the smallest convenient value with beta >= r+1-p, capped so that
    2 beta stays strictly below n(p-1); k is the midpoint of (1 + 2 beta/n, p).
    """
    if not params.blowup_regime:
        raise InfeasibleSelection(
            "no admissible (beta, k): parameters are outside the blowup regime"
        )
    p, r, n = params.p, params.r, params.n
    lower = max(r + 1.0 - p, 0.01 * min(1.0, 0.5 * n * (p - 1.0)))
    upper = min(1.0, 0.499 * n * (p - 1.0))
    beta = min(lower, upper)
    if beta < r + 1.0 - p - 1e-15 or beta <= 0.0:
        raise InfeasibleSelection(
            f"cannot satisfy beta >= r+1-p = {r + 1.0 - p} with 2 beta < n(p-1) = {n * (p - 1.0)}"
        )
    k = 0.5 * ((1.0 + 2.0 * beta / n) + p)
    margins = (
        p + beta - 1.0 - r,
        n * (p - 1.0) - 2.0 * beta,
        min(k - 1.0, p - k),
        n * (k - 1.0) - 2.0 * beta,
    )
    if any(m < -1e-15 for m in margins) or margins[1] <= 0 or margins[2] <= 0 or margins[3] <= 0:
        raise InfeasibleSelection(f"selected (beta={beta}, k={k}) violates a constraint: {margins}")
    return BetaKSelection(beta=beta, k=k, margins=margins)


def outer_mean_rate_bound(inputs: BoundInputs) -> float:
    """Bound L on |d/dt| of the outer-shell contribution to the mean of
    v^beta: C1 n beta R^{n-1} gamma^{beta-1} + C1^2 beta (1-beta) gamma^{beta-2}
    + beta xi0^{-q} exp(3 q t_lam / 2 + q Bstar_{t_lam}) (h_star / R^n)^{(beta+p-1)/beta}.
    """
    pr = inputs.params
    beta = _need(inputs.beta, "beta")
    R = _need(inputs.R, "R")
    if not (0.0 < R < 1.0):
        raise DomainError(f"R must lie in (0,1), got {R}")
    c1 = _need(inputs.c1, "c1")
    if c1 <= 0.0:
        raise DomainError(f"c1 must be positive, got {c1}")
    t_lam = _need(inputs.t_lambda, "t_lambda")
    bstar = float(inputs.bstar_t_lambda)
    hs = h_star(inputs).value
    term1 = c1 * pr.n * beta * R ** (pr.n - 1.0) * pr.gamma ** (beta - 1.0)
    term2 = c1**2 * beta * (1.0 - beta) * pr.gamma ** (beta - 2.0)
    term3 = beta * pr.xi0 ** (-pr.q) * math.exp(1.5 * pr.q * t_lam + pr.q * bstar) \
        * (hs / R**pr.n) ** ((beta + pr.p - 1.0) / beta)
    return term1 + term2 + term3


@dataclass
class THatLowerBound:
    value: float  # best lower bound found (0 when none is positive)
    r_used: float
    positive: bool
    convention: str


def t_hat_lower_bound(
    inputs: BoundInputs,
    convention: str = "lemma-statement",
    r_grid: int = 64,
) -> THatLowerBound:
    """Lower bound on the first time the mean of v^beta reaches h_star.

    For each split radius R the bound is
    (h_star - h0 - n (2 h_star^ell / (eps_star (k-1)))^E
       * R^{n - 2 beta/(k-1)} / (n - 2 beta/(k-1))) / L(R)
    and R is tuned over a log-spaced grid for the largest positive value.
    The inner-shell exponent E is 1/(k-1) under the default
    ``lemma-statement`` convention and beta/(k-1) under ``h1-derivation``;
    the two appear interchangeably in the source analysis, so the choice is
    exposed rather than guessed.
    """
    if convention not in ("lemma-statement", "h1-derivation"):
        raise DomainError(f"unknown exponent convention {convention!r}")
    pr = inputs.params
    beta = _need(inputs.beta, "beta")
    k = _need(inputs.k, "k")
    ell = _need(inputs.ell, "ell")
    _check_beta_k_ell(pr, beta, k, ell)
    h0 = _need(inputs.h0, "h0")
    hs = h_star(inputs).value
    eps = eps_star(inputs).value
    expo = 1.0 / (k - 1.0) if convention == "lemma-statement" else beta / (k - 1.0)
    shell_pow = pr.n - 2.0 * beta / (k - 1.0)
    if shell_pow <= 0.0:
        raise DomainError(
            f"n - 2 beta/(k-1) = {shell_pow} must be positive; use select_beta_k"
        )
    inner_scale = pr.n * (2.0 * hs**ell / (eps * (k - 1.0))) ** expo / shell_pow

    best_val, best_r = 0.0, float("nan")
    if inputs.R is not None:
        candidates = np.array([float(inputs.R)])
    else:
        candidates = np.geomspace(1e-4, 0.99, r_grid)
    for R in candidates:
        numerator = hs - h0 - inner_scale * R**shell_pow
        if numerator <= 0.0:
            continue
        L = outer_mean_rate_bound(_with_r(inputs, float(R)))
        val = numerator / L
        if val > best_val:
            best_val, best_r = float(val), float(R)
    return THatLowerBound(
        value=best_val, r_used=best_r, positive=bool(best_val > 0.0), convention=convention
    )


def _with_r(inputs: BoundInputs, R: float) -> BoundInputs:
    from dataclasses import replace

    return replace(inputs, R=R)


# ---------------------------------------------------------------------------
# Per-path checker
# ---------------------------------------------------------------------------


@dataclass
class PathVerdict:
    """Comparison of one simulated path with the blowup-time bound."""

    t_lambda: float
    theta: float
    bstar_theta: float
    k_theta: float
    gamma_margin: float
    applicable: bool
    case: str  # which side of the stopping-time window the path fell on
    bound: float
    cap: float
    blew_up: bool
    t_lo: float | None
    t_hi: float | None
    stop_time: float
    satisfied: bool | None  # None: not applicable, or the run cannot decide
    allowance: float


def bound_check_per_path(
    traj: "Trajectory",
    report: "BlowupReport",
    params: Parameters,
    path: "BrownianPath | None" = None,
    allowance: float = 0.05,
    window: float = 1.0,
) -> PathVerdict:
    """Evaluate the blowup-time bound against one completed run.

    theta is min(realized stopping time, window); the coefficient floor is
    recomputed from the realized discrete running maximum.  When the
    amplitude condition holds the bound must cover the numerical blowup
    bracket (up to the discretization allowance); a run that survived past
    the allowed bound without blowing up is a definitive violation.
    """
    from .solver import stopping_time

    t_lambda = stopping_time(traj, params.lam, params.xi0)
    theta = min(t_lambda, window)
    if path is not None:
        bstar_theta = path.running_max(min(theta, path.span))
    else:
        idx = int(np.searchsorted(traj.t, theta * (1 + 1e-12), side="right")) - 1
        bstar_theta = float(traj.Bstar[max(idx, 0)])
    kth = k_theta(BoundInputs(params=params, theta=theta, bstar_theta=bstar_theta))
    btb = blowup_time_bound(params.gamma, kth, params.p, params.delta, params.alpha, params.n)
    case = "t_lambda>=window" if t_lambda >= window else "t_lambda<window"

    satisfied: bool | None
    if not btb.applicable:
        satisfied = None
    elif report.blew_up:
        satisfied = bool(report.t_hi <= btb.value * (1.0 + allowance))
    elif report.stop_time >= btb.value * (1.0 + allowance):
        satisfied = False
    else:
        satisfied = None

    return PathVerdict(
        t_lambda=t_lambda,
        theta=theta,
        bstar_theta=bstar_theta,
        k_theta=kth,
        gamma_margin=btb.margin,
        applicable=btb.applicable,
        case=case,
        bound=btb.value,
        cap=btb.cap,
        blew_up=report.blew_up,
        t_lo=report.t_lo,
        t_hi=report.t_hi,
        stop_time=report.stop_time,
        satisfied=satisfied,
        allowance=allowance,
    )


# ---------------------------------------------------------------------------
# Sandwich check of the reaction coefficient
# ---------------------------------------------------------------------------


@dataclass
class SandwichReport:
    lower_violation: float  # max of K_theta - K(t) over sampled t <= theta
    upper_violation: float  # max of K(t) - upper envelope over sampled t <= theta
    theta: float


def k_sandwich_check(traj: "Trajectory", params: Parameters, theta: float,
                     bstar_theta: float) -> SandwichReport:
    """Check K_theta <= K(t) <= xi0^{-q} exp(3 q theta / 2 + q Bstar_theta)
    at all sampled t <= theta (theta must not exceed the stopping time)."""
    mask = traj.t <= theta * (1 + 1e-12)
    K = traj.K[mask]
    lower = k_theta(BoundInputs(params=params, theta=theta, bstar_theta=bstar_theta))
    upper = params.xi0 ** (-params.q) * math.exp(1.5 * params.q * theta + params.q * bstar_theta)
    return SandwichReport(
        lower_violation=float(np.max(lower - K, initial=-math.inf)),
        upper_violation=float(np.max(K - upper, initial=-math.inf)),
        theta=theta,
    )
