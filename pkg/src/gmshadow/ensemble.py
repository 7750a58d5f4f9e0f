"""Reproducible Monte Carlo campaigns over independent driver paths.

Each path's seed is a keyed hash of (base_seed, index), so members are
independent of execution order and parallelism; per-path failures become
data rows instead of aborting the campaign.  Aggregates are always
recomputable from the rows.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import beta as beta_dist

from .bounds import PathVerdict, blowup_time_bound, bound_check_per_path
from .brownian import BrownianPath, tail_bound
from .errors import DomainError, NumericalBreakdown
from .model import Parameters
from .solver import SolverControls, run


def derive_seed(base_seed: int, index: int) -> int:
    """Keyed 128-bit seed for path *index*; injective over indices in
    practice for any fixed base seed."""
    digest = hashlib.sha256(f"gmshadow-path:{base_seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


@dataclass
class PathRow:
    """One ensemble member's record."""

    index: int
    seed: int
    gamma: float
    t_lambda: float
    theta: float
    bstar_theta: float
    k_theta: float
    gamma_margin: float
    applicable: bool
    bound: float
    blew_up: bool
    trigger: str
    t_lo: float | None
    t_hi: float | None
    stop_time: float
    satisfied: bool | None
    error: str | None = None

    CSV_COLUMNS = (
        "index", "seed", "gamma", "t_lambda", "theta", "bstar_theta", "k_theta",
        "gamma_margin", "applicable", "bound", "blew_up", "trigger",
        "t_lo", "t_hi", "stop_time", "satisfied", "error",
    )


@dataclass
class EnsembleStats:
    rows: list[PathRow]
    fraction_blew_up: float
    n_applicable: int
    fraction_satisfied_among_applicable: float

    @staticmethod
    def from_rows(rows: list[PathRow]) -> "EnsembleStats":
        ok = [r for r in rows if r.error is None]
        blew = sum(1 for r in ok if r.blew_up)
        applicable = [r for r in ok if r.applicable and r.satisfied is not None]
        sat = sum(1 for r in applicable if r.satisfied)
        return EnsembleStats(
            rows=rows,
            fraction_blew_up=blew / len(rows) if rows else math.nan,
            n_applicable=len(applicable),
            fraction_satisfied_among_applicable=(
                sat / len(applicable) if applicable else math.nan
            ),
        )


def _run_one(args) -> PathRow:
    params, controls, base_seed, index, allowance, window = args
    seed = derive_seed(base_seed, index)
    span = max(controls.horizon, window)
    path = BrownianPath.sample(span, controls.path_dt, seed)
    try:
        traj, report = run(params, path, controls)
    except NumericalBreakdown as exc:
        return PathRow(
            index=index, seed=seed, gamma=params.gamma, t_lambda=math.nan,
            theta=math.nan, bstar_theta=math.nan, k_theta=math.nan,
            gamma_margin=math.nan, applicable=False, bound=math.nan,
            blew_up=False, trigger="breakdown", t_lo=None, t_hi=None,
            stop_time=math.nan, satisfied=None, error=str(exc),
        )
    verdict = bound_check_per_path(traj, report, params, path, allowance=allowance, window=window)
    return PathRow(
        index=index, seed=seed, gamma=params.gamma,
        t_lambda=verdict.t_lambda, theta=verdict.theta,
        bstar_theta=verdict.bstar_theta, k_theta=verdict.k_theta,
        gamma_margin=verdict.gamma_margin, applicable=verdict.applicable,
        bound=verdict.bound, blew_up=report.blew_up, trigger=report.trigger,
        t_lo=report.t_lo, t_hi=report.t_hi, stop_time=report.stop_time,
        satisfied=verdict.satisfied,
    )


def run_ensemble(
    params: Parameters,
    M: int,
    base_seed: int,
    controls: SolverControls | None = None,
    threads: int = 1,
    allowance: float = 0.05,
    window: float = 1.0,
) -> EnsembleStats:
    """Run M independent paths and check the blowup-time bound on each.

    The result is a pure function of (params, M, base_seed, controls); the
    degree of parallelism only affects wall time.
    """
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    controls = (controls or SolverControls()).validate()
    jobs = [(params, controls, base_seed, i, allowance, window) for i in range(M)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_run_one, jobs, chunksize=max(1, M // (8 * threads) or 1)))
    else:
        rows = [_run_one(j) for j in jobs]
    rows.sort(key=lambda r: r.index)
    return EnsembleStats.from_rows(rows)


# ---------------------------------------------------------------------------
# Gamma sweep
# ---------------------------------------------------------------------------


@dataclass
class GammaSweepRow:
    gamma: float
    median_t_b: float  # +inf when the median path did not blow up
    median_bound: float
    bound_at_fixed_k: float
    fraction_blew_up: float

    CSV_COLUMNS = ("gamma", "median_t_b", "median_bound", "bound_at_fixed_k", "fraction_blew_up")


@dataclass
class GammaSweepResult:
    rows: list[GammaSweepRow]
    k_theta_fixed: float
    monotone_t_b: bool
    scaling_ok: bool  # log-log slope of the fixed-K bound within 10% of -(p-1)


def gamma_sweep(
    params: Parameters,
    gammas: list[float],
    M_per_gamma: int,
    base_seed: int,
    controls: SolverControls | None = None,
    threads: int = 1,
    k_theta_fixed: float | None = None,
) -> GammaSweepResult:
    """Median numerical blowup time and median analytic bound per gamma.

    ``bound_at_fixed_k`` evaluates the bound at one shared coefficient floor,
    which isolates the gamma^{-(p-1)} scaling; the flags record whether the
    medians are non-increasing and the scaling slope is within 10 percent of
    its expected value over the top decade.
    """
    if any(g <= 0 for g in gammas):
        raise DomainError("gammas must be positive")
    if sorted(gammas) != list(gammas):
        raise DomainError("gammas must be increasing")
    controls = (controls or SolverControls()).validate()
    if k_theta_fixed is None:
        k_theta_fixed = (params.lam * params.xi0) ** (-params.q) * math.exp(-(params.p - 1.0))

    rows: list[GammaSweepRow] = []
    for j, g in enumerate(gammas):
        pg = replace(params, gamma=float(g))
        stats = run_ensemble(pg, M_per_gamma, derive_seed(base_seed, 10_000_000 + j),
                             controls, threads=threads)
        t_bs = [r.t_hi if (r.blew_up and r.t_hi is not None) else math.inf
                for r in stats.rows if r.error is None]
        bounds_realized = [r.bound for r in stats.rows if r.error is None and math.isfinite(r.bound)]
        fixed = blowup_time_bound(float(g), k_theta_fixed, pg.p, pg.delta, pg.alpha, pg.n)
        rows.append(GammaSweepRow(
            gamma=float(g),
            median_t_b=float(np.median(t_bs)) if t_bs else math.inf,
            median_bound=float(np.median(bounds_realized)) if bounds_realized else math.nan,
            bound_at_fixed_k=fixed.value,
            fraction_blew_up=stats.fraction_blew_up,
        ))

    monotone = all(rows[i + 1].median_t_b <= rows[i].median_t_b or
                   (math.isinf(rows[i].median_t_b) and math.isinf(rows[i + 1].median_t_b))
                   for i in range(len(rows) - 1))
    scaling_ok = True
    if len(rows) >= 2:
        top = rows[-2:]
        slope = (math.log(top[1].bound_at_fixed_k) - math.log(top[0].bound_at_fixed_k)) / (
            math.log(top[1].gamma) - math.log(top[0].gamma)
        )
        scaling_ok = abs(slope - (-(params.p - 1.0))) <= 0.1 * (params.p - 1.0)
    return GammaSweepResult(rows=rows, k_theta_fixed=k_theta_fixed,
                            monotone_t_b=monotone, scaling_ok=scaling_ok)


# ---------------------------------------------------------------------------
# Tail check
# ---------------------------------------------------------------------------


@dataclass
class TailCheckRow:
    t: float
    A: float
    paths: int
    hits: int
    empirical: float
    ci_low: float
    ci_high: float  # two-sided 99% Clopper-Pearson interval
    bound: float
    passed: bool  # CI upper end at or below the bound

    CSV_COLUMNS = ("t", "A", "paths", "hits", "empirical", "ci_low", "ci_high", "bound", "passed")


def _binomial_ci(hits: int, n: int, confidence: float = 0.99) -> tuple[float, float]:
    """Two-sided Clopper-Pearson interval."""
    alpha = 1.0 - confidence
    lo = 0.0 if hits == 0 else float(beta_dist.ppf(alpha / 2.0, hits, n - hits + 1))
    hi = 1.0 if hits == n else float(beta_dist.ppf(1.0 - alpha / 2.0, hits + 1, n - hits))
    return lo, hi


def tail_check(
    t_values: list[float],
    A_values: list[float],
    M: int,
    base_seed: int,
    dt: float = 1e-3,
) -> list[TailCheckRow]:
    """Empirical frequencies of the running maximum of |B| exceeding each
    level, with 99% binomial confidence intervals, against the closed-form
    tail bound.  The discrete maximum understates the true supremum, so the
    bound must hold a fortiori.
    """
    if M < 1 or dt <= 0 or not t_values or not A_values:
        raise DomainError("tail_check needs M >= 1, dt > 0, and nonempty levels")
    if any(t <= 0 for t in t_values) or any(a <= 0 for a in A_values):
        raise DomainError("t and A values must be positive")
    t_sorted = sorted(set(float(t) for t in t_values))
    horizon = t_sorted[-1]
    n_steps = int(math.ceil(horizon / dt - 1e-12))
    t_idx = [min(int(round(t / dt)), n_steps) for t in t_sorted]

    hits = np.zeros((len(t_sorted), len(A_values)), dtype=np.int64)
    for i in range(M):
        path = BrownianPath.sample(horizon, dt, derive_seed(base_seed, i))
        _, values = path.nodes()
        runmax = np.maximum.accumulate(np.abs(values))
        for ti, idx in enumerate(t_idx):
            m = runmax[min(idx, len(runmax) - 1)]
            for ai, a in enumerate(A_values):
                if m >= a:
                    hits[ti, ai] += 1

    out: list[TailCheckRow] = []
    for ti, t in enumerate(t_sorted):
        for ai, a in enumerate(A_values):
            h = int(hits[ti, ai])
            lo, hi = _binomial_ci(h, M)
            b = tail_bound(t, float(a))
            out.append(TailCheckRow(
                t=t, A=float(a), paths=M, hits=h, empirical=h / M,
                ci_low=lo, ci_high=hi, bound=b, passed=bool(hi <= b),
            ))
    return out
