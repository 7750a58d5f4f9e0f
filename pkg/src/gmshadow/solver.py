"""Pathwise integration of the rescaled radial system.

The field v solves dv/dt = v_zz + ((n-1)/z) v_z + K(t) v^p on (0,1) with a
no-flux outer boundary, and the scalar inhibitor xi solves
d xi = (-xi + e^{-rt} mean(v^r)/xi^s) dt + xi dB.  One step is an
operator splitting:

* diffusion: implicit Euler on a finite-volume discretization of the radial
  Laplacian whose cell volumes equal the grid's mean weights.  The discrete
  mean is then conserved exactly, the minimum cannot decrease, and monotone
  profiles stay monotone (the system matrix is an M-matrix whose inverse is
  totally nonnegative and row-stochastic).  At the origin the stencil reduces
  to 2n (v_1 - v_0) / dz^2, the removable-singularity form.

* reaction: the frozen-coefficient ODE v' = K v^p is advanced by its exact
  phase flow, v -> (v^{1-p} - K (p-1) dt)^{-1/(p-1)}.  A step is rejected
  when K vmax^{p-1} dt exceeds the growth cap, which drives dt -> 0
  automatically near blowup.

* inhibitor: instead of Euler-Maruyama on xi, the transformed process
  xi_hat = e^{3t/2 - B_t} xi is advanced by a trapezoid rule on its
  nonnegative rate e^{-rt + 3t/2 - B_t} mean(v^r)/xi^s, so monotonicity of
  xi_hat holds by construction and the noise never enters the discretization
  error.  xi is recovered from xi_hat afterwards.

Steps land on dyadic refinements of the driver's base grid, so the Brownian
values the solver reads are independent of the step-size history.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import solve_banded

from .brownian import BrownianPath
from .errors import DomainError, NumericalBreakdown, StepRejected
from .model import Parameters, RadialGrid, initial_profile, mean_power

# Reaction growth cap: a step with K * vmax^{p-1} * dt above this is rejected.
GROWTH_CAP = 0.1


@dataclass
class SolverControls:
    """Knobs of the adaptive run loop.

    The debug switches (``enable_*``, ``freeze_reaction_coeff``,
    ``inhibitor_source``, ``stochastic_xi``) exist so individual terms can be
    checked against closed-form oracles; production runs leave them at their
    defaults.
    """

    grid_cells: int = 1024
    horizon: float = 1.0
    dt_max: float = 1e-3
    dt_min: float = 1e-14
    v_blow: float = 1e10
    safety: float = 0.9
    path_dt: float = 1e-3
    snapshot_times: tuple[float, ...] | None = None
    beta: float | None = None  # power used for the mean diagnostic; None = auto
    uniform_v0: float | None = None  # override gamma*phi initial data
    enable_diffusion: bool = True
    enable_reaction: bool = True
    freeze_reaction_coeff: bool = False  # hold K at its t=0 value, xi static
    inhibitor_source: bool = True  # mean(v^r) feed of the inhibitor
    stochastic_xi: bool = True  # False: drift-only inhibitor ODE (no noise)
    max_steps: int = 5_000_000

    def validate(self) -> "SolverControls":
        if self.horizon <= 0 or self.dt_max <= 0 or self.dt_min <= 0 or self.path_dt <= 0:
            raise DomainError("horizon, dt_max, dt_min, path_dt must be positive")
        if self.dt_min > self.dt_max:
            raise DomainError("dt_min must not exceed dt_max")
        if not (0 < self.safety <= 1.0):
            raise DomainError("safety must lie in (0, 1]")
        if self.v_blow <= 0:
            raise DomainError("v_blow must be positive")
        m = self.horizon / self.path_dt
        if abs(m - round(m)) > 1e-9:
            raise DomainError("horizon must be an integer multiple of path_dt")
        return self


@dataclass
class RadialState:
    """Field and inhibitor state at one time point."""

    params: Parameters
    grid: RadialGrid
    t: float
    v: np.ndarray
    xi: float
    xi_hat: float
    B: float
    Bstar: float
    K: float
    # Dyadic position of t on the driver grid (num, level); kept so steps stay
    # aligned with the path's refinement tree.
    t_num: int = 0
    t_level: int = 0


@dataclass
class MonitorReport:
    """Worst violations of the structural field properties.

    All three are nonpositive for the exact solution: v >= gamma, the profile
    is non-increasing in z, and z^n v^beta never exceeds the mean of v^beta.
    Positive values measure how badly the discrete field breaks them.
    """

    floor_violation: float  # max(gamma - min v, 0-ish signed margin)
    monotonicity_violation: float  # max forward difference of v
    weighted_tail_violation: float  # max_i z_i^n v_i^beta - mean(v^beta)


@dataclass
class Trajectory:
    """Per-step diagnostics plus scheduled full profiles."""

    params: Parameters
    grid: RadialGrid
    beta: float
    t: np.ndarray
    xi: np.ndarray
    xi_hat: np.ndarray
    B: np.ndarray
    Bstar: np.ndarray
    v0: np.ndarray
    vmax: np.ndarray
    mean_vr: np.ndarray
    mean_vbeta: np.ndarray
    K: np.ndarray
    dt: np.ndarray
    snapshots: list[tuple[float, np.ndarray]] = field(default_factory=list)

    COLUMNS = ("t", "xi", "xi_hat", "B", "Bstar", "v0", "vmax", "mean_vr", "mean_vbeta", "K", "dt")

    def rows(self):
        cols = [getattr(self, c) for c in self.COLUMNS]
        return zip(*(c.tolist() for c in cols))


@dataclass
class BlowupReport:
    """Outcome of one run: blowup bracket, stopping times, and diagnostics."""

    blew_up: bool
    trigger: str  # "threshold" | "dt_floor" | "horizon"
    t_lo: float | None
    t_hi: float | None
    t_lambda: float  # inf when the level was never reached
    bstar_t_lambda: float | None
    t_hat_lambda: float | None
    bstar_final: float
    h0: float
    beta: float
    c0_estimate: float
    c1_estimate: float
    worst_violations: dict[str, float]
    steps: int
    stop_time: float
    path_dt: float  # discrete-supremum quantities are only as fine as this
    xi_final: float
    xi_hat_final: float


# ---------------------------------------------------------------------------
# Spatial operator
# ---------------------------------------------------------------------------


class _Diffusion:
    """Banded implicit-Euler solver for the radial finite-volume Laplacian."""

    def __init__(self, grid: RadialGrid):
        self.grid = grid
        n_nodes = len(grid.z)
        dz = grid.dz
        cond = grid.face_areas / dz  # conductance of each interior face
        V = grid.cell_volumes
        self.rate_upper = np.concatenate((cond / V[:-1], [0.0]))  # D[i, i+1]
        self.rate_lower = np.concatenate(([0.0], cond / V[1:]))  # D[i, i-1]
        self.rate_diag = -(self.rate_upper + self.rate_lower)
        self._ab = np.zeros((3, n_nodes))

    def step(self, v: np.ndarray, dt: float) -> np.ndarray:
        ab = self._ab
        ab[0, 1:] = -dt * self.rate_upper[:-1]
        ab[1, :] = 1.0 - dt * self.rate_diag
        ab[2, :-1] = -dt * self.rate_lower[1:]
        out = solve_banded((1, 1), ab, v, check_finite=False)
        # One pass of iterative refinement keeps the solve residual (and with
        # it the conserved mean) at round-off level over long runs.
        resid = v - self._matvec(ab, out, dt)
        out += solve_banded((1, 1), ab, resid, check_finite=False)
        return out

    def _matvec(self, ab: np.ndarray, x: np.ndarray, dt: float) -> np.ndarray:
        y = ab[1, :] * x
        y[:-1] += ab[0, 1:] * x[1:]
        y[1:] += ab[2, :-1] * x[:-1]
        return y


# ---------------------------------------------------------------------------
# Stepping
# ---------------------------------------------------------------------------


def initial_state(params: Parameters, grid: RadialGrid, controls: SolverControls | None = None) -> RadialState:
    controls = controls or SolverControls()
    if controls.uniform_v0 is not None:
        v = np.full(len(grid.z), float(controls.uniform_v0))
    else:
        v = params.gamma * initial_profile(grid.z, params.delta, params.alpha)
    K0 = params.xi0 ** (-params.q)
    return RadialState(
        params=params, grid=grid, t=0.0, v=v, xi=params.xi0, xi_hat=params.xi0,
        B=0.0, Bstar=0.0, K=K0, t_num=0, t_level=0,
    )


def _integrating_exponent(t: float, B: float, stochastic: bool) -> float:
    """Exponent phi(t) with xi_hat = e^{phi(t)} xi monotone: 3t/2 - B_t for the
    noisy system, plain t for the drift-only mode."""
    return 1.5 * t - B if stochastic else t


def _reaction_flow(v: np.ndarray, K: float, p: float, dt: float) -> np.ndarray:
    """Exact phase flow of v' = K v^p over dt with K frozen."""
    base = v ** (1.0 - p) - K * (p - 1.0) * dt
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = np.where(base > 0.0, np.maximum(base, 1e-300) ** (-1.0 / (p - 1.0)), np.inf)
    return out


def _advance(
    state: RadialState,
    path: BrownianPath | None,
    controls: SolverControls,
    diffusion: _Diffusion,
    end_num: int,
    end_level: int,
) -> RadialState:
    """One accepted step ending at the dyadic position (end_num, end_level)
    on the driver grid.  Raises StepRejected when the reaction growth cap is
    exceeded or the step jumps past blowup."""
    params = state.params
    p, q, r, s = params.p, params.q, params.r, params.s
    stochastic = controls.stochastic_xi

    # End time computed from the index with the same formula the path uses,
    # so float times never drift off the refinement tree.
    t_end = end_num * (controls.path_dt / (1 << end_level))
    dt = t_end - state.t

    vmax = float(np.max(state.v))
    if controls.enable_reaction and state.K * vmax ** (p - 1.0) * dt > GROWTH_CAP * (1.0 + 1e-12):
        raise StepRejected(
            f"reaction growth {state.K * vmax ** (p - 1.0) * dt:.3g} exceeds cap {GROWTH_CAP}"
        )

    mean_vr_start = mean_power(state.v, r, state.grid)

    v = state.v
    if controls.enable_diffusion:
        v = diffusion.step(v, dt)
    if controls.enable_reaction:
        v = _reaction_flow(v, state.K, p, dt)
        if not np.all(np.isfinite(v)):
            raise StepRejected("reaction reached the singularity inside one step")
    if np.any(np.isnan(v)):
        raise NumericalBreakdown("field became NaN")
    if float(np.min(v)) < -1e-12 * max(1.0, float(np.max(np.abs(v)))):
        raise NumericalBreakdown("field became negative beyond tolerance")

    if stochastic:
        if path is None:
            raise DomainError("a Brownian path is required when stochastic_xi is on")
        B_end = path.value_at_index(end_num, end_level)
        Bstar_end = path.running_max(t_end)
    else:
        B_end, Bstar_end = 0.0, 0.0

    if controls.freeze_reaction_coeff:
        xi_new, xi_hat_new, K_new = state.xi, state.xi_hat, state.K
    else:
        if controls.inhibitor_source:
            mean_vr_end = mean_power(v, r, state.grid)
            xi_s = state.xi**s
            g0 = math.exp(-r * state.t + _integrating_exponent(state.t, state.B, stochastic)) * mean_vr_start / xi_s
            g1 = math.exp(-r * t_end + _integrating_exponent(t_end, B_end, stochastic)) * mean_vr_end / xi_s
            xi_hat_new = state.xi_hat + 0.5 * dt * (g0 + g1)
        else:
            xi_hat_new = state.xi_hat
        xi_new = math.exp(-_integrating_exponent(t_end, B_end, stochastic)) * xi_hat_new
        K_new = math.exp(-(p - 1.0) * t_end) / xi_new**q

    return replace(
        state,
        t=t_end, v=v, xi=xi_new, xi_hat=xi_hat_new,
        B=B_end, Bstar=Bstar_end, K=K_new, t_num=end_num, t_level=end_level,
    )


def step(state: RadialState, path: BrownianPath | None, dt: float, controls: SolverControls | None = None) -> RadialState:
    """Advance one step of size dt (a dyadic refinement of the driver grid).

    Public single-step entry point; :func:`run` drives the adaptive loop.
    """
    controls = (controls or SolverControls()).validate()
    if dt <= 0.0:
        raise DomainError(f"dt must be positive, got {dt}")
    if path is not None and abs(path.dt - controls.path_dt) > 1e-15 * max(1.0, controls.path_dt):
        controls = replace(controls, path_dt=path.dt)
    diffusion = _Diffusion(state.grid)
    num, level = _dyadic_index(state.t + dt, controls.path_dt)
    return _advance(state, path, controls, diffusion, num, level)


def _dyadic_index(t: float, base_dt: float) -> tuple[int, int]:
    x = t / base_dt
    for level in range(49):
        scaled = x * (1 << level)
        num = round(scaled)
        if abs(scaled - num) <= 1e-9 * max(1.0, abs(scaled)):
            while level > 0 and num % 2 == 0:
                num //= 2
                level -= 1
            return int(num), level
    raise DomainError(f"t={t} is not dyadic on the driver grid (dt={base_dt})")


# ---------------------------------------------------------------------------
# Monitors and estimates
# ---------------------------------------------------------------------------


def monitors(state: RadialState, beta: float) -> MonitorReport:
    """Worst violations of the three structural field properties at *state*."""
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"beta must lie in (0,1], got {beta}")
    v, grid, params = state.v, state.grid, state.params
    floor = float(params.gamma - np.min(v))
    mono = float(np.max(np.diff(v)))
    vb = v**beta
    weighted = float(np.max(grid.z**params.n * vb) - grid.weights @ vb)
    return MonitorReport(
        floor_violation=floor,
        monotonicity_violation=mono,
        weighted_tail_violation=weighted,
    )


def _slope_at(z: np.ndarray, v: np.ndarray, z0: float) -> float:
    """Second-order interior slope estimate of v at z0."""
    dz = z[1] - z[0]
    x = z0 / dz
    i = int(round(x))
    if abs(x - i) < 1e-9 and 0 < i < len(z) - 1:
        return float((v[i + 1] - v[i - 1]) / (2.0 * dz))
    grad = np.gradient(v, dz)
    return float(np.interp(z0, z, grad))


def estimate_c0(traj: Trajectory) -> float:
    """Numerical stand-in for the non-constructive midpoint-slope constant:
    the slope of v at z = 1/2 stays below -C0 * 2^{n-1} on the observed
    snapshots.  Clipped at zero (with a warning) if a nonnegative slope is
    ever observed."""
    if not traj.snapshots:
        raise DomainError("trajectory has no snapshots")
    n = traj.params.n
    worst = max(_slope_at(traj.grid.z, v, 0.5) for _, v in traj.snapshots)
    c0 = -worst * 2.0 ** (-(n - 1))
    if c0 <= 0.0:
        warnings.warn("nonnegative midpoint slope observed; clipping C0 to 0", stacklevel=2)
        return 0.0
    return float(c0)


def estimate_c1(traj: Trajectory, R: float) -> float:
    """Largest observed |dv/dz| over z in [R, 1] across snapshots; numerical
    stand-in for the non-constructive outer gradient bound."""
    if not (0.0 < R < 1.0):
        raise DomainError(f"R must lie in (0,1), got {R}")
    if not traj.snapshots:
        raise DomainError("trajectory has no snapshots")
    z = traj.grid.z
    dz = traj.grid.dz
    mask = z >= R - 1e-12
    worst = 0.0
    for _, v in traj.snapshots:
        grad = np.gradient(v, dz)
        worst = max(worst, float(np.max(np.abs(grad[mask]))))
    return worst


def _first_crossing(times: np.ndarray, series: np.ndarray, target: float) -> float:
    """First time the series reaches *target*, linearly interpolated inside
    the bracketing step; inf when never reached."""
    hit = series >= target
    if not bool(hit.any()):
        return math.inf
    k = int(np.argmax(hit))
    if k == 0:
        return float(times[0])
    t0, t1 = times[k - 1], times[k]
    y0, y1 = series[k - 1], series[k]
    if y1 <= y0:
        return float(t1)
    frac = (target - y0) / (y1 - y0)
    return float(t0 + frac * (t1 - t0))


def stopping_time(traj: Trajectory, lam: float, xi0: float) -> float:
    """First time xi_hat reaches lam * xi0 (inf if never before the run
    stopped), interpolated linearly in xi_hat within the bracketing step."""
    return _first_crossing(traj.t, traj.xi_hat, lam * xi0)


def mean_crossing_time(traj: Trajectory, level: float) -> float:
    """First time the mean of v^beta reaches *level* (inf if never)."""
    return _first_crossing(traj.t, traj.mean_vbeta, level)


# ---------------------------------------------------------------------------
# Run loop
# ---------------------------------------------------------------------------


def resolve_beta(params: Parameters) -> float:
    """Diagnostic mean power: the admissible beta from the exponent-selection
    rule in the blowup regime, plain 1 otherwise."""
    if params.blowup_regime:
        from .bounds import select_beta_k

        return select_beta_k(params).beta
    return 1.0


def run(
    params: Parameters,
    path: BrownianPath | None,
    controls: SolverControls | None = None,
) -> tuple[Trajectory, BlowupReport]:
    """Integrate one path until blowup, dt underflow, or the horizon.

    Fully deterministic in (params, path/seed, controls).  On NaN the partial
    trajectory is attached to the raised :class:`NumericalBreakdown`.
    """
    controls = (controls or SolverControls()).validate()
    params = _require_validated(params)
    grid = RadialGrid.uniform(controls.grid_cells, params.n)
    if controls.stochastic_xi:
        if path is None:
            raise DomainError("a Brownian path is required when stochastic_xi is on")
        if path.span < controls.horizon * (1.0 - 1e-12):
            raise DomainError("path span does not cover the horizon")
        if abs(path.dt - controls.path_dt) > 1e-15 * max(1.0, controls.path_dt):
            raise DomainError("controls.path_dt must match the supplied path")

    beta = controls.beta if controls.beta is not None else resolve_beta(params)
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"beta must lie in (0,1], got {beta}")

    diffusion = _Diffusion(grid)
    state = initial_state(params, grid, controls)
    p = params.p

    horizon_steps = int(round(controls.horizon / controls.path_dt))
    snap_times = controls.snapshot_times
    if snap_times is None:
        h = controls.horizon
        snap_times = (0.0, 0.25 * h, 0.5 * h, 0.75 * h)
    snap_queue = sorted(set(float(x) for x in snap_times))

    cols: dict[str, list[float]] = {c: [] for c in Trajectory.COLUMNS}
    snapshots: list[tuple[float, np.ndarray]] = []
    worst = {"floor": -math.inf, "monotonicity": -math.inf, "weighted_tail": -math.inf,
             "xi_hat_decrease": 0.0}

    def record(st: RadialState, dt_used: float) -> None:
        vb = st.v**beta
        row = {
            "t": st.t, "xi": st.xi, "xi_hat": st.xi_hat, "B": st.B, "Bstar": st.Bstar,
            "v0": float(st.v[0]), "vmax": float(np.max(st.v)),
            "mean_vr": float(grid.weights @ (st.v**params.r)),
            "mean_vbeta": float(grid.weights @ vb),
            "K": st.K, "dt": dt_used,
        }
        for c in Trajectory.COLUMNS:
            cols[c].append(row[c])
        worst["floor"] = max(worst["floor"], float(params.gamma - np.min(st.v)))
        worst["monotonicity"] = max(worst["monotonicity"], float(np.max(np.diff(st.v))))
        worst["weighted_tail"] = max(
            worst["weighted_tail"], float(np.max(grid.z**params.n * vb) - row["mean_vbeta"])
        )

    def take_snapshots(st: RadialState) -> None:
        while snap_queue and st.t >= snap_queue[0] - 1e-15:
            snap_queue.pop(0)
            snapshots.append((st.t, st.v.copy()))

    record(state, 0.0)
    take_snapshots(state)

    blew_up = False
    trigger = "horizon"
    t_lo: float | None = None
    t_hi: float | None = None
    steps = 0
    # Time bookkeeping in integer units of path_dt / 2^level.
    num, level = 0, 0

    while True:
        t = state.t
        if t >= controls.horizon * (1.0 - 1e-12):
            trigger = "horizon"
            break
        if steps >= controls.max_steps:
            raise NumericalBreakdown("max_steps exceeded", trajectory=_build_traj(params, grid, beta, cols, snapshots))

        vmax = float(np.max(state.v))
        dt_prop = min(controls.dt_max, controls.horizon - t)
        if controls.enable_reaction and state.K > 0.0 and vmax > 0.0:
            dt_prop = min(dt_prop, controls.safety * GROWTH_CAP / (state.K * vmax ** (p - 1.0)))

        # Finest of: requested size, current alignment level.
        k_req = max(0, int(math.ceil(math.log2(controls.path_dt / dt_prop) - 1e-9)))
        k_eff = max(k_req, level)

        while True:
            dt_step = controls.path_dt * 0.5**k_eff
            if dt_step < controls.dt_min:
                blew_up = True
                trigger = "dt_floor"
                t_lo, t_hi = t, t + dt_step
                break
            end_num = num * (1 << (k_eff - level)) + 1
            try:
                new_state = _advance(state, path, controls, diffusion, *_reduce_idx(end_num, k_eff))
            except StepRejected:
                k_eff += 1
                continue
            break
        if blew_up and trigger == "dt_floor":
            break

        prev_t = state.t
        prev_xi_hat = state.xi_hat
        state = new_state
        num, level = _reduce_idx(end_num, k_eff)
        steps += 1
        worst["xi_hat_decrease"] = max(
            worst["xi_hat_decrease"], float(prev_xi_hat - state.xi_hat)
        )
        record(state, dt_step)
        take_snapshots(state)

        if float(np.max(state.v)) >= controls.v_blow:
            blew_up = True
            trigger = "threshold"
            t_lo, t_hi = prev_t, state.t
            break

    if snapshots and abs(snapshots[-1][0] - state.t) > 1e-15:
        snapshots.append((state.t, state.v.copy()))
    elif not snapshots:
        snapshots.append((state.t, state.v.copy()))

    traj = _build_traj(params, grid, beta, cols, snapshots)

    t_lambda = stopping_time(traj, params.lam, params.xi0)
    bstar_t_lambda: float | None = None
    t_hat_lambda: float | None = None
    if math.isfinite(t_lambda):
        if controls.stochastic_xi and path is not None:
            bstar_t_lambda = path.running_max(min(t_lambda, path.span))
        else:
            bstar_t_lambda = 0.0
        if params.blowup_regime and params.p + beta - 1.0 >= params.r:
            from .bounds import BoundInputs, h_star

            hs = h_star(BoundInputs(
                params=params, beta=beta, t_lambda=t_lambda,
                bstar_t_lambda=bstar_t_lambda, h0=float(traj.mean_vbeta[0]),
            ))
            crossing = mean_crossing_time(traj, hs.value)
            t_hat_lambda = crossing if math.isfinite(crossing) else None

    c0 = c1 = 0.0
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            c0 = estimate_c0(traj)
        c1 = estimate_c1(traj, R=0.5)
    except DomainError:
        pass

    report = BlowupReport(
        blew_up=blew_up,
        trigger=trigger,
        t_lo=t_lo,
        t_hi=t_hi,
        t_lambda=t_lambda,
        bstar_t_lambda=bstar_t_lambda,
        t_hat_lambda=t_hat_lambda,
        bstar_final=float(traj.Bstar[-1]),
        h0=float(traj.mean_vbeta[0]),
        beta=beta,
        c0_estimate=c0,
        c1_estimate=c1,
        worst_violations={
            "v_floor": worst["floor"],
            "monotonicity": worst["monotonicity"],
            "weighted_tail": worst["weighted_tail"],
            "xi_hat_decrease": worst["xi_hat_decrease"],
        },
        steps=steps,
        stop_time=float(state.t),
        path_dt=controls.path_dt,
        xi_final=float(state.xi),
        xi_hat_final=float(state.xi_hat),
    )
    return traj, report


def _reduce_idx(num: int, level: int) -> tuple[int, int]:
    while level > 0 and num % 2 == 0:
        num //= 2
        level -= 1
    return num, level


def _build_traj(params, grid, beta, cols, snapshots) -> Trajectory:
    return Trajectory(
        params=params, grid=grid, beta=beta,
        snapshots=snapshots,
        **{c: np.asarray(cols[c], dtype=float) for c in Trajectory.COLUMNS},
    )


def _require_validated(params: Parameters) -> Parameters:
    if math.isnan(params.alpha):
        from .model import validate

        return validate(params)
    return params
