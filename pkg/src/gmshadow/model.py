"""Model parameters, the radial grid, and the initial profile.

The simulated system is the shadow Gierer-Meinhardt model on the unit ball
with a scalar inhibitor driven by multiplicative Brownian noise.  Everything
here is a pure function of its inputs: parameter validation, the piecewise
initial profile and its closed-form derivatives, the weighted radial grid
used for spatial means, and the u <-> v change of variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import AdmissibilityViolation, DomainError

# Relative slack used when enforcing strict inequalities, so that boundary
# cases are not accepted through round-off.
STRICT_REL_SLACK = 1e-12


@dataclass(frozen=True)
class Parameters:
    """Exponents, profile knobs, and stochastic knobs of one model instance.

    ``alpha`` and ``blowup_regime`` are derived; construct instances through
    :func:`validate` so they are filled in consistently.
    """

    p: float
    q: float
    r: float
    s: float
    n: int
    delta: float = 0.5
    gamma: float = 1.0
    xi0: float = 1.0
    lam: float = 2.0
    alpha: float = float("nan")
    blowup_regime: bool = False


def validate(raw: Parameters) -> Parameters:
    """Check a raw parameter set and fill in the derived fields.

    Raises :class:`DomainError` for out-of-range scalars and
    :class:`AdmissibilityViolation` when 0 < (p-1)/r < q/(s+1) fails.  The
    strict inequalities carry a relative slack so exact boundary cases are
    rejected rather than admitted by round-off.
    """
    p, q, r, s = float(raw.p), float(raw.q), float(raw.r), float(raw.s)
    if not all(map(math.isfinite, (p, q, r, s, raw.delta, raw.gamma, raw.xi0, raw.lam))):
        raise DomainError("parameters must be finite")
    if p <= 1.0:
        raise DomainError(f"p must exceed 1, got {p}")
    if q <= 0.0 or r <= 0.0:
        raise DomainError(f"q and r must be positive, got q={q}, r={r}")
    if s < 0.0:
        raise DomainError(f"s must be nonnegative, got {s}")
    n = int(raw.n)
    if n < 1 or n != raw.n:
        raise DomainError(f"n must be a positive integer, got {raw.n}")
    if not (0.0 < raw.delta < 1.0):
        raise DomainError(f"delta must lie in (0,1), got {raw.delta}")
    if raw.gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {raw.gamma}")
    if raw.xi0 <= 0.0:
        raise DomainError(f"xi0 must be positive, got {raw.xi0}")
    if raw.lam <= 1.0:
        raise DomainError(f"lambda must exceed 1, got {raw.lam}")

    ratio = (p - 1.0) / r
    if not (ratio < (q / (s + 1.0)) * (1.0 - STRICT_REL_SLACK)):
        raise AdmissibilityViolation(
            f"(p-1)/r = {ratio} must be strictly below q/(s+1) = {q / (s + 1.0)}"
        )

    alpha = 2.0 / (p - 1.0)
    regime = (p >= r) and (ratio > (2.0 / (n + 2.0)) * (1.0 + STRICT_REL_SLACK))
    return replace(raw, p=p, q=q, r=r, s=s, n=n, alpha=alpha, blowup_regime=regime)


def u_from_v(v, t: float):
    """Undo the exponential rescaling: u = e^{-t} v."""
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    return np.exp(-t) * v


def v_from_u(u, t: float):
    """Apply the exponential rescaling: v = e^{t} u."""
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    return np.exp(t) * u


# ---------------------------------------------------------------------------
# Initial profile
# ---------------------------------------------------------------------------


def initial_profile(z, delta: float, alpha: float):
    """Isotropic initial shape: z^{-alpha} outside |z| = delta, matched by a
    downward parabola inside so the profile is C^1 everywhere.

    Accepts scalars or arrays on [0, 1].
    """
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    if alpha <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0.0) or np.any(z_arr > 1.0):
        raise DomainError("z must lie in [0,1]")
    a = delta ** (-alpha) * (1.0 + alpha / 2.0)
    b = (alpha / 2.0) * delta ** (-alpha - 2.0)
    inner = a - b * z_arr**2
    # z=0 falls in the inner branch, so the z**(-alpha) singularity is never hit.
    outer = np.power(np.where(z_arr >= delta, z_arr, 1.0), -alpha)
    out = np.where(z_arr >= delta, outer, inner)
    return float(out) if np.isscalar(z) or z_arr.ndim == 0 else out


def initial_profile_derivatives(z, delta: float, alpha: float):
    """First and second derivatives of :func:`initial_profile` in closed form.

    Returns ``(d1, d2)``.  At the matching point z = delta the outer branch is
    used; both one-sided first derivatives agree there analytically.
    """
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    if alpha <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0.0) or np.any(z_arr > 1.0):
        raise DomainError("z must lie in [0,1]")
    b = (alpha / 2.0) * delta ** (-alpha - 2.0)
    zsafe = np.where(z_arr >= delta, z_arr, 1.0)
    d1 = np.where(z_arr >= delta, -alpha * zsafe ** (-alpha - 1.0), -2.0 * b * z_arr)
    d2 = np.where(
        z_arr >= delta,
        alpha * (alpha + 1.0) * zsafe ** (-alpha - 2.0),
        -2.0 * b * np.ones_like(z_arr),
    )
    if np.isscalar(z) or z_arr.ndim == 0:
        return float(d1), float(d2)
    return d1, d2


@dataclass(frozen=True)
class ProfileMarginReport:
    """Pointwise margin of the profile differential inequality
    phi'' + ((n-1)/z) phi' + alpha*n*phi^p over the interior grid nodes."""

    min_margin: float
    argmin_z: float
    # One-sided limits of the expression at the matching point z = delta.
    inner_limit_at_delta: float
    outer_limit_at_delta: float
    margins: np.ndarray


def profile_inequality_margin(params: Parameters, grid: "RadialGrid") -> ProfileMarginReport:
    """Evaluate the profile inequality margin on the interior nodes of *grid*.

    Uses the closed-form piecewise derivatives, not finite differences.  A
    negative minimum is reported, never raised.
    """
    z = grid.z[1:-1]
    alpha, n, p, delta = params.alpha, params.n, params.p, params.delta
    phi = initial_profile(z, delta, alpha)
    d1, d2 = initial_profile_derivatives(z, delta, alpha)
    margins = d2 + (n - 1) / z * d1 + alpha * n * phi**p

    b = (alpha / 2.0) * delta ** (-alpha - 2.0)
    phi_delta = delta**-alpha
    inner_lim = -2.0 * b * n + alpha * n * phi_delta**p
    outer_lim = (
        alpha * (alpha + 1.0) * delta ** (-alpha - 2.0)
        + (n - 1) / delta * (-alpha * delta ** (-alpha - 1.0))
        + alpha * n * phi_delta**p
    )
    i = int(np.argmin(margins))
    return ProfileMarginReport(
        min_margin=float(margins[i]),
        argmin_z=float(z[i]),
        inner_limit_at_delta=float(inner_lim),
        outer_limit_at_delta=float(outer_lim),
        margins=margins,
    )


def profile_c1_mismatch(delta: float, alpha: float) -> tuple[float, float]:
    """Relative branch mismatch of the profile and its slope at z = delta.

    Both are zero analytically; the return values measure floating round-off
    of the two closed-form branch expressions.
    """
    a = delta ** (-alpha) * (1.0 + alpha / 2.0)
    b = (alpha / 2.0) * delta ** (-alpha - 2.0)
    val_inner = a - b * delta**2
    val_outer = delta**-alpha
    d_inner = -2.0 * b * delta
    d_outer = -alpha * delta ** (-alpha - 1.0)
    rel_val = abs(val_inner - val_outer) / abs(val_outer)
    rel_d = abs(d_inner - d_outer) / abs(d_outer)
    return rel_val, rel_d


# ---------------------------------------------------------------------------
# Radial grid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid on [0,1] with weights for the volume mean.

    ``z`` holds the N+1 nodes 0 = z_0 < ... < z_N = 1.  ``weights[i]`` is the
    exact integral of n z^{n-1} over the midpoint cell around node i, so the
    mean of a field f is the dot product ``weights @ f``: the weight function
    is integrated in closed form and only f is approximated (as piecewise
    constant per cell).  The same cells define the finite-volume diffusion
    stencil in the solver, which makes the discrete mean an exact invariant
    of the pure-diffusion update.
    """

    n: int
    z: np.ndarray
    weights: np.ndarray
    cell_volumes: np.ndarray  # integral of z^{n-1} over each cell (= weights / n)
    face_areas: np.ndarray  # z^{n-1} at the interior faces z_{i+1/2}

    @property
    def num_cells(self) -> int:
        return len(self.z) - 1

    @property
    def dz(self) -> float:
        return float(self.z[1] - self.z[0])

    @staticmethod
    def uniform(num_cells: int, n: int) -> "RadialGrid":
        if num_cells < 2:
            raise DomainError(f"grid needs at least 2 cells, got {num_cells}")
        if n < 1:
            raise DomainError(f"dimension n must be >= 1, got {n}")
        z = np.linspace(0.0, 1.0, num_cells + 1)
        dz = z[1] - z[0]
        half = np.concatenate(([0.0], z[:-1] + 0.5 * dz, [1.0]))
        weights = np.diff(half**n)
        faces = (z[:-1] + 0.5 * dz) ** (n - 1)
        return RadialGrid(
            n=n, z=z, weights=weights, cell_volumes=weights / n, face_areas=faces
        )


def mean_power(v: np.ndarray, m: float, grid: RadialGrid) -> float:
    """Volume mean of v^m over the unit ball: integral of v^m n z^{n-1} dz.

    Rejects fields with entries below -1e-14; clips the remaining sign noise
    to zero before taking the power.
    """
    v = np.asarray(v, dtype=float)
    if m < 0.0:
        raise DomainError(f"m must be nonnegative, got {m}")
    if np.any(v < -1e-14):
        raise DomainError("field has negative entries beyond tolerance")
    vv = np.maximum(v, 0.0)
    if m == 1.0:
        powered = vv
    else:
        powered = vv**m
    return float(grid.weights @ powered)
