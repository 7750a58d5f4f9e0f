"""Driving Brownian path: sampling, bridge refinement, running maximum.

A path holds values on a base grid of spacing ``dt`` plus optional bridge
nodes at dyadic subdivisions of the base cells.  Every bridge draw comes from
its own counter-based stream keyed by ``(seed, level, index)``, and a node is
always conditioned on its two dyadic neighbours one level up (which are
inserted first if missing).  The realized path is therefore a function of the
final node set only: refining in any order, or from different callers,
produces bit-identical values.

The running maximum is the maximum of |B| over the discrete nodes, which
understates the continuous supremum; quantities derived from it should be
reported together with the node spacing.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

# Deepest dyadic subdivision of a base cell accepted by refine().
MAX_LEVEL = 48


def _normal_for(seed: int, level: int, index: int) -> float:
    """Standard normal draw keyed by (seed, level, index).

    The key, not generator state, determines the draw, so insertion order is
    irrelevant.
    """
    rng = np.random.default_rng((int(seed), int(level), int(index)))
    return float(rng.standard_normal())


class BrownianPath:
    """Discrete Brownian sample path with cached running maximum of |B|.

    Nodes live at times ``num * dt / 2**level`` with ``level = 0`` for the
    base grid.  Bridge nodes are stored sparsely; base values are a dense
    array.
    """

    def __init__(self, dt: float, base_values: np.ndarray, seed: int):
        if dt <= 0.0:
            raise DomainError(f"dt must be positive, got {dt}")
        self.dt = float(dt)
        self.seed = int(seed)
        self._base = np.asarray(base_values, dtype=float)
        if self._base[0] != 0.0:
            raise DomainError("a Brownian path must start at B(0) = 0")
        self._bridge: dict[tuple[int, int], float] = {}
        self._dirty = True
        self._times: np.ndarray | None = None
        self._values: np.ndarray | None = None
        self._cummax: np.ndarray | None = None

    # -- construction -------------------------------------------------------

    @staticmethod
    def sample(T: float, dt: float, seed: int) -> "BrownianPath":
        """Sample a fresh path on [0, T] with Gaussian increments of
        variance dt, deterministically from *seed*."""
        if T <= 0.0 or dt <= 0.0:
            raise DomainError(f"T and dt must be positive, got T={T}, dt={dt}")
        n = int(math.ceil(T / dt - 1e-12))
        rng = np.random.default_rng((int(seed), 0xB0))
        increments = math.sqrt(dt) * rng.standard_normal(n)
        values = np.concatenate(([0.0], np.cumsum(increments)))
        return BrownianPath(dt, values, seed)

    @staticmethod
    def from_values(dt: float, values, seed: int) -> "BrownianPath":
        """Wrap explicit base values (mainly for tests and replays)."""
        return BrownianPath(dt, np.asarray(values, dtype=float), seed)

    # -- bookkeeping ---------------------------------------------------------

    @property
    def span(self) -> float:
        """Last covered time."""
        return (len(self._base) - 1) * self.dt

    @property
    def num_base_steps(self) -> int:
        return len(self._base) - 1

    def node_count(self) -> int:
        return len(self._base) + len(self._bridge)

    def time_of(self, num: int, level: int) -> float:
        return num * (self.dt / (1 << level))

    @staticmethod
    def _reduce(num: int, level: int) -> tuple[int, int]:
        while level > 0 and num % 2 == 0:
            num //= 2
            level -= 1
        return num, level

    def _index_of_time(self, t: float) -> tuple[int, int]:
        """Map a float time to a reduced dyadic index (num, level)."""
        x = t / self.dt
        for level in range(MAX_LEVEL + 1):
            scaled = x * (1 << level)
            num = round(scaled)
            if abs(scaled - num) <= 1e-9 * max(1.0, abs(scaled)):
                return self._reduce(int(num), level)
        raise DomainError(
            f"t={t} is not a dyadic refinement of the base grid (dt={self.dt})"
        )

    # -- values --------------------------------------------------------------

    def value_at_index(self, num: int, level: int) -> float:
        """Value at a node, inserting it (and any missing dyadic ancestors)
        by Brownian-bridge conditioning when absent."""
        num, level = self._reduce(num, level)
        if level == 0:
            if num < 0 or num >= len(self._base):
                raise DomainError("index outside the path span")
            return float(self._base[num])
        key = (num, level)
        got = self._bridge.get(key)
        if got is not None:
            return got
        if num < 0 or num > (len(self._base) - 1) * (1 << level):
            raise DomainError("index outside the path span")
        left = self.value_at_index(num - 1, level)
        right = self.value_at_index(num + 1, level)
        # Neighbours sit dt/2^level away on each side: the conditional mean is
        # the average and the conditional variance is a quarter of the
        # enclosing interval length.
        std = math.sqrt(self.dt * 0.5 ** (level + 1))
        val = 0.5 * (left + right) + std * _normal_for(self.seed, level, num)
        self._bridge[key] = val
        self._dirty = True
        return val

    def value_at(self, t: float) -> float:
        """Value at an existing (or dyadic, auto-inserted) node time."""
        num, level = self._index_of_time(t)
        return self.value_at_index(num, level)

    def refine(self, t: float) -> None:
        """Insert a bridge node at dyadic time *t*; no-op if already present.

        Existing node values never change, and the final path depends only on
        the final node set, not the insertion order.
        """
        if not (0.0 < t < self.span):
            raise DomainError(f"t={t} outside the open path span (0, {self.span})")
        self.value_at(t)

    # -- running maximum ------------------------------------------------------

    def _ensure_sorted(self) -> None:
        if not self._dirty:
            return
        n_base = len(self._base)
        base_times = np.arange(n_base) * self.dt
        if self._bridge:
            b_keys = list(self._bridge.keys())
            b_times = np.array([self.time_of(num, lev) for num, lev in b_keys])
            b_vals = np.array([self._bridge[k] for k in b_keys])
            times = np.concatenate((base_times, b_times))
            values = np.concatenate((self._base, b_vals))
            order = np.argsort(times, kind="stable")
            times, values = times[order], values[order]
        else:
            times, values = base_times, self._base
        self._times = times
        self._values = values
        self._cummax = np.maximum.accumulate(np.abs(values))
        self._dirty = False

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted node times and values."""
        self._ensure_sorted()
        return self._times, self._values

    def running_max(self, t: float) -> float:
        """Max of |B| over nodes up to time t (discrete approximation of the
        supremum; non-decreasing in t and under refinement)."""
        if t < -1e-15 or t > self.span * (1.0 + 1e-12) + 1e-15:
            raise DomainError(f"t={t} outside the path span [0, {self.span}]")
        self._ensure_sorted()
        idx = int(np.searchsorted(self._times, t * (1.0 + 1e-12) + 1e-300, side="right")) - 1
        return float(self._cummax[max(idx, 0)])

    # -- export ----------------------------------------------------------------

    def to_rows(self):
        """Rows (t, B, Bstar) over the sorted nodes, for CSV dumps."""
        self._ensure_sorted()
        return zip(self._times.tolist(), self._values.tolist(), self._cummax.tolist())


def sample_path(T: float, dt: float, seed: int) -> BrownianPath:
    """Module-level alias for :meth:`BrownianPath.sample`."""
    return BrownianPath.sample(T, dt, seed)


def tail_bound(t: float, A: float) -> float:
    """Reflection-principle tail bound: P(max_{[0,t]} |B| >= A) is at most
    sqrt(t/(2 pi)) * (4/A) * exp(-A^2 / (2t))."""
    if t <= 0.0 or A <= 0.0:
        raise DomainError(f"t and A must be positive, got t={t}, A={A}")
    return math.sqrt(t / (2.0 * math.pi)) * (4.0 / A) * math.exp(-(A * A) / (2.0 * t))
