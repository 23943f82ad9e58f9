"""The complete monotone pair for about-face asymmetry and its operational readings.

For a Bloch vector r and axis n, the pair is
    a = sqrt(r^2 - (r.n)^2)            (cylindrical radius about the axis)
    b = sqrt((r^2 - (r.n)^2) / (1 - (r.n)^2)),  or 0 when (r.n)^2 = 1
      (minor radius of the prolate spheroid through r with major axis n).
Together they decide convertibility under axis-covariant channels and so
fully characterize the resource ordering.  The pole branch of b is taken
when 1 - (r.n)^2 <= POLE_EPS, which makes the discontinuity explicit and
testable.  In exact arithmetic the branch fires only where a vanishes
too, so 0 <= a <= b <= 1 and (a = 0 iff b = 0) hold identically; inside
the finite-width float window the convention forces b = 0 while a can
still be as large as about 1e-6.

a is also half the trace norm of rho - sigma_n rho sigma_n (the optimal
probability of detecting the about-face rotation), and a and b reappear
as the yield and cost of a state relative to the "noisy refbit" chain of
states orthogonal to the axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import Axis, BlochState, X_AXIS
from .errors import Unreachable

POLE_EPS = 1e-12

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class MonotonePair:
    """Values (a, b) of the complete monotone pair; 0 <= a <= b <= 1."""

    a: float
    b: float


@dataclass(frozen=True)
class MonotoneProfile:
    """The six monotone values for the three orthogonal axes."""

    ax: float
    bx: float
    ay: float
    by: float
    az: float
    bz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.ax, self.bx, self.ay, self.by, self.az, self.bz])

    def a_values(self) -> np.ndarray:
        return np.array([self.ax, self.ay, self.az])

    def b_values(self) -> np.ndarray:
        return np.array([self.bx, self.by, self.bz])


def _ab_from_squares(a2: float, rn2: float) -> tuple[float, float]:
    a = min(math.sqrt(max(a2, 0.0)), 1.0)
    denom = 1.0 - rn2
    if denom <= POLE_EPS:
        return a, 0.0
    return a, min(math.sqrt(max(a2, 0.0) / denom), 1.0)


def _general_axis_squares(state: BlochState, axis: Axis) -> tuple[float, float]:
    # The transverse radius comes from the cross product, not r^2 - (r.n)^2,
    # which loses half the significant digits near the axis.
    r = state.vector
    n = axis.vector
    cross = np.cross(r, n)
    return float(np.dot(cross, cross)), float(np.dot(r, n)) ** 2


def a_monotone(state: BlochState, axis: Axis = X_AXIS) -> float:
    """Cylindrical radius of the state about the axis, clamped to [0, 1]."""
    return _ab_from_squares(*_general_axis_squares(state, axis))[0]


def b_monotone(state: BlochState, axis: Axis = X_AXIS) -> float:
    """Spheroidal minor radius about the axis, 0 on the axis poles."""
    return _ab_from_squares(*_general_axis_squares(state, axis))[1]


def monotone_pair(state: BlochState, axis: Axis = X_AXIS) -> MonotonePair:
    a, b = _ab_from_squares(*_general_axis_squares(state, axis))
    return MonotonePair(a, b)


def monotone_profile(state: BlochState) -> MonotoneProfile:
    """Six-tuple (ax, bx, ay, by, az, bz) for the coordinate axes."""
    x2, y2, z2 = state.rx**2, state.ry**2, state.rz**2
    ax, bx = _ab_from_squares(y2 + z2, x2)
    ay, by = _ab_from_squares(x2 + z2, y2)
    az, bz = _ab_from_squares(x2 + y2, z2)
    return MonotoneProfile(ax, bx, ay, by, az, bz)


def profile_arrays(rx: np.ndarray, ry: np.ndarray, rz: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorized monotone profile for component arrays (suite workhorse)."""
    x2, y2, z2 = rx * rx, ry * ry, rz * rz
    out: dict[str, np.ndarray] = {}
    for name, a2, rn2 in (("x", y2 + z2, x2), ("y", x2 + z2, y2), ("z", x2 + y2, z2)):
        denom = 1.0 - rn2
        safe = denom > POLE_EPS
        b2 = np.where(safe, a2 / np.where(safe, denom, 1.0), 0.0)
        out["a" + name] = np.minimum(np.sqrt(a2), 1.0)
        out["b" + name] = np.minimum(np.sqrt(b2), 1.0)
    return out


def trace_distance_asymmetry(state: BlochState, axis: Axis = X_AXIS) -> float:
    """Half the trace norm of rho - sigma_n rho sigma_n, at the operator level.

    Builds both density matrices and sums absolute eigenvalues of their
    difference; agrees with a_monotone to floating-point accuracy and is
    kept operator-level so it can serve as an independent cross-check.
    """
    r = state.vector
    n = axis.vector
    rho = 0.5 * (np.eye(2, dtype=complex) + sum(c * s for c, s in zip(r, _SIGMA)))
    sigma_n = sum(c * s for c, s in zip(n, _SIGMA))
    diff = rho - sigma_n @ rho @ sigma_n
    eigs = np.linalg.eigvalsh(diff)
    return 0.5 * float(np.sum(np.abs(eigs)))


def _perp_direction(axis: Axis) -> np.ndarray:
    """Deterministic unit vector orthogonal to the axis."""
    n = axis.vector
    seed = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    p = seed - np.dot(seed, n) * n
    return p / np.linalg.norm(p)


@dataclass(frozen=True)
class RefbitChain:
    """Grid of noisy-refbit states orthogonal to an axis.

    Chain element g is the state at distance g from the center in a fixed
    direction orthogonal to the axis; its monotone pair is (g, g), so the
    chain is totally ordered and spans bottom (g=0) to top (g=1).
    """

    axis: Axis
    grid: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        if grid.ndim != 1 or len(grid) < 2:
            raise ValueError("chain grid must be a 1-D array with at least 2 entries")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError("chain grid must be strictly increasing")
        if grid[0] < 0.0 or grid[-1] > 1.0:
            raise ValueError("chain grid must lie within [0, 1]")
        grid.flags.writeable = False
        object.__setattr__(self, "grid", grid)

    @classmethod
    def uniform(cls, axis: Axis = X_AXIS, step: float = 1e-3) -> "RefbitChain":
        n = int(round(1.0 / step))
        return cls(axis, np.linspace(0.0, 1.0, n + 1))

    def state_at(self, value: float) -> BlochState:
        v = value * _perp_direction(self.axis)
        return BlochState(float(v[0]), float(v[1]), float(v[2]))


def refbit_cost(state: BlochState, chain: RefbitChain) -> float:
    """Smallest chain value whose state converts to the given state.

    Convertibility from chain element g is monotone in g (the chain is a
    chain), so a bisection over the grid finds the first convertible entry.
    """
    from .ordering import can_convert

    grid = chain.grid
    if not can_convert(chain.state_at(grid[-1]), state, chain.axis).convertible:
        raise Unreachable("state not producible even from the chain top")
    lo, hi = 0, len(grid) - 1  # invariant: grid[hi] works
    if can_convert(chain.state_at(grid[0]), state, chain.axis).convertible:
        return float(grid[0])
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if can_convert(chain.state_at(grid[mid]), state, chain.axis).convertible:
            hi = mid
        else:
            lo = mid
    return float(grid[hi])


def refbit_yield(state: BlochState, chain: RefbitChain) -> float:
    """Largest chain value obtainable from the given state."""
    from .ordering import can_convert

    grid = chain.grid
    if not can_convert(state, chain.state_at(grid[0]), chain.axis).convertible:
        return 0.0  # grid starts above every obtainable value; the yield floor is free
    lo, hi = 0, len(grid) - 1  # invariant: grid[lo] reachable
    if can_convert(state, chain.state_at(grid[-1]), chain.axis).convertible:
        return float(grid[-1])
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if can_convert(state, chain.state_at(grid[mid]), chain.axis).convertible:
            lo = mid
        else:
            hi = mid
    return float(grid[lo])
