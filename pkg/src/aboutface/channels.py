"""Trace-preserving qubit maps in Bloch (affine) form.

A map acts as r -> M r + t with a real 3x3 matrix M and translation t;
trace preservation is structural (the implicit top row of the 4x4
representation is (1, 0, 0, 0)).  Complete positivity is tested through
the Choi matrix, and about-face covariance through commutation with the
pi rotation about the symmetry axis.

The extremal covariant channels form a two-parameter family
    t = (sin u sin v, 0, 0),   M = diag(cos u cos v, cos u, cos v),
with u in [0, 2pi) and v in [0, pi); every covariant channel factors as
rotation . translation-scaling . rotation about the axis, where the
middle factor is a convex combination of extremal channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._mnp import minimum_norm_point
from .bloch import X_AXIS, Axis, BlochState, rotation_matrix, state_from_vector
from .errors import BadWeights, NotCovariant, NotCPTP

CPTP_EPS = 1e-9

_ID2 = np.eye(2, dtype=complex)
_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class AffineQubitMap:
    """Bloch representation (t, M) of a trace-preserving qubit map."""

    t: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        t = np.array(self.t, dtype=float).reshape(3)
        m = np.array(self.m, dtype=float).reshape(3, 3)
        t.flags.writeable = False
        m.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "m", m)

    @classmethod
    def identity(cls) -> "AffineQubitMap":
        return cls(np.zeros(3), np.eye(3))

    @property
    def matrix4(self) -> np.ndarray:
        """The 4x4 representation [[1, 0], [t, M]]."""
        out = np.zeros((4, 4))
        out[0, 0] = 1.0
        out[1:, 0] = self.t
        out[1:, 1:] = self.m
        return out

    def isclose(self, other: "AffineQubitMap", tol: float = 1e-12) -> bool:
        return bool(
            np.all(np.abs(self.t - other.t) <= tol)
            and np.all(np.abs(self.m - other.m) <= tol)
        )


def apply(channel: AffineQubitMap, state: BlochState) -> BlochState:
    """Image M r + t; raises OutsideBall if the image leaves the valid ball."""
    return state_from_vector(channel.m @ state.vector + channel.t)


def compose(outer: AffineQubitMap, inner: AffineQubitMap) -> AffineQubitMap:
    """Map equal to applying ``inner`` first, then ``outer``."""
    return AffineQubitMap(outer.m @ inner.t + outer.t, outer.m @ inner.m)


def rotation_map(axis: Axis, angle: float) -> AffineQubitMap:
    return AffineQubitMap(np.zeros(3), rotation_matrix(axis, angle))


def _apply_to_operator(channel: AffineQubitMap, x: np.ndarray) -> np.ndarray:
    """Linear extension of the map to arbitrary 2x2 complex operators."""
    x0 = np.trace(x) / 2.0
    xv = np.array([np.trace(s @ x) for s in _SIGMA]) / 2.0
    out_v = channel.m @ xv
    out = x0 * _ID2 + x0 * sum(t_k * s for t_k, s in zip(channel.t, _SIGMA))
    out = out + sum(c * s for c, s in zip(out_v, _SIGMA))
    return out


def choi_of(channel: AffineQubitMap) -> np.ndarray:
    """Unnormalized Choi matrix sum_ij E(|i><j|) (x) |i><j| (trace 2)."""
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            eij = np.zeros((2, 2), dtype=complex)
            eij[i, j] = 1.0
            choi += np.kron(_apply_to_operator(channel, eij), eij)
    # Hermitian by construction; symmetrize rounding noise.
    return (choi + choi.conj().T) / 2.0


def is_cptp(channel: AffineQubitMap, tol: float = CPTP_EPS) -> bool:
    """Complete positivity via Choi positive-semidefiniteness."""
    return float(np.linalg.eigvalsh(choi_of(channel))[0]) >= -tol


def min_choi_eigenvalue(channel: AffineQubitMap) -> float:
    return float(np.linalg.eigvalsh(choi_of(channel))[0])


def is_covariant(channel: AffineQubitMap, tol: float = CPTP_EPS, axis: Axis = X_AXIS) -> bool:
    """True iff the map commutes with the pi rotation about the axis."""
    g = rotation_map(axis, math.pi).matrix4
    c = channel.matrix4
    return float(np.max(np.abs(c @ g - g @ c))) <= tol


@dataclass(frozen=True)
class ExtremalCovariantParams:
    """Angles (u, v) of one extremal covariant channel."""

    u: float
    v: float

    def __post_init__(self):
        if not 0.0 <= self.u < 2.0 * math.pi:
            raise ValueError(f"u must lie in [0, 2pi), got {self.u}")
        if not 0.0 <= self.v < math.pi:
            raise ValueError(f"v must lie in [0, pi), got {self.v}")


def extremal_covariant(params: ExtremalCovariantParams) -> AffineQubitMap:
    """Extremal covariant channel for the x axis."""
    su, cu = math.sin(params.u), math.cos(params.u)
    sv, cv = math.sin(params.v), math.cos(params.v)
    return AffineQubitMap(np.array([su * sv, 0.0, 0.0]), np.diag([cu * cv, cu, cv]))


@dataclass(frozen=True)
class CovariantChannelSpec:
    """Parameters (theta1, mixture of extremals, theta2) of a covariant channel.

    The channel is rotation(theta1) . sum_i w_i extremal(u_i, v_i) . rotation(theta2),
    where the mixture acts entrywise on (t, M) (the Bloch representation is
    linear in the channel).
    """

    theta1: float
    theta2: float
    mixture: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        mixture = tuple((float(u), float(v), float(w)) for u, v, w in self.mixture)
        object.__setattr__(self, "mixture", mixture)
        weights = np.array([w for _, _, w in mixture])
        if len(weights) == 0 or np.any(weights < 0.0):
            raise BadWeights("mixture weights must be nonnegative and nonempty")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise BadWeights(f"mixture weights sum to {weights.sum()}, expected 1")


def _mixture_map(mixture) -> AffineQubitMap:
    t = np.zeros(3)
    m = np.zeros((3, 3))
    for u, v, w in mixture:
        t[0] += w * math.sin(u) * math.sin(v)
        m += w * np.diag([math.cos(u) * math.cos(v), math.cos(u), math.cos(v)])
    return AffineQubitMap(t, m)


def build_covariant(spec: CovariantChannelSpec, axis: Axis = X_AXIS) -> AffineQubitMap:
    """Covariant channel from its (theta1, mixture, theta2) parameters.

    For a non-x axis the construction is conjugated by the minimal-angle
    frame rotation sending the axis to x.
    """
    core = compose(
        rotation_map(X_AXIS, spec.theta1),
        compose(_mixture_map(spec.mixture), rotation_map(X_AXIS, spec.theta2)),
    )
    if axis == X_AXIS:
        return core
    from .bloch import frame_to_x

    f = frame_to_x(axis)
    return AffineQubitMap(f.T @ core.t, f.T @ core.m @ f)


def decompose_covariant(
    channel: AffineQubitMap, tol: float = CPTP_EPS
) -> tuple[float, AffineQubitMap, float]:
    """Factor an x-covariant CPTP map as rotation(theta1) . D . rotation(theta2).

    D is a translation-scaling map (t along x, diagonal M) obtained from a
    2x2 singular value decomposition of the (y, z) block; reflections are
    absorbed as sign flips on D's diagonal.  The representative returned is
    canonical: theta1, theta2 in [0, 2pi) with theta1 minimal among the two
    equivalent (theta1, theta2) / (theta1 + pi, theta2 + pi) choices.
    """
    if not is_covariant(channel, tol):
        raise NotCovariant("map does not commute with the about-face rotation")
    if not is_cptp(channel, tol):
        raise NotCPTP("map is not completely positive")

    block = channel.m[1:, 1:]
    u_mat, sing, vt_mat = np.linalg.svd(block)
    sing = sing.copy()
    if np.linalg.det(u_mat) < 0.0:
        u_mat = u_mat @ np.diag([1.0, -1.0])
        sing[1] = -sing[1]
    if np.linalg.det(vt_mat) < 0.0:
        vt_mat = np.diag([1.0, -1.0]) @ vt_mat
        sing[1] = -sing[1]

    # Rotation blocks follow [[cos a, sin a], [-sin a, cos a]].
    theta1 = math.atan2(u_mat[0, 1], u_mat[0, 0]) % (2.0 * math.pi)
    theta2 = math.atan2(vt_mat[0, 1], vt_mat[0, 0]) % (2.0 * math.pi)
    alt1 = (theta1 + math.pi) % (2.0 * math.pi)
    alt2 = (theta2 + math.pi) % (2.0 * math.pi)
    if (alt1, alt2) < (theta1, theta2):
        theta1, theta2 = alt1, alt2

    d_map = AffineQubitMap(
        np.array([channel.t[0], 0.0, 0.0]),
        np.diag([channel.m[0, 0], sing[0], sing[1]]),
    )
    return theta1, d_map, theta2


def random_covariant_cptp(rng: np.random.Generator, max_tries: int = 10000) -> AffineQubitMap:
    """Rejection-sample the 6 free covariant entries uniformly in [-1, 1]."""
    for _ in range(max_tries):
        tx, mxx, myy, myz, mzy, mzz = rng.uniform(-1.0, 1.0, size=6)
        candidate = AffineQubitMap(
            np.array([tx, 0.0, 0.0]),
            np.array([[mxx, 0.0, 0.0], [0.0, myy, myz], [0.0, mzy, mzz]]),
        )
        if is_cptp(candidate, 1e-12):
            return candidate
    raise RuntimeError("rejection sampling failed to find a CPTP map")


def _extremal_features(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rows (t_x, lambda_x, lambda_y, lambda_z) of extremal channels, shape (4, k)."""
    return np.vstack(
        [np.sin(u) * np.sin(v), np.cos(u) * np.cos(v), np.cos(u), np.cos(v)]
    )


def extremal_param_grid(n_u: int, n_v: int) -> np.ndarray:
    """(k, 2) array of (u, v) grid parameters covering the extremal family."""
    u = np.linspace(0.0, 2.0 * math.pi, n_u, endpoint=False)
    v = np.linspace(0.0, math.pi, n_v, endpoint=False)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    return np.column_stack([uu.ravel(), vv.ravel()])


def covariant_scaling_fit(
    d_map: AffineQubitMap, grid_n: int = 64, refine_steps: int = 3
) -> tuple[float, list[tuple[float, float, float]]]:
    """Best convex combination of extremal channels matching a translation-scaling map.

    Projects the 4-vector (t_x, lambda_x, lambda_y, lambda_z) onto the
    convex hull of the extremal family over a (u, v) grid (a minimum-norm
    point problem), then refines (u, v) locally around the active support.
    Returns (entrywise residual, [(u, v, weight), ...]).
    """
    target = np.array([d_map.t[0], d_map.m[0, 0], d_map.m[1, 1], d_map.m[2, 2]])
    params = extremal_param_grid(grid_n, grid_n)
    spacing = 2.0 * math.pi / grid_n
    offsets = np.arange(-3, 4, dtype=float)

    support = params
    weights = np.array([1.0])
    for step in range(refine_steps + 1):
        shifted = _extremal_features(params[:, 0], params[:, 1]).T - target
        _, idx, weights = minimum_norm_point(shifted)
        support = params[idx]
        if step == refine_steps:
            break
        local = spacing / 5.0 ** (step + 1)
        du, dv = np.meshgrid(offsets * local, offsets * local, indexing="ij")
        extra = []
        for u0, v0 in support:
            uu = (u0 + du.ravel()) % (2.0 * math.pi)
            vv = np.clip(v0 + dv.ravel(), 0.0, math.pi - 1e-12)
            extra.append(np.column_stack([uu, vv]))
        # Keeping the previous support guarantees the fit cannot regress.
        params = np.vstack([support] + extra)

    fitted = _extremal_features(support[:, 0], support[:, 1]) @ weights
    residual = float(np.max(np.abs(fitted - target)))
    return residual, [(float(u), float(v), float(w)) for (u, v), w in zip(support, weights)]
