"""Brute-force channel-search oracle for state convertibility.

Independent of the monotone criterion, this searches the full covariant
channel family rotation(theta1) . mixture-of-extremals . rotation(theta2)
for a channel mapping a source state onto a target state.  Rotations
about the axis act transitively on each equivalence circle, so both
states are first rotated into the half-plane through the axis; the
remaining problem is a two-dimensional one: project the reduced target
onto the convex hull of the extremal-channel images of the reduced
source.  The hull projection is exact (point-polygon geometry), the
mixture weights come from the supporting simplex, and the (u, v) grid is
refined locally around the support.

Every returned channel is a genuine covariant CPTP map, so agreement
between this search and the two-monotone criterion is a meaningful check
of the conversion theorem rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .bloch import Axis, BlochState, SamplerConfig, X_AXIS, frame_to_x, sample_vectors, state_from_vector
from .channels import AffineQubitMap, CovariantChannelSpec, build_covariant, extremal_param_grid
from .errors import RangeViolation
from .monotones import monotone_pair
from .ordering import can_convert

_FREE_SOURCE_EPS = 1e-9


@dataclass(frozen=True)
class OracleConfig:
    """Discretization of the covariant-channel search.

    theta_grid_n is retained for interface compatibility; the half-plane
    reduction determines both rotation angles in closed form, so only the
    (u, v) grid over extremal channels is actually scanned.
    """

    theta_grid_n: int = 64
    uv_grid_n: int = 64
    refine_steps: int = 3
    hit_tol: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.theta_grid_n < 4 or self.uv_grid_n < 4:
            raise ValueError("grid sizes must be at least 4")
        if self.hit_tol <= 0.0:
            raise ValueError("hit_tol must be positive")


@dataclass(frozen=True)
class OracleResult:
    best_distance: float
    best_channel: CovariantChannelSpec
    feasible: bool


def _halfplane_angle(vy: float, vz: float) -> float:
    """Rotation angle about x sending (vy, vz) to (0, +hypot(vy, vz))."""
    if vy == 0.0 and vz == 0.0:
        return 0.0
    return math.atan2(-vy, vz)


def _image_points(rx: float, ryz: float, params: np.ndarray) -> np.ndarray:
    """Extremal-channel images of the reduced source (rx, 0, ryz), shape (k, 2)."""
    u, v = params[:, 0], params[:, 1]
    px = np.sin(u) * np.sin(v) + rx * np.cos(u) * np.cos(v)
    pz = ryz * np.cos(v)
    return np.column_stack([px, pz])


def _segment_project(a: np.ndarray, b: np.ndarray, tau: np.ndarray) -> tuple[float, float]:
    """Distance from tau to segment [a, b] and the b-endpoint weight."""
    d = b - a
    denom = float(d @ d)
    t = 0.0 if denom == 0.0 else float(np.clip((tau - a) @ d / denom, 0.0, 1.0))
    return float(np.linalg.norm(tau - (a + t * d))), t


def _degenerate_project(pts: np.ndarray, tau: np.ndarray):
    """Fallback when the image cloud is (near) collinear."""
    center = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - center, full_matrices=False)
    coords = (pts - center) @ vt[0]
    i_lo, i_hi = int(np.argmin(coords)), int(np.argmax(coords))
    dist, t = _segment_project(pts[i_lo], pts[i_hi], tau)
    return dist, [i_lo, i_hi], [1.0 - t, t]


def _hull_project(pts: np.ndarray, tau: np.ndarray):
    """Exact distance from tau to conv(pts) plus supporting weights.

    Returns (distance, indices into pts, matching convex weights).
    """
    try:
        hull = ConvexHull(pts)
    except QhullError:
        return _degenerate_project(pts, tau)
    vidx = hull.vertices  # counterclockwise for 2-D inputs
    verts = pts[vidx]
    m = len(verts)
    edges = np.roll(verts, -1, axis=0) - verts
    cross = edges[:, 0] * (tau[1] - verts[:, 1]) - edges[:, 1] * (tau[0] - verts[:, 0])
    if np.all(cross >= -1e-12):
        # Interior (or boundary) point: express tau over a fan triangle.
        for i in range(1, m - 1):
            mat = np.column_stack([verts[i] - verts[0], verts[i + 1] - verts[0]])
            try:
                lam = np.linalg.solve(mat, tau - verts[0])
            except np.linalg.LinAlgError:
                continue
            bary = np.array([1.0 - lam[0] - lam[1], lam[0], lam[1]])
            if np.min(bary) >= -1e-9:
                bary = np.clip(bary, 0.0, None)
                bary /= bary.sum()
                return 0.0, [int(vidx[0]), int(vidx[i]), int(vidx[i + 1])], list(bary)
    best = (math.inf, 0, 0.0)
    for i in range(m):
        j = (i + 1) % m
        dist, t = _segment_project(verts[i], verts[j], tau)
        if dist < best[0]:
            best = (dist, i, t)
    dist, i, t = best
    j = (i + 1) % m
    return dist, [int(vidx[i]), int(vidx[j])], [1.0 - t, t]


def _search_reduced(rx: float, ryz: float, tau: np.ndarray, config: OracleConfig):
    """Project tau onto the reachable region of the reduced source.

    Returns (distance, [(u, v, weight), ...]).  The candidate set only ever
    grows across refinement rounds, so the distance is non-increasing in
    both the grid size and the refinement depth.
    """
    params = extremal_param_grid(config.uv_grid_n, config.uv_grid_n)
    pts = _image_points(rx, ryz, params)
    spacing = 2.0 * math.pi / config.uv_grid_n
    offsets = np.arange(-3, 4, dtype=float)

    dist, idx, weights = _hull_project(pts, tau)
    for step in range(config.refine_steps):
        if dist <= 1e-15:
            break
        local = spacing / 5.0 ** (step + 1)
        du, dv = np.meshgrid(offsets * local, offsets * local, indexing="ij")
        extra = []
        for k in idx:
            u0, v0 = params[k]
            uu = (u0 + du.ravel()) % (2.0 * math.pi)
            vv = np.clip(v0 + dv.ravel(), 0.0, math.pi - 1e-12)
            extra.append(np.column_stack([uu, vv]))
        # Keeping the previous support guarantees the distance cannot regress.
        keep = sorted(set(idx))
        params = np.vstack([params[keep]] + extra)
        pts = _image_points(rx, ryz, params)
        dist, idx, weights = _hull_project(pts, tau)

    mixture = [
        (float(params[k, 0]), float(params[k, 1]), float(w))
        for k, w in zip(idx, weights)
        if w > 1e-15
    ]
    return dist, mixture


def _normalized_mixture(mixture) -> tuple[tuple[float, float, float], ...]:
    total = sum(w for _, _, w in mixture)
    return tuple((u, v, w / total) for u, v, w in mixture)


def search_channel(
    source: BlochState, target: BlochState, axis: Axis = X_AXIS, config: OracleConfig = OracleConfig()
) -> OracleResult:
    """Best covariant channel mapping source toward target.

    Always returns the best effort found; feasible means the residual
    Bloch distance is at most config.hit_tol.
    """
    f = frame_to_x(axis)
    r = f @ source.vector
    t = f @ target.vector
    ryz = math.hypot(r[1], r[2])
    tyz = math.hypot(t[1], t[2])
    theta2 = _halfplane_angle(r[1], r[2]) % (2.0 * math.pi)
    theta1 = (-_halfplane_angle(t[1], t[2])) % (2.0 * math.pi)
    tau = np.array([t[0], tyz])

    if ryz <= _FREE_SOURCE_EPS:
        # Free source: the reachable set is the axis segment [-1, 1].
        x_star = float(np.clip(tau[0], -1.0, 1.0))
        dist = math.hypot(tau[0] - x_star, tau[1])
        alpha = 0.5 * (x_star + 1.0)
        mixture = [
            (math.pi / 2.0, math.pi / 2.0, alpha),
            (3.0 * math.pi / 2.0, math.pi / 2.0, 1.0 - alpha),
        ]
        mixture = [(u, v, w) for u, v, w in mixture if w > 1e-15]
    else:
        dist, mixture = _search_reduced(float(r[0]), ryz, tau, config)

    spec = CovariantChannelSpec(theta1, theta2, _normalized_mixture(mixture))
    return OracleResult(float(dist), spec, bool(dist <= config.hit_tol))


def realize_channel(spec: CovariantChannelSpec, axis: Axis = X_AXIS) -> AffineQubitMap:
    """Affine map of an oracle channel (conjugated to the requested axis)."""
    return build_covariant(spec, axis)


def _clearance_lower_bound(t_par: float, t_yz: float, a_s: float, b_s: float) -> float:
    """Certified lower bound on the distance from the reduced target to the
    closure of the reduced source (cylinder and spheroid bounds)."""
    bound = t_yz - a_s
    if b_s > 0.0:
        tau = np.array([t_par, t_yz])
        if (t_par / 1.0) ** 2 + (t_yz / b_s) ** 2 > 1.0:
            phi = np.linspace(0.0, math.pi, 4096)
            ell = np.column_stack([np.cos(phi), b_s * np.sin(phi)])
            bound = max(bound, float(np.min(np.linalg.norm(ell - tau, axis=1))))
    return bound


@dataclass(frozen=True)
class AgreementReport:
    n_pairs: int
    n_tested: int
    n_band_discarded: int
    n_geometry_discarded: int
    disagreements: tuple = ()
    worst_convertible_distance: float = 0.0
    min_inconvertible_distance: float = math.inf

    @property
    def passed(self) -> bool:
        return len(self.disagreements) == 0


def oracle_agreement(
    n_pairs: int,
    config: OracleConfig = OracleConfig(),
    margin: float = 0.02,
    axis: Axis = X_AXIS,
    sampler_mode: str = "uniform-ball",
    radius: float = 1.0,
) -> AgreementReport:
    """Compare the monotone criterion against the channel search on random pairs.

    Pairs whose monotone margins fall inside the +-margin band are
    discarded (a grid oracle cannot resolve the decision boundary).  For
    pairs the criterion declares inconvertible, the geometric clearance
    between target and closure must also exceed 2 * hit_tol, since the
    spheroid constraint loses Euclidean sensitivity near its apex; pairs
    below that clearance are discarded and counted separately.
    """
    if margin <= config.hit_tol:
        raise ValueError("margin must exceed the oracle hit tolerance")
    if n_pairs == 0:
        return AgreementReport(0, 0, 0, 0)

    vectors = sample_vectors(SamplerConfig(sampler_mode, radius=radius, seed=config.seed), 2 * n_pairs)
    f = frame_to_x(axis)
    tested = 0
    band = 0
    geometry = 0
    disagreements = []
    worst_feasible = 0.0
    min_infeasible = math.inf
    for k in range(n_pairs):
        source = state_from_vector(vectors[2 * k])
        target = state_from_vector(vectors[2 * k + 1])
        verdict = can_convert(source, target, axis)
        if abs(verdict.delta_a) < margin or abs(verdict.delta_b) < margin:
            band += 1
            continue
        if not verdict.convertible:
            t = f @ target.vector
            pair_s = monotone_pair(source, axis)
            clearance = _clearance_lower_bound(
                float(t[0]), math.hypot(t[1], t[2]), pair_s.a, pair_s.b
            )
            if clearance <= 2.0 * config.hit_tol:
                geometry += 1
                continue
        tested += 1
        result = search_channel(source, target, axis, config)
        if result.feasible != verdict.convertible:
            disagreements.append(
                {
                    "source": source.as_tuple(),
                    "target": target.as_tuple(),
                    "convertible": verdict.convertible,
                    "best_distance": result.best_distance,
                }
            )
        if verdict.convertible:
            worst_feasible = max(worst_feasible, result.best_distance)
        else:
            min_infeasible = min(min_infeasible, result.best_distance)
    return AgreementReport(
        n_pairs=n_pairs,
        n_tested=tested,
        n_band_discarded=band,
        n_geometry_discarded=geometry,
        disagreements=tuple(disagreements),
        worst_convertible_distance=worst_feasible,
        min_inconvertible_distance=min_infeasible,
    )


@dataclass(frozen=True)
class ClosureProbeReport:
    n_boundary: int
    n_inflated: int
    n_skipped: int
    boundary_max_distance: float
    inflated_min_distance: float

    @property
    def passed(self) -> bool:
        return self.n_boundary > 0 and self.n_inflated > 0


def closure_boundary_probe(
    source: BlochState,
    axis: Axis = X_AXIS,
    n_boundary: int = 16,
    config: OracleConfig = OracleConfig(),
    margin: float = 0.01,
) -> ClosureProbeReport:
    """Constructively certify the closure shape of a non-free source.

    Samples points on the two analytic boundary pieces (cylinder cap at
    transverse radius a, spheroid arc at minor radius b), asserts each is
    reachable within hit_tol, and asserts points pushed radially outward
    by 2 * margin are not.  Inflated points that leave the Bloch ball or
    fall below the certified clearance 2 * hit_tol are skipped.
    """
    pair = monotone_pair(source, axis)
    a_s, b_s = pair.a, pair.b
    if a_s <= 1e-12:
        raise RangeViolation("source is free; its closure has no transverse boundary")
    f = frame_to_x(axis)
    r = f @ source.vector
    r_par = float(r[0])

    probes = []
    half = max(n_boundary // 2, 1)
    if abs(r_par) <= 1e-12:
        cap_x = np.zeros(1)
    else:
        cap_x = np.linspace(-abs(r_par), abs(r_par), half)
    probes.extend((float(x), a_s) for x in cap_x)
    syz = np.linspace(0.25 * a_s, a_s, max(n_boundary - len(probes), 1))
    coeff = (1.0 - r_par * r_par) / (a_s * a_s)
    for i, z in enumerate(syz):
        x = math.sqrt(max(1.0 - coeff * z * z, 0.0))
        probes.append((x if i % 2 == 0 else -x, float(z)))

    boundary_max = 0.0
    inflated_min = math.inf
    n_inflated = 0
    n_skipped = 0
    for x, z in probes:
        probe_state = state_from_vector(f.T @ np.array([x, 0.0, z]))
        res = search_channel(source, probe_state, axis, config)
        boundary_max = max(boundary_max, res.best_distance)
        if res.best_distance > config.hit_tol:
            raise AssertionError(f"boundary point ({x}, {z}) unexpectedly unreachable")

        norm = math.hypot(x, z)
        if norm == 0.0:
            n_skipped += 1
            continue
        scale = (norm + 2.0 * margin) / norm
        xi, zi = x * scale, z * scale
        if math.hypot(xi, zi) > 1.0 or _clearance_lower_bound(xi, zi, a_s, b_s) <= 2.0 * config.hit_tol:
            n_skipped += 1
            continue
        inflated_state = state_from_vector(f.T @ np.array([xi, 0.0, zi]))
        res_i = search_channel(source, inflated_state, axis, config)
        n_inflated += 1
        inflated_min = min(inflated_min, res_i.best_distance)
        if res_i.feasible:
            raise AssertionError(f"inflated point ({xi}, {zi}) unexpectedly reachable")

    return ClosureProbeReport(
        n_boundary=len(probes),
        n_inflated=n_inflated,
        n_skipped=n_skipped,
        boundary_max_distance=boundary_max,
        inflated_min_distance=inflated_min,
    )
