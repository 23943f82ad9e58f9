"""Equalities, inequalities, inversions, and region geometry for the six monotones.

The six values (Ax, Bx, Ay, By, Az, Bz) of a single qubit state are tied
together by three polynomial equalities and a small generating set of
inequalities.  This module evaluates the residuals and slack margins of
every such constraint, inverts monotone triples back to Bloch data,
classifies pure-state B-tuples, produces plane cross-sections of the
joint-realizability regions, and detects pairwise synergy or trade-off
behaviour on sampled regions.

All evaluators accept numpy arrays as well as scalars wherever no branch
logic is involved, so the large verification suites run vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochState, SamplerConfig, make_state, purity_radius, sample_vectors
from .errors import DegenerateSample, NotPure, NotRealizable, PureInput, RangeViolation
from .monotones import POLE_EPS, MonotoneProfile, monotone_profile, profile_arrays

CONSTRAINT_EPS = 1e-10
MEMBER_EPS = 1e-12

MONOTONE_NAMES = ("Ax", "Bx", "Ay", "By", "Az", "Bz")


def canonical_monotone_name(name: str) -> str:
    key = name.strip().lower()
    table = {n.lower(): n for n in MONOTONE_NAMES}
    if key not in table:
        raise ValueError(f"unknown monotone name {name!r}; expected one of {MONOTONE_NAMES}")
    return table[key]


def _profile_values(profile) -> np.ndarray:
    if isinstance(profile, MonotoneProfile):
        return profile.as_array()
    arr = np.asarray(profile, dtype=float)
    if arr.shape[0] != 6:
        raise ValueError("expected a MonotoneProfile or a 6-component sequence")
    return arr


def equality_residuals(profile) -> np.ndarray:
    """Left-hand sides of the three equalities tying B-values to A-values.

    Each residual is 2(b_n^2 - a_n^2) - b_n^2 (sum of the other two a^2
    minus a_n^2); identically zero on profiles of valid states.
    """
    ax, bx, ay, by, az, bz = _profile_values(profile)
    ax2, bx2, ay2, by2, az2, bz2 = ax * ax, bx * bx, ay * ay, by * by, az * az, bz * bz
    return np.array(
        [
            2.0 * (bx2 - ax2) - bx2 * (-ax2 + ay2 + az2),
            2.0 * (by2 - ay2) - by2 * (ax2 - ay2 + az2),
            2.0 * (bz2 - az2) - bz2 * (ax2 + ay2 - az2),
        ]
    )


def a_inequality_margins(ax, ay, az) -> np.ndarray:
    """Slacks of the four constraints on (Ax, Ay, Az): three triangle-style
    terms (each equals twice a squared Bloch component) and 2 - sum."""
    ax2, ay2, az2 = np.square(ax), np.square(ay), np.square(az)
    return np.array(
        [
            -ax2 + ay2 + az2,
            ax2 - ay2 + az2,
            ax2 + ay2 - az2,
            2.0 - (ax2 + ay2 + az2),
        ]
    )


def b_inequality_margins(bx, by, bz) -> np.ndarray:
    """Slacks of the three polynomial constraints on (Bx, By, Bz), impure branch."""
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    bz = np.asarray(bz, dtype=float)
    if np.any(bx >= 1.0 - POLE_EPS) or np.any(by >= 1.0 - POLE_EPS) or np.any(bz >= 1.0 - POLE_EPS):
        raise PureInput("B-inequalities apply to impure states; use pure_b_tuple at radius 1")
    return _b_margin_values(bx, by, bz)


def _b_margin_values(bx, by, bz) -> np.ndarray:
    bx2, by2, bz2 = np.square(bx), np.square(by), np.square(bz)
    triple = bx2 * by2 * bz2
    return np.array(
        [
            -bx2 + by2 + bz2 - 2.0 * by2 * bz2 + triple,
            bx2 - by2 + bz2 - 2.0 * bz2 * bx2 + triple,
            bx2 + by2 - bz2 - 2.0 * bx2 * by2 + triple,
        ]
    )


def _axbxay_values(ax, bx, ay) -> np.ndarray:
    ax2, bx2, ay2 = np.square(ax), np.square(bx), np.square(ay)
    return np.array(
        [
            bx2 - ax2 + ax2 * bx2 - ay2 * bx2,
            -bx2 + ax2 + ay2 * bx2,
        ]
    )


def axbxay_margins(ax: float, bx: float, ay: float) -> np.ndarray:
    """Slacks of the two constraints on the mixed triple (Ax, Bx, Ay).

    Requires 0 <= ax <= bx <= 1 with bx > 0 and ay in [0, 1]; the bx = 0
    case carries no constraint beyond ay in [0, 1] and is rejected here.
    """
    if not (0.0 <= ax <= 1.0 and 0.0 <= bx <= 1.0 and 0.0 <= ay <= 1.0):
        raise RangeViolation("monotone values must lie in [0, 1]")
    if bx < ax - MEMBER_EPS:
        raise RangeViolation(f"need bx >= ax, got ax={ax}, bx={bx}")
    if bx <= POLE_EPS:
        raise RangeViolation("bx = 0 leaves ay unconstrained; no margins defined")
    return _axbxay_values(ax, bx, ay)


def radii_from_a(ax, ay, az) -> tuple:
    """Squared Bloch components from the A-triple (may be negative if the
    triple is not realizable; check a_inequality_margins first)."""
    ax2, ay2, az2 = np.square(ax), np.square(ay), np.square(az)
    rx2 = 0.5 * (-ax2 + ay2 + az2)
    ry2 = 0.5 * (ax2 - ay2 + az2)
    rz2 = 0.5 * (ax2 + ay2 - az2)
    return rx2, ry2, rz2


def radii_from_b(bx, by, bz) -> tuple:
    """Squared Bloch components from the B-triple (impure branch only)."""
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    bz = np.asarray(bz, dtype=float)
    if np.any(bx >= 1.0 - POLE_EPS) or np.any(by >= 1.0 - POLE_EPS) or np.any(bz >= 1.0 - POLE_EPS):
        raise PureInput("B-inversion requires all values below 1")
    bx2, by2, bz2 = bx * bx, by * by, bz * bz
    triple = bx2 * by2 * bz2
    # Shared factor equals the squared Bloch radius r^2.
    r2 = (bx2 + by2 + bz2 - 2.0 * (bx2 * by2 + bx2 * bz2 + by2 * bz2) + 3.0 * triple) / (
        2.0 - bx2 - by2 - bz2 + triple
    )
    return (r2 - bx2) / (1.0 - bx2), (r2 - by2) / (1.0 - by2), (r2 - bz2) / (1.0 - bz2)


def state_from_a_triple(ax: float, ay: float, az: float, signs=(1, 1, 1)) -> BlochState:
    """Construct one of the (up to eight) states realizing an A-triple.

    Raises NotRealizable when any inequality margin is negative beyond
    1e-12; otherwise the returned state's profile reproduces the inputs
    to within 1e-10.
    """
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    margins = a_inequality_margins(ax, ay, az)
    if float(np.min(margins)) < -1e-12:
        raise NotRealizable(f"A-triple ({ax}, {ay}, {az}) has negative margin {margins.min()}")
    comps = [float(s) * float(np.sqrt(max(r2, 0.0))) for s, r2 in zip(signs, radii_from_a(ax, ay, az))]
    state = make_state(*comps)
    got = monotone_profile(state).a_values()
    if float(np.max(np.abs(got - np.array([ax, ay, az])))) > CONSTRAINT_EPS:
        raise NotRealizable(f"round-trip failed for A-triple ({ax}, {ay}, {az})")
    return state


def pure_b_tuple(state: BlochState) -> tuple[int, int, int]:
    """B-tuple tag of a pure state: 0 on the aligned axis, 1 elsewhere.

    One of (0,1,1), (1,0,1), (1,1,0), (1,1,1); matches the B-part of
    monotone_profile, whose pole branch fires when 1 - r_n^2 <= POLE_EPS.
    """
    if abs(purity_radius(state) - 1.0) > 1e-9:
        raise NotPure(f"state has radius {purity_radius(state)}, expected 1")
    comps = state.vector
    return tuple(0 if 1.0 - c * c <= POLE_EPS else 1 for c in comps)


def fixed_purity_residual_a(profile, r: float) -> float:
    """Residual of: sum of squared A-values equals 2 r^2."""
    ax, _, ay, _, az, _ = _profile_values(profile)
    return float(ax * ax + ay * ay + az * az - 2.0 * r * r)


def fixed_purity_residual_b(profile, r: float) -> float:
    """Residual of: sum of 1/(1 - B_n^2) equals (3 - r^2)/(1 - r^2); r < 1 only."""
    if r >= 1.0 - POLE_EPS:
        raise PureInput("fixed-purity B identity is valid only for r < 1")
    _, bx, _, by, _, bz = _profile_values(profile)
    if max(bx, by, bz) >= 1.0 - POLE_EPS:
        raise PureInput("profile contains a B-value at the pure branch")
    lhs = 1.0 / (1.0 - bx * bx) + 1.0 / (1.0 - by * by) + 1.0 / (1.0 - bz * bz)
    return float(lhs - (3.0 - r * r) / (1.0 - r * r))


def az_squared_given(ax: float, bx: float, ay: float) -> float:
    """Squared Az determined by (Ax, Bx, Ay); equals Ay^2 when Bx = 0."""
    if not (0.0 <= ax <= 1.0 and 0.0 <= bx <= 1.0 and 0.0 <= ay <= 1.0):
        raise RangeViolation("monotone values must lie in [0, 1]")
    if bx <= POLE_EPS:
        if ax > POLE_EPS:
            raise RangeViolation("bx = 0 requires ax = 0")
        return float(ay * ay)
    if bx < ax - MEMBER_EPS:
        raise RangeViolation(f"need bx >= ax, got ax={ax}, bx={bx}")
    margins = _axbxay_values(ax, bx, ay)
    if float(np.min(margins)) < -1e-12:
        raise NotRealizable(f"triple ({ax}, {bx}, {ay}) is not jointly realizable")
    value = 2.0 - 2.0 * ax * ax / (bx * bx) + ax * ax - ay * ay
    return 0.0 if -1e-12 < value < 0.0 else float(value)


@dataclass(frozen=True)
class ConstraintReport:
    """All constraint residuals and margins evaluated on one profile.

    b_margins is None on the pure branch (any B at 1), axbxay_margins is
    None when Bx vanishes (that case carries no extra constraint).
    """

    equality_residuals: np.ndarray
    a_margins: np.ndarray
    b_margins: np.ndarray | None
    axbxay_margins: np.ndarray | None

    def ok(self, tol: float = CONSTRAINT_EPS) -> bool:
        if float(np.max(np.abs(self.equality_residuals))) > tol:
            return False
        if float(np.min(self.a_margins)) < -tol:
            return False
        if self.b_margins is not None and float(np.min(self.b_margins)) < -tol:
            return False
        if self.axbxay_margins is not None and float(np.min(self.axbxay_margins)) < -tol:
            return False
        return True


def constraint_report(profile) -> ConstraintReport:
    ax, bx, ay, by, az, bz = _profile_values(profile)
    b_margins = None
    if max(bx, by, bz) < 1.0 - POLE_EPS:
        b_margins = _b_margin_values(bx, by, bz)
    mixed = _axbxay_values(ax, bx, ay) if bx > POLE_EPS else None
    return ConstraintReport(
        equality_residuals=equality_residuals(profile),
        a_margins=a_inequality_margins(ax, ay, az),
        b_margins=b_margins,
        axbxay_margins=mixed,
    )


@dataclass(frozen=True)
class CrossSectionSpec:
    """Request for a plane section: fix one monotone, scan the two partners."""

    fixed_monotone: str
    fixed_value: float
    grid_n: int

    def __post_init__(self):
        object.__setattr__(self, "fixed_monotone", canonical_monotone_name(self.fixed_monotone))
        if not 0.0 <= self.fixed_value <= 1.0:
            raise ValueError("fixed_value must lie in [0, 1]")
        if self.grid_n < 2:
            raise ValueError("grid_n must be at least 2")


@dataclass(frozen=True)
class CrossSection:
    """Grid section of a realizability region plus its analytic boundaries."""

    kind: str
    fixed: dict
    coord_names: tuple[str, str]
    grid1: np.ndarray
    grid2: np.ndarray
    member: np.ndarray
    boundaries: dict[str, np.ndarray]
    extras: dict = field(default_factory=dict)

    def member_points(self) -> np.ndarray:
        ii, jj = np.nonzero(self.member)
        return np.column_stack([self.grid1[ii], self.grid2[jj]])


def _a_section(alpha: float, grid_n: int) -> CrossSection:
    grid = np.linspace(0.0, 1.0, grid_n)
    ay, az = np.meshgrid(grid, grid, indexing="ij")
    margins = np.stack(
        [
            -alpha**2 + ay**2 + az**2,
            alpha**2 - ay**2 + az**2,
            alpha**2 + ay**2 - az**2,
            2.0 - (alpha**2 + ay**2 + az**2),
        ]
    )
    member = np.all(margins >= -MEMBER_EPS, axis=0)

    t = np.linspace(0.0, 1.0, 256)
    a2 = alpha * alpha
    quarter = np.column_stack([alpha * np.cos(t * np.pi / 2), alpha * np.sin(t * np.pi / 2)])
    ay_br = np.sqrt(a2 + t * (1.0 - a2))
    ay_tl = t * np.sqrt(max(1.0 - a2, 0.0))
    rho2 = 2.0 - a2
    ay_tr = np.sqrt(np.maximum(rho2 - 1.0, 0.0) + t * (min(1.0, rho2) - max(rho2 - 1.0, 0.0)))
    boundaries = {
        "bottom-left": quarter,
        "bottom-right": np.column_stack([ay_br, np.sqrt(np.maximum(ay_br**2 - a2, 0.0))]),
        "top-left": np.column_stack([ay_tl, np.sqrt(ay_tl**2 + a2)]),
        "top-right": np.column_stack([ay_tr, np.sqrt(np.maximum(rho2 - ay_tr**2, 0.0))]),
    }
    return CrossSection(
        kind="fixed-Ax",
        fixed={"Ax": alpha},
        coord_names=("Ay", "Az"),
        grid1=grid,
        grid2=grid,
        member=member,
        boundaries=boundaries,
        extras={
            "abs_diff_bound": a2,          # |Ay^2 - Az^2| <= alpha^2
            "sum_lower": a2,               # alpha^2 <= Ay^2 + Az^2
            "sum_upper": 2.0 - a2,         # Ay^2 + Az^2 <= 2 - alpha^2
        },
    )


def _b_section(beta: float, grid_n: int) -> CrossSection:
    grid = np.linspace(0.0, 1.0, grid_n)
    by, bz = np.meshgrid(grid, grid, indexing="ij")
    margins = _b_margin_values(np.full_like(by, beta), by, bz)
    impure = (by < 1.0 - POLE_EPS) & (bz < 1.0 - POLE_EPS)
    member = np.all(margins >= -MEMBER_EPS, axis=0) & impure

    def _curve(num, den):
        # den vanishes only in the beta -> 1 degeneracy, where the curve
        # limit is the corner value 1.
        safe = den > 1e-15
        ratio = np.where(safe, num / np.where(safe, den, 1.0), 1.0)
        return np.sqrt(np.clip(ratio, 0.0, 1.0))

    b2 = beta * beta
    t = np.linspace(0.0, 1.0, 256)
    by_bl = t * beta
    by_br = beta + t * (1.0 - beta)
    bz_tl = beta + t * (1.0 - beta)
    boundaries = {
        "bottom-left": np.column_stack(
            [by_bl, _curve(np.maximum(b2 - by_bl**2, 0.0), 1.0 - by_bl**2 * (2.0 - b2))]
        ),
        "bottom-right": np.column_stack(
            [by_br, _curve(np.maximum(by_br**2 - b2, 0.0), 1.0 - 2.0 * b2 + b2 * by_br**2)]
        ),
        "top-left": np.column_stack(
            [_curve(np.maximum(bz_tl**2 - b2, 0.0), 1.0 - 2.0 * b2 + b2 * bz_tl**2), bz_tl]
        ),
    }
    return CrossSection(
        kind="fixed-Bx",
        fixed={"Bx": beta},
        coord_names=("By", "Bz"),
        grid1=grid,
        grid2=grid,
        member=member,
        boundaries=boundaries,
    )


def cross_section(spec: CrossSectionSpec) -> CrossSection:
    """Section of the joint-realizability region at fixed Ax or fixed Bx."""
    if spec.fixed_monotone == "Ax":
        return _a_section(spec.fixed_value, spec.grid_n)
    if spec.fixed_monotone == "Bx":
        return _b_section(spec.fixed_value, spec.grid_n)
    raise ValueError(
        f"cross sections are implemented for fixed Ax or Bx, got {spec.fixed_monotone}"
    )


@dataclass(frozen=True)
class RegionSample:
    """Monte-Carlo witnesses of a joint-realizability region."""

    names: tuple[str, ...]
    states: np.ndarray
    values: np.ndarray
    ok: np.ndarray
    worst: dict

    def __len__(self) -> int:
        return len(self.values)


def vector_constraints(rx: np.ndarray, ry: np.ndarray, rz: np.ndarray) -> dict:
    """Vectorized constraint evaluation used by sampling and the suites."""
    prof = profile_arrays(rx, ry, rz)
    ax, bx, ay, by, az, bz = (prof[k] for k in ("ax", "bx", "ay", "by", "az", "bz"))
    residuals = np.stack(
        [
            2.0 * (bx**2 - ax**2) - bx**2 * (-(ax**2) + ay**2 + az**2),
            2.0 * (by**2 - ay**2) - by**2 * (ax**2 - ay**2 + az**2),
            2.0 * (bz**2 - az**2) - bz**2 * (ax**2 + ay**2 - az**2),
        ]
    )
    a_margins = a_inequality_margins(ax, ay, az)
    impure = np.maximum(np.maximum(bx, by), bz) < 1.0 - POLE_EPS
    b_margins = _b_margin_values(bx, by, bz)
    mixed_mask = bx > POLE_EPS
    mixed = _axbxay_values(ax, bx, ay)
    ok = (
        (np.max(np.abs(residuals), axis=0) <= CONSTRAINT_EPS)
        & (np.min(a_margins, axis=0) >= -CONSTRAINT_EPS)
        & (~impure | (np.min(b_margins, axis=0) >= -CONSTRAINT_EPS))
        & (~mixed_mask | (np.min(mixed, axis=0) >= -CONSTRAINT_EPS))
    )
    return {
        "profiles": prof,
        "equality_residuals": residuals,
        "a_margins": a_margins,
        "b_margins": b_margins,
        "impure": impure,
        "axbxay_margins": mixed,
        "axbxay_mask": mixed_mask,
        "ok": ok,
    }


def sample_joint_region(subset, n: int, config: SamplerConfig) -> RegionSample:
    """Sample n states and project their profiles onto the named monotones."""
    names = tuple(canonical_monotone_name(s) for s in subset)
    if not names:
        raise ValueError("subset must name at least one monotone")
    vectors = sample_vectors(config, n)
    checks = vector_constraints(vectors[:, 0], vectors[:, 1], vectors[:, 2])
    prof = checks["profiles"]
    values = np.column_stack([prof[name.lower()] for name in names])
    b_masked = checks["b_margins"][:, checks["impure"]]
    mixed_masked = checks["axbxay_margins"][:, checks["axbxay_mask"]]
    worst = {
        "equality_residual": float(np.max(np.abs(checks["equality_residuals"]))),
        "a_margin": float(np.min(checks["a_margins"])),
        "b_margin": float(np.min(b_masked)) if b_masked.size else 0.0,
        "axbxay_margin": float(np.min(mixed_masked)) if mixed_masked.size else 0.0,
    }
    return RegionSample(names=names, states=vectors, values=values, ok=checks["ok"], worst=worst)


def detect_pairwise_relation(pairs, tol: float = 1e-12) -> str:
    """Classify a sampled pair of monotones as synergy, tradeoff, or neither.

    Synergy requires order agreement for every ordered sample pair,
    trade-off requires order reversal; both are checked exhaustively
    (block-wise to bound memory).  Raises DegenerateSample when either
    coordinate is constant across the sample.
    """
    data = np.asarray(pairs, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
        raise ValueError("pairs must be an (n, 2) array with n >= 2")
    a, b = data[:, 0], data[:, 1]
    if float(np.ptp(a)) <= tol or float(np.ptp(b)) <= tol:
        raise DegenerateSample("both coordinates must be nonconstant on the sample")

    synergy = True
    tradeoff = True
    block = 256
    for start in range(0, len(a), block):
        da = a[start : start + block, None] - a[None, :]
        db = b[start : start + block, None] - b[None, :]
        a_ge = da >= -tol
        if synergy and not np.array_equal(a_ge, db >= -tol):
            synergy = False
        if tradeoff and not np.array_equal(a_ge, db <= tol):
            tradeoff = False
        if not synergy and not tradeoff:
            return "neither"
    if synergy:
        return "synergy"
    if tradeoff:
        return "tradeoff"
    return "neither"
