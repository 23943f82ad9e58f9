"""Resource ordering under axis-covariant channels.

Conversion from rho to sigma is possible exactly when both monotones
weakly decrease, so all order decisions here reduce to two comparisons
with an explicit equality tolerance.  The set of states reachable from a
given state (its downward closure) is the intersection of a cylinder of
radius a and a prolate spheroid of minor radius b about the axis, which
this module exposes both as a membership predicate and as a plottable
plane section.  It also builds the order-theoretic witnesses showing the
order has infinite width and a non-transitive incomparability relation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bloch import Axis, BlochState, X_AXIS, make_state
from .errors import NotRealizable
from .monotones import POLE_EPS, monotone_pair

ORDER_EPS = 1e-12


class Relation(enum.Enum):
    ABOVE = "above"
    BELOW = "below"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ConversionVerdict:
    """Decision plus the monotone margins (source minus target)."""

    convertible: bool
    reason: str
    delta_a: float
    delta_b: float

    @property
    def decision(self) -> str:
        return "convertible" if self.convertible else "not-convertible"


def can_convert(source: BlochState, target: BlochState, axis: Axis = X_AXIS) -> ConversionVerdict:
    """Decide convertibility: both monotones must weakly decrease.

    A target on an axis pole has both monotones equal to zero (the pole
    branch of b), so it is reachable from every state; no separate clause
    is needed.
    """
    ps = monotone_pair(source, axis)
    pt = monotone_pair(target, axis)
    delta_a = ps.a - pt.a
    delta_b = ps.b - pt.b
    ok = delta_a >= -ORDER_EPS and delta_b >= -ORDER_EPS
    if ok:
        reason = "target-free" if (pt.a <= ORDER_EPS and pt.b <= ORDER_EPS) else "both-monotones-weakly-decrease"
    else:
        reason = "A-violated" if delta_a < -ORDER_EPS else "B-violated"
    return ConversionVerdict(ok, reason, delta_a, delta_b)


def is_equivalent(s1: BlochState, s2: BlochState, axis: Axis = X_AXIS) -> bool:
    p1 = monotone_pair(s1, axis)
    p2 = monotone_pair(s2, axis)
    return abs(p1.a - p2.a) <= ORDER_EPS and abs(p1.b - p2.b) <= ORDER_EPS


def compare(s1: BlochState, s2: BlochState, axis: Axis = X_AXIS) -> Relation:
    forward = can_convert(s1, s2, axis).convertible
    backward = can_convert(s2, s1, axis).convertible
    if forward and backward:
        return Relation.EQUIVALENT
    if forward:
        return Relation.ABOVE
    if backward:
        return Relation.BELOW
    return Relation.INCOMPARABLE


def in_downward_closure(target: BlochState, source: BlochState, axis: Axis = X_AXIS) -> bool:
    """Closed-form membership in the cylinder-and-spheroid closure of the source.

    Equivalent to can_convert(source, target, axis); kept as a separate
    geometric evaluation so the two can be cross-checked.
    """
    n = axis.vector
    r = source.vector
    s = target.vector
    rn2 = float(np.dot(r, n)) ** 2
    a2 = max(float(np.dot(r, r)) - rn2, 0.0)
    sn2 = float(np.dot(s, n)) ** 2
    s_perp2 = max(float(np.dot(s, s)) - sn2, 0.0)

    if a2 <= ORDER_EPS**2:
        # Free source: the closure is the axis segment.
        return s_perp2 <= ORDER_EPS**2
    if math.sqrt(s_perp2) > math.sqrt(a2) + ORDER_EPS:
        return False
    if 1.0 - sn2 <= POLE_EPS:
        return True  # pole target, reachable from everything
    return sn2 + (1.0 - rn2) / a2 * s_perp2 <= 1.0 + ORDER_EPS


def downward_closure_section(source: BlochState, axis: Axis = X_AXIS, grid_n: int = 101):
    """Plane section of the downward closure through the axis.

    Coordinates are (component along the axis, signed transverse component).
    Returns a CrossSection whose membership grid is the rectangle-and-ellipse
    intersection with half-height a and ellipse minor radius b, plus the two
    analytic boundary curves.
    """
    from .relations import CrossSection

    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    pair = monotone_pair(source, axis)
    a, b = pair.a, pair.b
    coords = np.linspace(-1.0, 1.0, grid_n)
    s_par, s_perp = np.meshgrid(coords, coords, indexing="ij")

    if a <= ORDER_EPS:
        member = (np.abs(s_perp) <= ORDER_EPS) & (np.abs(s_par) <= 1.0)
        boundaries = {"segment": np.column_stack([np.linspace(-1, 1, 64), np.zeros(64)])}
    else:
        inside_ball = s_par**2 + s_perp**2 <= 1.0 + ORDER_EPS
        in_rect = np.abs(s_perp) <= a + ORDER_EPS
        in_ellipse = s_par**2 + (s_perp / b) ** 2 <= 1.0 + ORDER_EPS
        member = inside_ball & in_rect & in_ellipse
        x_cap = math.sqrt(max(1.0 - (a / b) ** 2, 0.0))
        cap_x = np.linspace(-x_cap, x_cap, 64)
        phi = np.linspace(0.0, 2.0 * math.pi, 256, endpoint=False)
        ell = np.column_stack([np.cos(phi), b * np.sin(phi)])
        ell = ell[np.abs(ell[:, 1]) <= a + 1e-15]
        boundaries = {
            "rectangle-top": np.column_stack([cap_x, np.full_like(cap_x, a)]),
            "rectangle-bottom": np.column_stack([cap_x, np.full_like(cap_x, -a)]),
            "ellipse": ell,
        }

    return CrossSection(
        kind="downward-closure",
        fixed={"a": a, "b": b},
        coord_names=("s_axis", "s_perp"),
        grid1=coords,
        grid2=coords,
        member=member,
        boundaries=boundaries,
        extras={"source": source.as_tuple()},
    )


def state_with_monotones(a: float, b: float) -> BlochState:
    """A state realizing the monotone pair (a, b) for the x axis.

    Inverts the defining formulas: r_perp = a and 1 - rx^2 = a^2/b^2.
    Raises NotRealizable outside 0 <= a <= b <= 1 or when a = 0 < b
    (a vanishing cylindrical radius forces the spheroidal one to vanish).
    """
    if not (0.0 <= a <= b <= 1.0):
        raise NotRealizable(f"need 0 <= a <= b <= 1, got ({a}, {b})")
    if b <= POLE_EPS:
        return make_state(0.0, 0.0, 0.0)
    if a <= POLE_EPS:
        raise NotRealizable("a = 0 forces b = 0; the pair (0, b>0) is not attained")
    rx = math.sqrt(max(1.0 - (a / b) ** 2, 0.0))
    state = make_state(rx, a, 0.0)
    got = monotone_pair(state, X_AXIS)
    if abs(got.a - a) > 1e-9 or abs(got.b - b) > 1e-9:
        raise NotRealizable(f"construction for ({a}, {b}) produced ({got.a}, {got.b})")
    return state


@dataclass(frozen=True)
class OrderWitness:
    """Constructive witnesses for infinite width and non-weakness.

    triple = (r, s, t) with (r, s) incomparable, (s, t) incomparable, and
    r strictly above t; antichain is pairwise incomparable.
    """

    triple: tuple[BlochState, BlochState, BlochState]
    antichain: tuple[BlochState, ...]


def nonweakness_witness(
    a_lo: float, a_hi: float, b_lo: float, b_hi: float, antichain_size: int = 16
) -> OrderWitness:
    """Build verified witnesses from a realizable monotone rectangle.

    Every pair in [a_lo, a_hi] x [b_lo, b_hi] is realizable when
    0 < a_lo < a_hi <= b_lo < b_hi <= 1.  The triple takes r = (a_hi, b_lo),
    s = (a_lo, b_hi), t = (mid, b_lo); the antichain walks a monotone curve
    (a increasing, b decreasing) across the rectangle.  All order relations
    are verified before returning.
    """
    if not (0.0 <= a_lo < a_hi <= b_lo < b_hi <= 1.0):
        raise NotRealizable(
            f"rectangle bounds must satisfy 0 <= a_lo < a_hi <= b_lo < b_hi <= 1, "
            f"got ({a_lo}, {a_hi}, {b_lo}, {b_hi})"
        )
    r = state_with_monotones(a_hi, b_lo)
    s = state_with_monotones(a_lo, b_hi)
    t = state_with_monotones(0.5 * (a_lo + a_hi), b_lo)
    if compare(r, s) is not Relation.INCOMPARABLE:
        raise NotRealizable("witness check failed: (r, s) not incomparable")
    if compare(s, t) is not Relation.INCOMPARABLE:
        raise NotRealizable("witness check failed: (s, t) not incomparable")
    if compare(r, t) is not Relation.ABOVE:
        raise NotRealizable("witness check failed: r not strictly above t")

    fractions = np.linspace(0.0, 1.0, antichain_size)
    chain_states = tuple(
        state_with_monotones(a_lo + f * (a_hi - a_lo), b_hi - f * (b_hi - b_lo))
        for f in fractions
    )
    for i in range(len(chain_states)):
        for j in range(i + 1, len(chain_states)):
            if compare(chain_states[i], chain_states[j]) is not Relation.INCOMPARABLE:
                raise NotRealizable(f"antichain check failed at pair ({i}, {j})")
    return OrderWitness((r, s, t), chain_states)
