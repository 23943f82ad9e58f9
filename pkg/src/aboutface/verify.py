"""Named verification suites.

Each suite re-derives one block of the toolkit's guarantees on freshly
sampled data and reports per-check pass/fail results with the worst
residual or margin seen.  The CLI `verify` command and the acceptance
tests are thin wrappers around these functions; sizes default to the
desk-scale acceptance settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import (
    Axis,
    SamplerConfig,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    make_state,
    sample_vectors,
    state_from_vector,
)
from .channels import (
    covariant_scaling_fit,
    compose,
    decompose_covariant,
    extremal_covariant,
    ExtremalCovariantParams,
    is_covariant,
    min_choi_eigenvalue,
    random_covariant_cptp,
    rotation_map,
)
from .errors import NotRealizable
from .monotones import (
    POLE_EPS,
    RefbitChain,
    monotone_pair,
    monotone_profile,
    profile_arrays,
)
from .oracle import OracleConfig, oracle_agreement
from .ordering import ORDER_EPS, Relation, compare, nonweakness_witness
from .relations import (
    CONSTRAINT_EPS,
    CrossSectionSpec,
    cross_section,
    detect_pairwise_relation,
    pure_b_tuple,
    state_from_a_triple,
    vector_constraints,
)

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float | None = None
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            worst = "" if c.worst is None else f" worst={c.worst:.3e}"
            detail = f" ({c.detail})" if c.detail else ""
            out.append(f"[{status}] {self.suite}: {c.name}{worst}{detail}")
        return out


def _mixed_vectors(n_ball: int, n_sphere: int, seed: int) -> np.ndarray:
    ball = sample_vectors(SamplerConfig("uniform-ball", seed=seed), n_ball)
    sphere = sample_vectors(SamplerConfig("uniform-sphere", seed=seed + 1), n_sphere)
    return np.vstack([ball, sphere])


def suite_equalities(n_ball: int = 100_000, n_sphere: int = 1_000, seed: int = 1) -> SuiteReport:
    """The three equality constraints vanish on random and pure states."""
    v = _mixed_vectors(n_ball, n_sphere, seed)
    checks = vector_constraints(v[:, 0], v[:, 1], v[:, 2])
    worst = float(np.max(np.abs(checks["equality_residuals"])))
    return SuiteReport(
        "equalities",
        (
            CheckResult(
                f"max |residual| over {len(v)} states <= {CONSTRAINT_EPS:g}",
                worst <= CONSTRAINT_EPS,
                worst,
            ),
        ),
    )


def suite_inequalities(n_ball: int = 100_000, n_sphere: int = 1_000, seed: int = 1) -> SuiteReport:
    """All inequality margins are nonnegative within tolerance."""
    v = _mixed_vectors(n_ball, n_sphere, seed)
    checks = vector_constraints(v[:, 0], v[:, 1], v[:, 2])
    worst_a = float(np.min(checks["a_margins"]))
    b_impure = checks["b_margins"][:, checks["impure"]]
    worst_b = float(np.min(b_impure)) if b_impure.size else 0.0
    mixed = checks["axbxay_margins"][:, checks["axbxay_mask"]]
    worst_m = float(np.min(mixed)) if mixed.size else 0.0
    return SuiteReport(
        "inequalities",
        (
            CheckResult("A-triple margins (4)", worst_a >= -CONSTRAINT_EPS, worst_a),
            CheckResult("B-triple margins on impure states (3)", worst_b >= -CONSTRAINT_EPS, worst_b),
            CheckResult("(Ax, Bx, Ay) margins (2)", worst_m >= -CONSTRAINT_EPS, worst_m),
        ),
    )


def suite_realizability(n_triples: int = 10_000, seed: int = 2) -> SuiteReport:
    """Every margin-feasible A-triple reconstructs to a state and round-trips."""
    rng = np.random.default_rng(seed)
    triples = rng.uniform(0.0, 1.0, size=(n_triples, 3))
    ax, ay, az = triples[:, 0], triples[:, 1], triples[:, 2]
    margins = np.stack(
        [
            -(ax**2) + ay**2 + az**2,
            ax**2 - ay**2 + az**2,
            ax**2 + ay**2 - az**2,
            2.0 - (ax**2 + ay**2 + az**2),
        ]
    )
    feasible = np.min(margins, axis=0) >= 0.0
    worst_round_trip = 0.0
    failures = 0
    for trip in triples[feasible]:
        try:
            state = state_from_a_triple(trip[0], trip[1], trip[2])
        except NotRealizable:
            failures += 1
            continue
        err = float(np.max(np.abs(monotone_profile(state).a_values() - trip)))
        worst_round_trip = max(worst_round_trip, err)
    rejected_strict = bool(np.all(np.min(margins, axis=0)[~feasible] < 0.0))
    n_feasible = int(feasible.sum())
    return SuiteReport(
        "realizability",
        (
            CheckResult(
                f"{n_feasible} feasible triples reconstruct (round-trip <= {CONSTRAINT_EPS:g})",
                failures == 0 and worst_round_trip <= CONSTRAINT_EPS,
                worst_round_trip,
            ),
            CheckResult(
                f"{n_triples - n_feasible} rejected triples have a strictly negative margin",
                rejected_strict,
            ),
        ),
    )


def suite_pure_tags(n: int = 1_000, seed: int = 3) -> SuiteReport:
    """Pure states yield exactly the four B-tuple tags; poles give zero-tags."""
    allowed = {(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)}
    v = sample_vectors(SamplerConfig("uniform-sphere", seed=seed), n)
    bad_tags = 0
    worst_gap = 0.0
    for row in v:
        state = state_from_vector(row)
        tag = pure_b_tuple(state)
        if tag not in allowed:
            bad_tags += 1
            continue
        prof = monotone_profile(state)
        worst_gap = max(worst_gap, float(np.max(np.abs(prof.b_values() - np.array(tag)))))

    pole_ok = True
    near = math.sqrt(1.0 - 1e-13)  # 1 - r_n^2 = 1e-13, inside the pole branch
    for k, axis_tag in ((0, (0, 1, 1)), (1, (1, 0, 1)), (2, (1, 1, 0))):
        for sign in (1.0, -1.0):
            exact = [0.0, 0.0, 0.0]
            exact[k] = sign
            pole_ok &= pure_b_tuple(make_state(*exact)) == axis_tag
            resid = [0.0, 0.0, 0.0]
            resid[k] = sign * near
            resid[(k + 1) % 3] = math.sqrt(1.0 - near * near)
            pole_ok &= pure_b_tuple(make_state(*resid)) == axis_tag
    return SuiteReport(
        "pure-tags",
        (
            CheckResult(f"{n} sphere samples produce only the four tags", bad_tags == 0),
            CheckResult("tags match profile B-values", worst_gap <= 1e-6, worst_gap),
            CheckResult("axis poles (within the pole branch) give matching zero-tags", pole_ok),
        ),
    )


def suite_fixed_purity(n_per_radius: int = 20_000, seed: int = 4) -> SuiteReport:
    """Fixed-purity equalities for the A- and B-monotones."""
    checks = []
    for r in (0.0, 0.25, 0.5, 0.75, 0.99):
        v = sample_vectors(SamplerConfig("fixed-radius", radius=r, seed=seed), n_per_radius)
        prof = profile_arrays(v[:, 0], v[:, 1], v[:, 2])
        res_a = prof["ax"] ** 2 + prof["ay"] ** 2 + prof["az"] ** 2 - 2.0 * r * r
        lhs = sum(1.0 / (1.0 - prof[k] ** 2) for k in ("bx", "by", "bz"))
        res_b = lhs - (3.0 - r * r) / (1.0 - r * r)
        worst = max(float(np.max(np.abs(res_a))), float(np.max(np.abs(res_b))))
        checks.append(
            CheckResult(f"r={r}: A-sum and B-sum identities", worst <= CONSTRAINT_EPS, worst)
        )
    v = sample_vectors(SamplerConfig("uniform-sphere", seed=seed + 5), n_per_radius // 10)
    prof = profile_arrays(v[:, 0], v[:, 1], v[:, 2])
    res = prof["ax"] ** 2 + prof["ay"] ** 2 + prof["az"] ** 2 - 2.0
    worst = float(np.max(np.abs(res)))
    checks.append(CheckResult("r=1: A-sum equals 2", worst <= 1e-12, worst))
    return SuiteReport("fixed-purity", tuple(checks))


def _batched_trace_distance(v: np.ndarray, axis: Axis) -> np.ndarray:
    n = axis.vector
    rho = 0.5 * (
        np.eye(2, dtype=complex)[None, :, :]
        + sum(v[:, k, None, None] * _SIGMA[k] for k in range(3))
    )
    sig = sum(n[k] * _SIGMA[k] for k in range(3))
    diff = rho - np.einsum("ij,njk,kl->nil", sig, rho, sig)
    eigs = np.linalg.eigvalsh(diff)
    return 0.5 * np.sum(np.abs(eigs), axis=1)


def suite_operational(
    n_trace: int = 10_000,
    n_refbit: int = 150,
    step: float = 1e-3,
    seed: int = 5,
) -> SuiteReport:
    """Operator-level trace distance equals a; refbit cost/yield match b/a."""
    from .monotones import refbit_cost, refbit_yield

    v = sample_vectors(SamplerConfig("uniform-ball", seed=seed), n_trace)
    prof = profile_arrays(v[:, 0], v[:, 1], v[:, 2])
    worst_trace = 0.0
    for name, axis in _AXES.items():
        td = _batched_trace_distance(v, axis)
        worst_trace = max(worst_trace, float(np.max(np.abs(td - prof["a" + name]))))

    worst_cost = 0.0
    worst_yield = 0.0
    gap_ok = True
    extras = [
        np.array([0.5, 0.0, 0.0]),   # free
        np.array([0.0, 1.0, 0.0]),   # pure refbit for the x chain
        np.array([0.6, 0.4, 0.0]),
    ]
    pool = np.vstack([sample_vectors(SamplerConfig("uniform-ball", seed=seed + 2), n_refbit)] + [extras])
    for name, axis in _AXES.items():
        chain = RefbitChain.uniform(axis, step=step)
        for row in pool:
            state = state_from_vector(row)
            pair = monotone_pair(state, axis)
            cost = refbit_cost(state, chain)
            yld = refbit_yield(state, chain)
            worst_cost = max(worst_cost, abs(cost - pair.b))
            worst_yield = max(worst_yield, abs(yld - pair.a))
            gap_ok &= yld <= cost + ORDER_EPS
    return SuiteReport(
        "operational",
        (
            CheckResult(
                f"trace-distance identity on {n_trace} states x 3 axes",
                worst_trace <= 1e-12,
                worst_trace,
            ),
            CheckResult("refbit cost tracks b within 2 grid steps", worst_cost <= 2.0 * step, worst_cost),
            CheckResult("refbit yield tracks a within 2 grid steps", worst_yield <= 2.0 * step, worst_yield),
            CheckResult("yield never exceeds cost", gap_ok),
        ),
    )


def suite_sections(grid_n: int = 201, n_samples: int = 300, seed: int = 6) -> SuiteReport:
    """Cross-section endpoint shapes and the synergy/trade-off transitions."""
    resolution = 1.0 / (grid_n - 1)
    rng = np.random.default_rng(seed)

    sec0 = cross_section(CrossSectionSpec("Ax", 0.0, grid_n))
    pts0 = sec0.member_points()
    dev0 = float(np.max(np.abs(pts0[:, 0] - pts0[:, 1]))) if len(pts0) else math.inf
    sec1 = cross_section(CrossSectionSpec("Ax", 1.0, grid_n))
    pts1 = sec1.member_points()
    dev1 = float(np.max(np.abs(pts1[:, 0] ** 2 + pts1[:, 1] ** 2 - 1.0))) if len(pts1) else math.inf
    secb = cross_section(CrossSectionSpec("Bx", 0.0, grid_n))
    ptsb = secb.member_points()
    devb = float(np.max(np.abs(ptsb[:, 0] - ptsb[:, 1]))) if len(ptsb) else math.inf

    x = rng.uniform(-1.0, 1.0, n_samples)
    sync_pairs = np.column_stack([np.abs(x), np.abs(x)])
    phi = rng.uniform(0.0, 2.0 * math.pi, n_samples)
    trade_pairs = np.column_stack([np.abs(np.sin(phi)), np.abs(np.cos(phi))])
    rx = rng.uniform(-math.sqrt(0.75), math.sqrt(0.75), n_samples)
    psi = rng.uniform(0.0, 2.0 * math.pi, n_samples)
    ry, rz = 0.5 * np.cos(psi), 0.5 * np.sin(psi)
    middle_pairs = np.column_stack(
        [np.sqrt(rx**2 + rz**2), np.sqrt(rx**2 + ry**2)]
    )
    rel0 = detect_pairwise_relation(sync_pairs)
    rel1 = detect_pairwise_relation(trade_pairs)
    rel_mid = detect_pairwise_relation(middle_pairs)

    return SuiteReport(
        "sections",
        (
            CheckResult("Ax=0 section collapses to Ay=Az", dev0 <= resolution and len(pts0) > 0, dev0),
            CheckResult(
                "Ax=1 section collapses to Ay^2+Az^2=1", dev1 <= resolution and len(pts1) > 0, dev1
            ),
            CheckResult("Bx=0 section collapses to By=Bz", devb <= resolution and len(ptsb) > 0, devb),
            CheckResult(
                "pairwise relations: synergy / tradeoff / neither",
                (rel0, rel1, rel_mid) == ("synergy", "tradeoff", "neither"),
                detail=f"got ({rel0}, {rel1}, {rel_mid})",
            ),
        ),
    )


def suite_channels(grid_n: int = 64, n_maps: int = 200, seed: int = 7) -> SuiteReport:
    """Certification of the covariant channel engine."""
    worst_eig = 0.0
    cov_ok = True
    us = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    vs = np.linspace(0.0, math.pi, grid_n, endpoint=False)
    for u in us:
        for v in vs:
            ch = extremal_covariant(ExtremalCovariantParams(float(u), float(v)))
            worst_eig = min(worst_eig, min_choi_eigenvalue(ch))
            cov_ok &= is_covariant(ch, 1e-9)

    rng = np.random.default_rng(seed)
    worst_recon = 0.0
    worst_d_eig = 0.0
    worst_fit = 0.0
    for _ in range(n_maps):
        channel = random_covariant_cptp(rng)
        theta1, d_map, theta2 = decompose_covariant(channel, 1e-9)
        rebuilt = compose(rotation_map(X_AXIS, theta1), compose(d_map, rotation_map(X_AXIS, theta2)))
        worst_recon = max(
            worst_recon, float(np.max(np.abs(rebuilt.matrix4 - channel.matrix4)))
        )
        worst_d_eig = min(worst_d_eig, min_choi_eigenvalue(d_map))
        residual, _ = covariant_scaling_fit(d_map, grid_n=grid_n, refine_steps=3)
        worst_fit = max(worst_fit, residual)
    return SuiteReport(
        "channels",
        (
            CheckResult(
                f"{grid_n}x{grid_n} extremal channels are CPTP", worst_eig >= -1e-9, worst_eig
            ),
            CheckResult("extremal channels are covariant", cov_ok),
            CheckResult(
                f"{n_maps} random covariant maps decompose (error <= 1e-9)",
                worst_recon <= 1e-9,
                worst_recon,
            ),
            CheckResult("decomposition middle factors are CPTP", worst_d_eig >= -1e-9, worst_d_eig),
            CheckResult("convex-hull fit residual <= 1e-6", worst_fit <= 1e-6, worst_fit),
        ),
    )


def suite_witness() -> SuiteReport:
    """Order-theoretic witnesses: the verified triple and a 16-point antichain."""
    witness = nonweakness_witness(0.1, 0.2, 0.5, 0.6)
    r, s, t = witness.triple
    ok = (
        compare(r, s) is Relation.INCOMPARABLE
        and compare(s, t) is Relation.INCOMPARABLE
        and compare(r, t) is Relation.ABOVE
        and len(witness.antichain) == 16
    )
    pairwise = all(
        compare(witness.antichain[i], witness.antichain[j]) is Relation.INCOMPARABLE
        for i in range(len(witness.antichain))
        for j in range(i + 1, len(witness.antichain))
    )
    return SuiteReport(
        "witness",
        (
            CheckResult("triple: (r,s), (s,t) incomparable and r above t", ok),
            CheckResult("16-point antichain pairwise incomparable", pairwise),
        ),
    )


def suite_oracle(
    n_pairs: int = 1_000,
    margin: float = 0.02,
    config: OracleConfig | None = None,
    axes: tuple[str, ...] = ("x", "y", "z"),
) -> SuiteReport:
    """Monotone criterion vs. brute-force channel search, per axis."""
    config = config or OracleConfig()
    checks = []
    for name in axes:
        report = oracle_agreement(n_pairs, config, margin, _AXES[name])
        detail = (
            f"tested={report.n_tested} band={report.n_band_discarded} "
            f"geom={report.n_geometry_discarded} "
            f"worst_feasible={report.worst_convertible_distance:.2e} "
            f"min_infeasible={report.min_inconvertible_distance:.2e}"
        )
        checks.append(
            CheckResult(f"axis {name}: 0 disagreements", report.passed, detail=detail)
        )
    return SuiteReport("oracle", tuple(checks))


def suite_order(n_pairs: int = 100_000, seed: int = 8) -> SuiteReport:
    """Closure/criterion agreement, preorder laws, unique top, total-order slices."""
    src = sample_vectors(SamplerConfig("uniform-ball", seed=seed), n_pairs)
    tgt = sample_vectors(SamplerConfig("uniform-ball", seed=seed + 1), n_pairs)
    ps = profile_arrays(src[:, 0], src[:, 1], src[:, 2])
    pt = profile_arrays(tgt[:, 0], tgt[:, 1], tgt[:, 2])
    conv = (ps["ax"] >= pt["ax"] - ORDER_EPS) & (ps["bx"] >= pt["bx"] - ORDER_EPS)

    rn2_s = src[:, 0] ** 2
    a2_s = src[:, 1] ** 2 + src[:, 2] ** 2
    rn2_t = tgt[:, 0] ** 2
    perp2_t = tgt[:, 1] ** 2 + tgt[:, 2] ** 2
    free_s = a2_s <= ORDER_EPS**2
    pole_t = 1.0 - rn2_t <= POLE_EPS
    safe_a2 = np.where(free_s, 1.0, a2_s)
    cond1 = np.sqrt(perp2_t) <= np.sqrt(a2_s) + ORDER_EPS
    cond2 = rn2_t + (1.0 - rn2_s) / safe_a2 * perp2_t <= 1.0 + ORDER_EPS
    closure = np.where(free_s, perp2_t <= ORDER_EPS**2, cond1 & (pole_t | cond2))
    agreement = bool(np.all(closure == conv))

    third = sample_vectors(SamplerConfig("uniform-ball", seed=seed + 2), n_pairs)
    pu = profile_arrays(third[:, 0], third[:, 1], third[:, 2])
    conv_bc = (pt["ax"] >= pu["ax"] - ORDER_EPS) & (pt["bx"] >= pu["bx"] - ORDER_EPS)
    conv_ac = (ps["ax"] >= pu["ax"] - ORDER_EPS) & (ps["bx"] >= pu["bx"] - ORDER_EPS)
    transitive = bool(np.all(~(conv & conv_bc) | conv_ac))

    top_above_all = bool(np.all((1.0 >= ps["ax"] - ORDER_EPS) & (1.0 >= ps["bx"] - ORDER_EPS)))

    fixed = sample_vectors(SamplerConfig("fixed-radius", radius=0.7, seed=seed + 3), 20_000)
    pf = profile_arrays(fixed[:, 0], fixed[:, 1], fixed[:, 2])
    half = len(fixed) // 2
    a1, b1 = pf["ax"][:half], pf["bx"][:half]
    a2, b2 = pf["ax"][half:], pf["bx"][half:]
    fwd = (a1 >= a2 - ORDER_EPS) & (b1 >= b2 - ORDER_EPS)
    bwd = (a2 >= a1 - ORDER_EPS) & (b2 >= b1 - ORDER_EPS)
    total_order = bool(np.all(fwd | bwd))

    return SuiteReport(
        "order",
        (
            CheckResult(f"closure membership == conversion criterion on {n_pairs} pairs", agreement),
            CheckResult("transitivity on random triples", transitive),
            CheckResult("maximal states sit above all samples", top_above_all),
            CheckResult("fixed purity r=0.7 is totally ordered", total_order),
        ),
    )


SUITES = {
    "equalities": suite_equalities,
    "inequalities": suite_inequalities,
    "realizability": suite_realizability,
    "pure-tags": suite_pure_tags,
    "fixed-purity": suite_fixed_purity,
    "operational": suite_operational,
    "sections": suite_sections,
    "channels": suite_channels,
    "witness": suite_witness,
    "oracle": suite_oracle,
    "order": suite_order,
}
