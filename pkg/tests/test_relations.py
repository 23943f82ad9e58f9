import math
from fractions import Fraction

import numpy as np
import pytest

from aboutface.bloch import SamplerConfig, make_state, sample_vectors
from aboutface.errors import (
    DegenerateSample,
    NotPure,
    NotRealizable,
    PureInput,
    RangeViolation,
)
from aboutface.monotones import monotone_profile
from aboutface.relations import (
    ConstraintReport,
    CrossSectionSpec,
    a_inequality_margins,
    az_squared_given,
    axbxay_margins,
    b_inequality_margins,
    constraint_report,
    cross_section,
    detect_pairwise_relation,
    equality_residuals,
    fixed_purity_residual_a,
    fixed_purity_residual_b,
    pure_b_tuple,
    radii_from_a,
    radii_from_b,
    sample_joint_region,
    state_from_a_triple,
)

SQ52 = math.sqrt(0.52)
SQ37 = math.sqrt(3.0 / 7.0)
RUNNING_PROFILE = (0.4, 0.5, 0.6, SQ37, SQ52, SQ52)
# squared values of the running profile, exact
RP2 = (
    Fraction(4, 25),
    Fraction(1, 4),
    Fraction(9, 25),
    Fraction(3, 7),
    Fraction(13, 25),
    Fraction(13, 25),
)


def rational_equalities(ax2, bx2, ay2, by2, az2, bz2):
    """Exact rational evaluation of the three equality left-hand sides."""
    return (
        2 * (bx2 - ax2) - bx2 * (-ax2 + ay2 + az2),
        2 * (by2 - ay2) - by2 * (ax2 - ay2 + az2),
        2 * (bz2 - az2) - bz2 * (ax2 + ay2 - az2),
    )


def rational_b_margins(bx2, by2, bz2):
    triple = bx2 * by2 * bz2
    return (
        -bx2 + by2 + bz2 - 2 * by2 * bz2 + triple,
        bx2 - by2 + bz2 - 2 * bz2 * bx2 + triple,
        bx2 + by2 - bz2 - 2 * bx2 * by2 + triple,
    )


class TestEqualityResiduals:
    def test_maximally_mixed(self):
        assert np.allclose(equality_residuals(monotone_profile(make_state(0, 0, 0))), 0.0)

    def test_running_example_exact_zero(self):
        ax2, bx2, ay2, by2, az2, bz2 = RP2
        assert rational_equalities(ax2, bx2, ay2, by2, az2, bz2) == (0, 0, 0)
        res = equality_residuals(monotone_profile(make_state(0.6, 0.4, 0)))
        assert np.max(np.abs(res)) <= 1e-12

    def test_pure_state(self):
        res = equality_residuals(monotone_profile(make_state(0, 0, 1)))
        assert np.max(np.abs(res)) <= 1e-12

    def test_accepts_plain_sequence(self):
        assert np.allclose(equality_residuals(RUNNING_PROFILE), 0.0, atol=1e-12)


class TestAInequalityMargins:
    def test_all_axes_maximal_is_infeasible(self):
        margins = a_inequality_margins(1.0, 1.0, 1.0)
        assert margins[3] == pytest.approx(-1.0, abs=1e-15)

    def test_origin(self):
        assert np.allclose(a_inequality_margins(0, 0, 0), [0, 0, 0, 2])

    def test_running_example(self):
        # exact: (0.72, 0.32, 0, 0.96); the third margin 0 means rz = 0
        got = a_inequality_margins(0.4, 0.6, SQ52)
        a2 = (Fraction(4, 25), Fraction(9, 25), Fraction(13, 25))
        expected = (
            -a2[0] + a2[1] + a2[2],
            a2[0] - a2[1] + a2[2],
            a2[0] + a2[1] - a2[2],
            2 - (a2[0] + a2[1] + a2[2]),
        )
        assert expected == (Fraction(18, 25), Fraction(8, 25), 0, Fraction(24, 25))
        assert np.allclose(got, [float(e) for e in expected], atol=1e-12)


class TestBInequalityMargins:
    def test_origin(self):
        assert np.allclose(b_inequality_margins(0, 0, 0), 0.0)

    def test_running_example(self):
        got = b_inequality_margins(0.5, SQ37, SQ52)
        expected = rational_b_margins(Fraction(1, 4), Fraction(3, 7), Fraction(13, 25))
        assert expected == (Fraction(54, 175), Fraction(24, 175), 0)
        assert np.allclose(got, [float(e) for e in expected], atol=1e-12)

    def test_unrealizable_triple_flagged(self):
        got = b_inequality_margins(0.9, 0.1, 0.1)
        expected = rational_b_margins(
            Fraction(81, 100), Fraction(1, 100), Fraction(1, 100)
        )
        assert float(expected[0]) == pytest.approx(-0.790119, abs=1e-6)
        assert got[0] == pytest.approx(float(expected[0]), abs=1e-12)

    def test_pure_input_rejected(self):
        with pytest.raises(PureInput):
            b_inequality_margins(1.0, 0.5, 0.5)


class TestAxBxAyMargins:
    def test_running_example(self):
        got = axbxay_margins(0.4, 0.5, 0.6)
        # exact: m1 = 1/4 - 4/25 + (4/25)(1/4) - (9/25)(1/4) = 1/25
        # m2 = -1/4 + 4/25 + (9/25)(1/4) = 0  (rz = 0 for the realizing state)
        assert got[0] == pytest.approx(0.04, abs=1e-12)
        assert got[1] == pytest.approx(0.0, abs=1e-12)

    def test_violated_at_large_ay(self):
        got = axbxay_margins(0.4, 0.5, 1.0)
        assert got[0] == pytest.approx(0.25 - 0.16 + 0.04 - 0.25, abs=1e-12)
        assert got[0] < 0

    def test_boundary_family(self):
        for a in (0.2, 0.5, 0.9):
            for ay in (0.0, 0.3, 1.0):
                got = axbxay_margins(a, a, ay)
                assert got[1] == pytest.approx(a * a * ay * ay, abs=1e-12)
                assert got[0] == pytest.approx(a * a * (a * a - ay * ay), abs=1e-12)

    def test_preconditions(self):
        with pytest.raises(RangeViolation):
            axbxay_margins(0.5, 0.4, 0.3)  # bx < ax
        with pytest.raises(RangeViolation):
            axbxay_margins(0.0, 0.0, 0.3)  # bx = 0 carries no constraint
        with pytest.raises(RangeViolation):
            axbxay_margins(0.4, 1.2, 0.3)


class TestRadiiInversion:
    def test_radii_from_a_running_example(self):
        rx2, ry2, rz2 = radii_from_a(0.4, 0.6, SQ52)
        assert (rx2, ry2, rz2) == pytest.approx((0.36, 0.16, 0.0), abs=1e-12)

    def test_radii_from_a_pure_pole(self):
        assert radii_from_a(1.0, 1.0, 0.0) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)

    def test_radii_from_a_origin(self):
        assert radii_from_a(0.0, 0.0, 0.0) == (0.0, 0.0, 0.0)

    def test_radii_from_b_running_example(self):
        rx2, ry2, rz2 = radii_from_b(0.5, SQ37, SQ52)
        assert (rx2, ry2, rz2) == pytest.approx((0.36, 0.16, 0.0), abs=1e-12)

    def test_radii_from_b_origin(self):
        assert radii_from_b(0.0, 0.0, 0.0) == pytest.approx((0.0, 0.0, 0.0))

    def test_radii_from_b_round_trip_random_impure(self):
        # The inversion divides by (1 - B^2) terms, so its conditioning blows
        # up like (1 - r^2)^-3 toward purity; keep the suite away from r = 1.
        v = 0.99 * sample_vectors(SamplerConfig("uniform-ball", seed=31), 500)
        for row in v:
            prof = monotone_profile(make_state(*row))
            rx2, ry2, rz2 = radii_from_b(prof.bx, prof.by, prof.bz)
            assert rx2 == pytest.approx(row[0] ** 2, abs=1e-10)
            assert ry2 == pytest.approx(row[1] ** 2, abs=1e-10)
            assert rz2 == pytest.approx(row[2] ** 2, abs=1e-10)

    def test_radii_from_b_pure_input(self):
        with pytest.raises(PureInput):
            radii_from_b(1.0, 1.0, 0.0)


class TestStateFromATriple:
    def test_infeasible_triple_rejected(self):
        with pytest.raises(NotRealizable):
            state_from_a_triple(1.0, 1.0, 1.0)

    def test_running_example_inverts(self):
        state = state_from_a_triple(0.4, 0.6, SQ52, signs=(1, 1, 1))
        assert state.as_tuple() == pytest.approx((0.6, 0.4, 0.0), abs=1e-12)

    def test_origin(self):
        assert state_from_a_triple(0, 0, 0).as_tuple() == (0, 0, 0)

    def test_sign_choices(self):
        state = state_from_a_triple(0.4, 0.6, SQ52, signs=(-1, 1, -1))
        assert state.rx == pytest.approx(-0.6, abs=1e-12)
        assert state.ry == pytest.approx(0.4, abs=1e-12)

    def test_round_trip_random_feasible_triples(self):
        rng = np.random.default_rng(33)
        count = 0
        while count < 200:
            ax, ay, az = rng.uniform(0, 1, 3)
            if np.min(a_inequality_margins(ax, ay, az)) < 0:
                continue
            count += 1
            state = state_from_a_triple(ax, ay, az)
            got = monotone_profile(state).a_values()
            assert np.max(np.abs(got - [ax, ay, az])) <= 1e-10


class TestPureBTuple:
    @pytest.mark.parametrize(
        "state,tag",
        [
            ((1, 0, 0), (0, 1, 1)),
            ((-1, 0, 0), (0, 1, 1)),
            ((0, 1, 0), (1, 0, 1)),
            ((0, 0, 1), (1, 1, 0)),
        ],
    )
    def test_axis_poles(self, state, tag):
        assert pure_b_tuple(make_state(*state)) == tag

    def test_generic_direction(self):
        c = 1.0 / math.sqrt(3.0)
        assert pure_b_tuple(make_state(c, c, c)) == (1, 1, 1)

    def test_rejects_impure(self):
        with pytest.raises(NotPure):
            pure_b_tuple(make_state(0.5, 0, 0))

    def test_matches_profile_branch(self):
        near = math.sqrt(1.0 - 1e-13)
        rest = math.sqrt(1.0 - near**2)
        state = make_state(near, rest, 0)
        assert pure_b_tuple(state) == (0, 1, 1)
        prof = monotone_profile(state)
        assert prof.bx == 0.0  # same pole branch as the B-monotone


class TestFixedPurity:
    def test_pure_a_sum(self):
        prof = monotone_profile(make_state(0, 0, 1))
        assert fixed_purity_residual_a(prof, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_mixed_origin(self):
        prof = monotone_profile(make_state(0, 0, 0))
        assert fixed_purity_residual_a(prof, 0.0) == 0.0
        assert fixed_purity_residual_b(prof, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_running_example(self):
        prof = monotone_profile(make_state(0.6, 0.4, 0))
        r = SQ52
        assert fixed_purity_residual_a(prof, r) == pytest.approx(0.0, abs=1e-12)
        # exact check: 4/3 + 7/4 + 25/12 = 31/6 = (3 - 13/25)/(1 - 13/25)
        lhs = Fraction(4, 3) + Fraction(7, 4) + Fraction(25, 12)
        rhs = (3 - Fraction(13, 25)) / (1 - Fraction(13, 25))
        assert lhs == rhs == Fraction(31, 6)
        assert fixed_purity_residual_b(prof, r) == pytest.approx(0.0, abs=1e-12)

    def test_pure_input_rejected(self):
        prof = monotone_profile(make_state(0, 0, 1))
        with pytest.raises(PureInput):
            fixed_purity_residual_b(prof, 1.0)


class TestAzSquaredGiven:
    def test_running_example(self):
        assert az_squared_given(0.4, 0.5, 0.6) == pytest.approx(0.52, abs=1e-12)

    def test_bx_zero_branch(self):
        assert az_squared_given(0.0, 0.0, 0.7) == pytest.approx(0.49, abs=1e-15)

    def test_upper_boundary_of_ay(self):
        # At (ax, bx) = (0.4, 0.5) the realizable ay^2 range is [0.36, 0.52]:
        # both margins vanish at the ends and az^2 takes the complementary value.
        assert az_squared_given(0.4, 0.5, math.sqrt(0.52)) == pytest.approx(0.36, abs=1e-12)
        assert az_squared_given(0.4, 0.5, 0.6) + 0.36 == pytest.approx(
            2 + 0.16 - 2 * 0.16 / 0.25, abs=1e-12
        )

    def test_beyond_realizable_ay_rejected(self):
        # ay^2 = 0.88 would force az^2 = 0 but needs rz^2 > ry^2 + rz^2; the
        # first (Ax, Bx, Ay) margin is negative there.
        assert axbxay_margins(0.4, 0.5, math.sqrt(0.88))[0] < -0.08
        with pytest.raises(NotRealizable):
            az_squared_given(0.4, 0.5, math.sqrt(0.88))

    def test_range_violations(self):
        with pytest.raises(RangeViolation):
            az_squared_given(0.4, 0.0, 0.5)

    def test_determination_of_full_profile(self):
        # (ax, bx, ay) determines the rest: az via the closed form, then
        # by, bz by solving the remaining two equalities for their squares.
        v = sample_vectors(SamplerConfig("uniform-ball", seed=35), 300)
        for row in v:
            prof = monotone_profile(make_state(*row))
            if prof.bx <= 1e-6:
                continue
            az2 = az_squared_given(prof.ax, prof.bx, prof.ay)
            assert az2 == pytest.approx(prof.az**2, abs=1e-9)
            by2 = 2 * prof.ay**2 / (2 - prof.ax**2 + prof.ay**2 - az2)
            bz2 = 2 * az2 / (2 - prof.ax**2 - prof.ay**2 + az2)
            assert by2 == pytest.approx(prof.by**2, abs=1e-9)
            assert bz2 == pytest.approx(prof.bz**2, abs=1e-9)


class TestFixedXClassYRange:
    """The y-axis properties consistent with the class Ax=0.4, Bx=0.5.

    The admissible Ay runs from 0.6 (with By = sqrt(3/7)) up to
    sqrt(13)/5, where Ay = By; the midpoint example Ay = 2 sqrt(3)/5
    pairs with By = 1/sqrt(2).
    """

    def test_lower_end(self):
        state = make_state(0.6, 0.4, 0)
        prof = monotone_profile(state)
        assert (prof.ax, prof.bx) == pytest.approx((0.4, 0.5), abs=1e-12)
        assert prof.ay == pytest.approx(0.6, abs=1e-12)
        assert prof.by == pytest.approx(math.sqrt(3.0 / 7.0), abs=1e-12)

    def test_interior_point(self):
        # realize (Ax, Bx, Ay) = (0.4, 0.5, 2 sqrt(3)/5) via the inversion chain
        ay = 2.0 * math.sqrt(3.0) / 5.0
        az2 = az_squared_given(0.4, 0.5, ay)
        state = state_from_a_triple(0.4, ay, math.sqrt(az2))
        prof = monotone_profile(state)
        assert (prof.ax, prof.bx) == pytest.approx((0.4, 0.5), abs=1e-12)
        assert prof.by == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_upper_end(self):
        ay = math.sqrt(13.0) / 5.0
        az2 = az_squared_given(0.4, 0.5, ay)
        state = state_from_a_triple(0.4, ay, math.sqrt(az2))
        prof = monotone_profile(state)
        assert (prof.ax, prof.bx) == pytest.approx((0.4, 0.5), abs=1e-12)
        assert prof.ay == pytest.approx(prof.by, abs=1e-12)  # Ay = By at the top
        # beyond the top the triple stops being realizable
        with pytest.raises(NotRealizable):
            az_squared_given(0.4, 0.5, ay + 1e-6)


class TestEightStateIntersection:
    def test_generic_triple_gives_eight_equivalent_states(self):
        # Level sets of three monotones generically intersect in 8 states
        # (one per sign choice), all sharing the full six-value profile.
        signs = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
        states = [state_from_a_triple(0.5, 0.6, 0.55, s) for s in signs]
        assert len({s.as_tuple() for s in states}) == 8
        reference = monotone_profile(states[0]).as_array()
        for state in states[1:]:
            assert np.allclose(monotone_profile(state).as_array(), reference, atol=1e-12)


class TestConstraintReport:
    def test_running_example_ok(self):
        report = constraint_report(monotone_profile(make_state(0.6, 0.4, 0)))
        assert isinstance(report, ConstraintReport)
        assert report.ok()
        assert report.b_margins is not None and report.axbxay_margins is not None

    def test_pure_state_skips_b_branch(self):
        report = constraint_report(monotone_profile(make_state(0, 0, 1)))
        assert report.b_margins is None
        assert report.ok()

    def test_random_states_ok(self):
        v = sample_vectors(SamplerConfig("uniform-ball", seed=37), 500)
        for row in v:
            assert constraint_report(monotone_profile(make_state(*row))).ok()


class TestCrossSection:
    def test_a_zero_is_synergy_line(self):
        sec = cross_section(CrossSectionSpec("Ax", 0.0, 101))
        pts = sec.member_points()
        assert len(pts) > 0
        assert np.max(np.abs(pts[:, 0] - pts[:, 1])) <= 1e-12

    def test_a_one_is_tradeoff_arc(self):
        sec = cross_section(CrossSectionSpec("Ax", 1.0, 101))
        pts = sec.member_points()
        assert len(pts) > 0
        assert np.max(np.abs(pts[:, 0] ** 2 + pts[:, 1] ** 2 - 1.0)) <= 1e-12

    def test_b_zero_is_diagonal(self):
        sec = cross_section(CrossSectionSpec("Bx", 0.0, 101))
        pts = sec.member_points()
        assert len(pts) > 0
        assert np.max(np.abs(pts[:, 0] - pts[:, 1])) <= 1e-12

    def test_intermediate_a_section_membership_matches_margins(self):
        alpha = 0.5
        sec = cross_section(CrossSectionSpec("Ax", alpha, 41))
        for i in range(41):
            for j in range(41):
                ay, az = sec.grid1[i], sec.grid2[j]
                margins = a_inequality_margins(alpha, ay, az)
                assert bool(sec.member[i, j]) == bool(np.min(margins) >= -1e-12)

    def test_boundary_labels(self):
        sec_a = cross_section(CrossSectionSpec("Ax", 0.5, 11))
        assert {"bottom-left", "bottom-right", "top-left", "top-right"} == set(sec_a.boundaries)
        sec_b = cross_section(CrossSectionSpec("Bx", 0.5, 11))
        assert {"bottom-left", "bottom-right", "top-left"} == set(sec_b.boundaries)

    def test_b_section_boundaries_lie_on_margin_zeros(self):
        beta = 0.5
        sec = cross_section(CrossSectionSpec("Bx", beta, 11))
        for label, curve in sec.boundaries.items():
            for by, bz in curve[1:-1]:
                if max(by, bz) >= 1.0 - 1e-9:
                    continue
                margins = b_inequality_margins(beta, by, bz)
                assert np.min(np.abs(margins)) <= 1e-9, (label, by, bz)

    def test_rearranged_bounds_reported(self):
        sec = cross_section(CrossSectionSpec("Ax", 0.3, 11))
        assert sec.extras["abs_diff_bound"] == pytest.approx(0.09)
        assert sec.extras["sum_upper"] == pytest.approx(2 - 0.09)

    def test_conditional_bounds_grow_with_bx(self):
        # With Ax fixed, raising Bx raises both ends of the realizable Ay range.
        alpha = 0.4
        for beta1, beta2 in ((0.45, 0.5), (0.5, 0.8), (0.8, 0.95)):
            lo1, hi1 = 1 - alpha**2 / beta1**2, 1 - alpha**2 / beta1**2 + alpha**2
            lo2, hi2 = 1 - alpha**2 / beta2**2, 1 - alpha**2 / beta2**2 + alpha**2
            assert lo2 > lo1 and hi2 > hi1
            sum1 = 2 + alpha**2 - 2 * alpha**2 / beta1**2
            sum2 = 2 + alpha**2 - 2 * alpha**2 / beta2**2
            assert sum2 > sum1


class TestSampleJointRegion:
    def test_a_plane_projection_fills_square(self):
        sample = sample_joint_region(("Ax", "Ay"), 10_000, SamplerConfig("uniform-ball", seed=1))
        spans = sample.values.max(axis=0) - sample.values.min(axis=0)
        assert np.all(spans >= 0.95)

    def test_ab_projection_is_triangle(self):
        sample = sample_joint_region(("Ax", "Bx"), 5_000, SamplerConfig("uniform-ball", seed=2))
        assert np.all(sample.values[:, 1] >= sample.values[:, 0] - 1e-12)

    def test_full_profile_passes_constraints(self):
        sample = sample_joint_region(
            ("Ax", "Bx", "Ay", "By", "Az", "Bz"), 5_000, SamplerConfig("uniform-ball", seed=3)
        )
        assert np.all(sample.ok)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            sample_joint_region(("Qx",), 10, SamplerConfig("uniform-ball", seed=1))


class TestDetectPairwiseRelation:
    def test_synergy(self):
        x = np.linspace(0.1, 0.9, 40)
        assert detect_pairwise_relation(np.column_stack([x, x**2])) == "synergy"

    def test_tradeoff(self):
        x = np.linspace(0.1, 0.9, 40)
        assert detect_pairwise_relation(np.column_stack([x, 1 - x])) == "tradeoff"

    def test_neither(self):
        rng = np.random.default_rng(4)
        pts = rng.uniform(0, 1, size=(60, 2))
        assert detect_pairwise_relation(pts) == "neither"

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateSample):
            detect_pairwise_relation(np.column_stack([np.ones(10), np.linspace(0, 1, 10)]))

    def test_section_samples(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(-1, 1, 200)
        assert detect_pairwise_relation(np.column_stack([np.abs(x), np.abs(x)])) == "synergy"
        phi = rng.uniform(0, 2 * math.pi, 200)
        arc = np.column_stack([np.abs(np.sin(phi)), np.abs(np.cos(phi))])
        assert detect_pairwise_relation(arc) == "tradeoff"
