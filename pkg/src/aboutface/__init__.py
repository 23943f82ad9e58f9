"""Toolkit for the resource theories of qubit about-face asymmetry.

For each axis n of the Bloch ball, the two-element symmetry group
{identity, pi rotation about n} induces a resource ordering of qubit
states under covariant channels.  This package computes the complete
monotone pair deciding that ordering, constructs and certifies the
covariant channels themselves, characterizes every dependence relation
among the monotones of three orthogonal axes (equalities, inequalities,
cross-sections, fixed-purity slices), and cross-checks the conversion
criterion against an independent brute-force channel search.
"""

from .bloch import (
    Axis,
    BlochState,
    SamplerConfig,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_from_name,
    make_state,
    purity_radius,
    rotate_about_axis,
    sample_state,
    sample_vectors,
)
from .channels import (
    AffineQubitMap,
    CovariantChannelSpec,
    ExtremalCovariantParams,
    apply,
    build_covariant,
    choi_of,
    compose,
    covariant_scaling_fit,
    decompose_covariant,
    extremal_covariant,
    is_cptp,
    is_covariant,
    rotation_map,
)
from .errors import (
    AboutFaceError,
    BadWeights,
    DegenerateSample,
    NotCPTP,
    NotCovariant,
    NotPure,
    NotRealizable,
    OutsideBall,
    PureInput,
    RangeViolation,
    Unreachable,
)
from .monotones import (
    MonotonePair,
    MonotoneProfile,
    RefbitChain,
    a_monotone,
    b_monotone,
    monotone_pair,
    monotone_profile,
    refbit_cost,
    refbit_yield,
    trace_distance_asymmetry,
)
from .oracle import (
    AgreementReport,
    OracleConfig,
    OracleResult,
    closure_boundary_probe,
    oracle_agreement,
    realize_channel,
    search_channel,
)
from .ordering import (
    ConversionVerdict,
    OrderWitness,
    Relation,
    can_convert,
    compare,
    downward_closure_section,
    in_downward_closure,
    is_equivalent,
    nonweakness_witness,
    state_with_monotones,
)
from .relations import (
    ConstraintReport,
    CrossSection,
    CrossSectionSpec,
    RegionSample,
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

__version__ = "0.1.0"
