"""Exact machinery for toric charts built on rational polyhedral cones.

The package decides, over exact integers and rationals, the classical
chart-level questions about the variety glued from a fan: which charts
have absorbing points, whether the glued object can carry a multiplication
compatible with its torus, why gluing is always separated (with
machine-checkable certificates), and how to recover the fan from an
affine atlas given by character data.
"""

from .cone import (
    Cone,
    ConeClass,
    Face,
    classify,
    cone_from_generators,
    cone_from_inequalities,
    contains,
    contains_cone,
    dual,
    face_cones,
    face_witness,
    faces,
    intersect,
    is_face,
    relative_interior_point,
    zero_cone,
)
from .errors import (
    CertificateSearchExhausted,
    Condition1Violation,
    Condition2Violation,
    FaceCertificateMissing,
    InvalidAtlas,
    NonSeparated,
    NotNormal,
    NotStronglyConvex,
    TorfanError,
    TorusNotDense,
)
from .exact_linalg import (
    complement,
    det,
    hermite_normal_form,
    kernel_basis,
    saturate,
    smith_normal_form,
)
from .fan import (
    AdditionClosureFailure,
    Fan,
    NondegenerateConePair,
    SemigroupDecision,
    SpanReduction,
    has_semigroup_structure,
    is_generated_by_single_cone,
    nondegenerate_cones,
    span_reduce,
    union_addition_closed,
    validate_fan,
)
from .monoid import (
    AffineMonoid,
    ChartPoint,
    OneParamSubsemigroup,
    eval_point,
    has_zero,
    identity_point,
    monoid_contains,
    monoid_of,
    multiply_points,
    one_param_extends,
    one_param_limit,
    torus_point,
)
from .reconstruct import (
    InputAtlas,
    NormalityResult,
    ReconstructionReport,
    affine_case,
    cone_from_characters,
    export_atlas,
    monoid_member,
    normality_check,
    reconstruct_fan,
)
from .variety import (
    ChartAtlasFromFan,
    FaceLocalizationCertificate,
    SeparatednessCertificate,
    build_atlas,
    chart_multiplication_compatible,
    face_localization_certificate,
    restrict_point,
    separatedness_certificate,
)

__version__ = "0.1.0"
