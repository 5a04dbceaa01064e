"""Joint-invariant numerical curvatures, signatures and congruence decisions
for planar point meshes under Euclidean and equiaffine motions."""

from .affine import (
    AffineInvariants,
    ArcLengthSet,
    ConicCoeffs,
    affine_arc_length,
    affine_curvature,
    arc_length_set,
    conic_center,
    fit_conic,
    has_fine_area,
    in_fine_position,
    invariants,
    is_affine_fine,
    sa_signature,
    sd_affine,
)
from .congruence import (
    CongruenceVerdict,
    MatchMode,
    Verdict,
    align,
    classification_meshes,
    counterexample,
    decide_affine,
    decide_dist_angle,
    decide_eq1,
    decide_eq2_angle_type,
    decide_eq2_signed,
    decide_eq3,
    decide_eq4,
)
from .errors import MeshSigError
from .euclidean import chord, curvature_of_triple, euclidean_curvature, se_signature
from .geometry import (
    AngleType,
    Group,
    GroupElement,
    Mesh,
    NeighborhoodSpec,
    Point2,
    SigDirection,
    angle,
    angle_type,
    apply_motion,
    circumcircle,
    is_convex,
    is_equally_spaced,
    is_fine,
    is_ordinary,
    random_motion,
    signature_direction,
    signature_sign,
    signed_angle,
    signed_angle_type,
)
from .host import Traversal, decide_host, totient, traverse, valid_steps
from .signatures import Scheme, Signature, SignaturePoint, signature_max_error, signatures_close

__version__ = "0.1.0"

__all__ = [
    "AffineInvariants",
    "AngleType",
    "ArcLengthSet",
    "ConicCoeffs",
    "CongruenceVerdict",
    "Group",
    "GroupElement",
    "MatchMode",
    "Mesh",
    "MeshSigError",
    "NeighborhoodSpec",
    "Point2",
    "Scheme",
    "SigDirection",
    "Signature",
    "SignaturePoint",
    "Traversal",
    "Verdict",
    "affine_arc_length",
    "affine_curvature",
    "align",
    "angle",
    "angle_type",
    "apply_motion",
    "arc_length_set",
    "chord",
    "circumcircle",
    "classification_meshes",
    "conic_center",
    "counterexample",
    "curvature_of_triple",
    "decide_affine",
    "decide_dist_angle",
    "decide_eq1",
    "decide_eq2_angle_type",
    "decide_eq2_signed",
    "decide_eq3",
    "decide_eq4",
    "decide_host",
    "euclidean_curvature",
    "fit_conic",
    "has_fine_area",
    "in_fine_position",
    "invariants",
    "is_affine_fine",
    "is_convex",
    "is_equally_spaced",
    "is_fine",
    "is_ordinary",
    "random_motion",
    "sa_signature",
    "sd_affine",
    "se_signature",
    "signature_direction",
    "signature_max_error",
    "signature_sign",
    "signatures_close",
    "signed_angle",
    "signed_angle_type",
    "totient",
    "traverse",
    "valid_steps",
]
