"""Scattered linearized polynomials over finite fields.

Exact computation of scatteredness, subspace stabilizers in GL(2, q^n),
standard forms and equivalence, the associated rank-distance codes with
their idealizers, and the homology structure of the derived translation
planes, at desk scale.
"""

from .errors import ScatteredLabError
from .field_tower import FieldElement, FieldSpec, FieldTower, field_from_json, make_field
from .linearized import DeltaProfile, LinearizedPoly
from .scatter import (
    LinearSet,
    is_r_partially_scattered,
    is_scattered,
    is_scattered_naive,
    linear_set,
    slope_census,
    subspace_membership,
)
from .stabilizer import (
    DiagonalizationResult,
    Mat2,
    MatrixField,
    compute_stabilizer,
    diagonalize,
    transversal_points,
    verify_field,
)
from .standard_form import (
    EquivalenceResult,
    StandardFormResult,
    canonicalize,
    gammal_equivalent,
    gl_equivalent,
    in_class_S,
    to_standard_form,
)
from .mrd import (
    Idealizer,
    RdCode,
    check_idealizer_matches_stabilizer,
    code_of,
    left_idealizer,
    min_distance,
    min_distance_naive,
    right_idealizer,
)
from .families import (
    FamilyInstance,
    catalog,
    find_family3_delta,
    find_family4_delta,
    find_lp_delta,
    find_psi_h,
    make_family3,
    make_family4,
    make_lp,
    make_pseudoregulus,
    make_psi,
    psi_standard_form_closed,
    psi_theta,
)
from .plane import (
    HomologyReport,
    PseudoregulusCase,
    ReducibilityWitness,
    Spread,
    build_spread,
    classify_central_collineations,
    kernel_scalar_audit,
    linear_collineations,
    reducibility_witness,
    semilinear_part_audit,
    verify_spread_axioms,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
