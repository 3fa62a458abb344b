"""Eight-plane arrangements in P^3: strata, pencils and equivalence."""

from .degeneration import Degeneration, degeneration
from .forms import (
    COORDS,
    Arrangement,
    ArrangementFamily,
    LinForm,
    apply_transform,
    equivalent,
    evaluate_family,
    families_equivalent,
    load_arrangement,
    parse_arrangement,
    parse_form,
    proportional,
)
from .pencil import (
    all_orderings,
    cross_ratio,
    j_from_lambda,
    j_invariant,
    lambda_orbit,
    line_coordinates,
    line_of_forms,
    pencil_coordinates,
    plane_spanned,
    triple_line_pencil,
)
from .strata import (
    ProjLine,
    ProjPoint,
    SingularityReport,
    canonical,
    classify,
    enumerate_singular_lines,
    enumerate_singular_points,
    pluecker,
    pluecker_pairing,
)

__all__ = [
    "COORDS",
    "Arrangement",
    "ArrangementFamily",
    "Degeneration",
    "LinForm",
    "ProjLine",
    "ProjPoint",
    "SingularityReport",
    "all_orderings",
    "apply_transform",
    "canonical",
    "classify",
    "cross_ratio",
    "degeneration",
    "enumerate_singular_lines",
    "enumerate_singular_points",
    "equivalent",
    "evaluate_family",
    "families_equivalent",
    "j_from_lambda",
    "j_invariant",
    "lambda_orbit",
    "line_coordinates",
    "line_of_forms",
    "load_arrangement",
    "parse_arrangement",
    "parse_form",
    "pencil_coordinates",
    "plane_spanned",
    "pluecker",
    "pluecker_pairing",
    "proportional",
    "triple_line_pencil",
]
