"""Weight-graded dimension bookkeeping for mixed Hodge structures."""

from .ledger import ExactnessVerdict, LadderSpec, check_exact, middle_of_short_exact
from .leray import DirectImageTable, SheafDatum, curve_cohomology, leray_assemble
from .mhs import ZERO, MHSVector, PureSummand, curve_h1, dim_by_weight, parse_mhs, tate
from .scenarios import SCENARIOS, Check, Fixtures, ScenarioReport, run_scenario
from .semistable import E1Row, SemistableFibre, e1_row, euler, limit_cohomology, limit_from_e1

__all__ = [
    "Check",
    "DirectImageTable",
    "E1Row",
    "ExactnessVerdict",
    "Fixtures",
    "LadderSpec",
    "MHSVector",
    "PureSummand",
    "SCENARIOS",
    "ScenarioReport",
    "SemistableFibre",
    "SheafDatum",
    "ZERO",
    "check_exact",
    "curve_cohomology",
    "curve_h1",
    "dim_by_weight",
    "e1_row",
    "euler",
    "leray_assemble",
    "limit_cohomology",
    "limit_from_e1",
    "middle_of_short_exact",
    "parse_mhs",
    "run_scenario",
    "tate",
]
