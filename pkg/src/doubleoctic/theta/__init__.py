"""Operators in t and Theta = t d/dt and their local analysis."""

from .frobenius import (
    DEFAULT_ORDER,
    FrobeniusSolution,
    LocalMonodromy,
    apply_operator,
    apply_operator_blocks,
    frobenius,
    local_monodromy,
    span_coordinates,
)
from .local import (
    INFINITY,
    RiemannSymbol,
    SingularLocus,
    indicial_polynomial,
    indicial_roots,
    local_operator,
    parse_point,
    render_point,
    riemann_symbol,
    singular_points,
)
from .operator import (
    THETA,
    DOperator,
    ThetaOperator,
    from_d_form,
    load_operator,
    parse_operator,
    pullback_power,
    stirling2,
    to_d_form,
)

__all__ = [
    "DEFAULT_ORDER",
    "DOperator",
    "FrobeniusSolution",
    "INFINITY",
    "LocalMonodromy",
    "RiemannSymbol",
    "SingularLocus",
    "THETA",
    "ThetaOperator",
    "apply_operator",
    "apply_operator_blocks",
    "frobenius",
    "from_d_form",
    "indicial_polynomial",
    "indicial_roots",
    "load_operator",
    "local_monodromy",
    "local_operator",
    "parse_operator",
    "parse_point",
    "pullback_power",
    "render_point",
    "riemann_symbol",
    "singular_points",
    "span_coordinates",
    "stirling2",
    "to_d_form",
]
