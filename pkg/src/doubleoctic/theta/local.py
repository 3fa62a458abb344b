"""Local analysis of Fuchsian operators: singular points, indicial
polynomials and the Riemann symbol."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..errors import FieldObstruction, IrregularSingularity, ZeroOperator
from ..exact import Poly, Scalar, as_scalar, rational_roots, render_scalar, sort_key
from ..exact.scalar import field_of
from ..expr import evaluate_scalar
from .operator import THETA, DOperator, ThetaOperator, from_d_form, to_d_form

__all__ = [
    "INFINITY",
    "Point",
    "SingularLocus",
    "RiemannSymbol",
    "local_operator",
    "singular_points",
    "indicial_polynomial",
    "indicial_roots",
    "riemann_symbol",
    "parse_point",
    "render_point",
]


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "infinity"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
Point = Union[Scalar, _Infinity]


def parse_point(text: str) -> Point:
    if text.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INFINITY
    return evaluate_scalar(text)


def render_point(p: Point) -> str:
    return "infinity" if p is INFINITY else render_scalar(p)


def _point_key(p: Point):
    return (1, (0, 0)) if p is INFINITY else (0, sort_key(p))


def local_operator(op: ThetaOperator, point: Point) -> ThetaOperator:
    """The operator in a local coordinate ``u`` at ``point``.

    ``u = t`` at 0, ``u = 1/t`` at infinity (``Theta_t = -Theta_u``) and
    ``u = t - a`` at a finite ``a``, rewritten in ``Theta_u = u d/du`` after
    left multiplication by the power of ``u`` that makes the leading
    coefficient start at ``u^n``.  The result is normalised so its lowest
    ``u``-column is column 0.  Raises :class:`IrregularSingularity` when the
    point is not regular singular.
    """
    if op.is_zero():
        raise ZeroOperator("zero operator")
    n = op.order
    if point is INFINITY:
        span = op.t_span
        flip = Poly([0, -1], THETA)
        loc = ThetaOperator(op.column(span - j)(flip) for j in range(span + 1))
    else:
        a = as_scalar(point)
        if a == 0:
            loc = op
        else:
            dop = to_d_form(op).shift(a)
            m = n - dop.leading.order()
            if any(not c.is_zero() and c.order() - j + m < 0 for j, c in enumerate(dop.coeffs)):
                raise IrregularSingularity(f"irregular singularity at t = {render_scalar(a)}")
            loc = from_d_form(dop.left_multiply_power(m) if m > 0 else _drop_power(dop, -m))
    loc = loc.strip_t()
    if loc.column(0).degree != n:
        raise IrregularSingularity(f"irregular singularity at {render_point(point)}")
    return loc


def _drop_power(dop: DOperator, m: int) -> DOperator:
    if m == 0:
        return dop
    return DOperator([Poly(c.coeffs[m:], dop.var) for c in dop.coeffs], dop.var)


def indicial_polynomial(op: ThetaOperator, point: Point = Fraction(0), var: str = "lambda") -> Poly:
    """Indicial polynomial at ``point``; its roots are the local exponents."""
    return local_operator(op, point).column(0).with_var(var)


def indicial_roots(op: ThetaOperator, point: Point = Fraction(0)) -> list[Scalar]:
    """Local exponents with repetition, sorted; FieldObstruction if some are not in the field."""
    p = indicial_polynomial(op, point)
    roots, residual = rational_roots(p, d=_field_hint(op, point))
    if residual.degree > 0:
        raise FieldObstruction(
            f"exponents at {render_point(point)} outside the coefficient field: {residual}"
        )
    out: list[Scalar] = []
    for r, m in roots:
        out.extend([r] * m)
    return out


def _field_hint(op: ThetaOperator, point: Point) -> int | None:
    vals = [c for col in op.columns for c in col.coeffs]
    if point is not INFINITY:
        vals.append(as_scalar(point))
    return field_of(*vals)


@dataclass(frozen=True)
class SingularLocus:
    finite: tuple[tuple[Scalar, int], ...]
    residual: Poly

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(p for p, _ in self.finite) + (INFINITY,)


def singular_points(op: ThetaOperator, d: int | None = None) -> SingularLocus:
    """Roots of the leading ``d/dt`` coefficient, plus infinity.

    ``residual`` keeps any factor whose roots are not in the field.
    """
    if op.is_zero():
        raise ZeroOperator("zero operator")
    if op.order == 0:
        return SingularLocus((), Poly((1,), "t"))
    lead = to_d_form(op).leading
    d = d if d is not None else _field_hint(op, Fraction(0))
    roots, residual = rational_roots(lead, d=d)
    return SingularLocus(tuple(roots), residual)


@dataclass(frozen=True)
class RiemannSymbol:
    """Exponents at each singular point (including infinity)."""

    order: int
    exponents: dict = field(default_factory=dict)  # Point -> tuple[Scalar, ...]

    @property
    def points(self) -> list[Point]:
        return sorted(self.exponents, key=_point_key)

    def total(self) -> Scalar:
        acc = Fraction(0)
        for ex in self.exponents.values():
            for e in ex:
                acc = acc + e
        return acc

    def fuchs_expected(self) -> Fraction:
        n, s = self.order, len(self.exponents)
        return Fraction(n * (n - 1) * (s - 2), 2)

    def fuchs_holds(self) -> bool:
        return self.total() == self.fuchs_expected()

    def table(self) -> list[list[str]]:
        pts = self.points
        rows = [[render_point(p) for p in pts]]
        for k in range(self.order):
            rows.append([render_scalar(self.exponents[p][k]) for p in pts])
        return rows

    def render(self) -> str:
        rows = self.table()
        width = max(len(x) for r in rows for x in r)
        lines = ["  ".join(x.rjust(width) for x in rows[0])]
        lines.append("-" * len(lines[0]))
        lines += ["  ".join(x.rjust(width) for x in r) for r in rows[1:]]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "points": [render_point(p) for p in self.points],
            "exponents": {
                render_point(p): [render_scalar(e) for e in self.exponents[p]] for p in self.points
            },
            "total": render_scalar(self.total()),
            "fuchs_expected": render_scalar(self.fuchs_expected()),
            "fuchs_holds": self.fuchs_holds(),
        }


def riemann_symbol(op: ThetaOperator) -> RiemannSymbol:
    locus = singular_points(op)
    if locus.residual.degree > 0:
        raise FieldObstruction(f"singular points outside the field: roots of {locus.residual}")
    exps = {p: tuple(indicial_roots(op, p)) for p in locus.points}
    return RiemannSymbol(op.order, exps)
