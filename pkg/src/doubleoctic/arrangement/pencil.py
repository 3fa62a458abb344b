"""Pencils of planes through a line, cross-ratios and j-invariants."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from ..errors import CoincidentPoints, EqualLines, NotInPencil, SkewLines
from ..exact import ExactMatrix, Scalar, as_scalar, kernel_basis, solve
from .forms import Arrangement, LinForm
from .strata import ProjLine, canonical, classify, pluecker, pluecker_pairing

__all__ = [
    "line_of_forms",
    "pencil_coordinates",
    "plane_spanned",
    "line_coordinates",
    "cross_ratio",
    "j_from_lambda",
    "j_invariant",
    "lambda_orbit",
    "triple_line_pencil",
]


def line_of_forms(f: LinForm, g: LinForm) -> ProjLine:
    """The line ``f = g = 0`` (planes recorded as the empty set)."""
    basis = kernel_basis(ExactMatrix([list(f.vector), list(g.vector)]))
    if len(basis) != 2:
        raise EqualLines("forms are proportional")
    p, q = basis
    return ProjLine(pluecker(p, q), frozenset(), (canonical(p), canonical(q)))


def _pair(alpha, beta) -> tuple[Scalar, Scalar]:
    return tuple(canonical([as_scalar(alpha), as_scalar(beta)]))


def pencil_coordinates(line: ProjLine, fa: LinForm, fb: LinForm, g: LinForm) -> tuple[Scalar, Scalar]:
    """``(alpha:beta)`` with ``g`` proportional to ``alpha*fa + beta*fb``."""
    for f in (fa, fb):
        if any(f(p) != 0 for p in line.points):
            raise ValueError(f"basis form {f} does not contain the line")
    if any(g(p) != 0 for p in line.points):
        raise NotInPencil(f"{g} does not contain the line")
    m = ExactMatrix([[fa.vector[i], fb.vector[i]] for i in range(4)], 2)
    sol = solve(m, list(g.vector))
    if sol is None:
        raise NotInPencil(f"{g} is not in the pencil of {fa}, {fb}")
    return _pair(*sol)


def plane_spanned(l1: ProjLine, l2: ProjLine) -> LinForm:
    """The plane containing two distinct intersecting lines."""
    if l1.pluecker == l2.pluecker:
        raise EqualLines("lines coincide")
    if pluecker_pairing(l1.pluecker, l2.pluecker) != 0:
        raise SkewLines("lines do not meet")
    rows = [list(p) for p in l1.points + l2.points]
    (normal,) = kernel_basis(ExactMatrix(rows, 4))
    return LinForm(canonical(normal))


def line_coordinates(line: ProjLine, point: Sequence) -> tuple[Scalar, Scalar]:
    """``(alpha:beta)`` with ``point = alpha*P + beta*Q`` for the spanning points of ``line``."""
    P, Q = line.points
    m = ExactMatrix([[P[i], Q[i]] for i in range(4)], 2)
    sol = solve(m, [as_scalar(c) for c in point])
    if sol is None:
        raise ValueError("point is not on the line")
    return _pair(*sol)


def _bracket(p, q) -> Scalar:
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(points: Sequence[Sequence]) -> Scalar:
    """``lambda = [14][23] / ([24][13])`` with ``[ij] = a_i b_j - a_j b_i``."""
    pts = [tuple(as_scalar(c) for c in p) for p in points]
    if len(pts) != 4:
        raise ValueError("cross-ratio needs four points")
    for i in range(4):
        if all(c == 0 for c in pts[i]):
            raise ValueError("(0:0) is not a projective point")
        for j in range(i + 1, 4):
            if _bracket(pts[i], pts[j]) == 0:
                raise CoincidentPoints(f"points {i + 1} and {j + 1} coincide")
    p1, p2, p3, p4 = pts
    return (_bracket(p1, p4) * _bracket(p2, p3)) / (_bracket(p2, p4) * _bracket(p1, p3))


def j_from_lambda(lam) -> Scalar:
    lam = as_scalar(lam)
    if lam == 0 or lam == 1:
        raise CoincidentPoints("cross-ratio 0 or 1 means two points coincide")
    num = lam * lam - lam + 1
    return 256 * num * num * num / (lam * lam * (lam - 1) * (lam - 1))


def j_invariant(points: Sequence[Sequence]) -> Scalar:
    return j_from_lambda(cross_ratio(points))


def lambda_orbit(lam) -> set:
    lam = as_scalar(lam)
    one = Fraction(1)
    return {lam, one / lam, one - lam, one / (one - lam), lam / (lam - one), (lam - one) / lam}


def all_orderings(points: Sequence) -> list[Scalar]:
    return [cross_ratio(p) for p in permutations(points)]


def triple_line_pencil(a: Arrangement, moving: tuple[int, int] | None = None):
    """Pencil data for the collision on the triple line.

    Returns ``(line, fourth plane, pencil points, j)`` for the four planes through the
    triple line: its three arrangement planes and the plane spanned with the
    line ``moving`` (pair of plane indices, default: the two planes through
    the fivefold point not containing the triple line).
    """
    rep = classify(a)
    (tl,) = rep.lines_of(3)
    planes = sorted(tl.planes)
    if moving is None:
        (p5,) = [p for p in rep.points if p.multiplicity == 5]
        moving = tuple(sorted(p5.planes - tl.planes))
    m0 = line_of_forms(a.forms[moving[0]], a.forms[moving[1]])
    fourth = plane_spanned(tl, m0)
    fa, fb = a.forms[planes[0]], a.forms[planes[1]]
    pts = [pencil_coordinates(tl, fa, fb, a.forms[i]) for i in planes] + [pencil_coordinates(tl, fa, fb, fourth)]
    return tl, fourth, pts, j_invariant(pts)
