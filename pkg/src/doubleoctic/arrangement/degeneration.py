"""What changes in a family's strata at a special parameter value."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact import Scalar, as_scalar
from .forms import ArrangementFamily
from .pencil import j_invariant, line_coordinates, triple_line_pencil
from .strata import ProjLine, ProjPoint, SingularityReport, classify

__all__ = ["Degeneration", "degeneration"]


@dataclass(frozen=True)
class Degeneration:
    """``kind`` is ``"fivefold-point"`` (two p_4^1 points merge on the triple
    line) or ``"new-triple-line"`` (three double lines merge)."""

    kind: str
    special: SingularityReport
    new_points: tuple[ProjPoint, ...]
    new_lines: tuple[ProjLine, ...]
    line: ProjLine
    pencil_points: tuple[tuple[Scalar, Scalar], ...]
    j: Scalar


def degeneration(family: ArrangementFamily, t0, generic=7) -> Degeneration:
    """Compare the fibre at ``t0`` with the one at ``generic`` by plane incidences.

    For a new fivefold point the four pencil planes are the triple line's
    three planes and the plane through the triple line and the line cut by
    the two other planes at the new point.  For a new triple line the four
    points are its points of multiplicity at least four.
    """
    gen = classify(family.evaluate(as_scalar(generic)))
    special = classify(family.evaluate(as_scalar(t0)))
    old_pts = {p.planes for p in gen.points}
    old_lines = {l.planes for l in gen.lines}
    new_points = tuple(p for p in special.points if p.planes not in old_pts)
    new_lines = tuple(l for l in special.lines if l.planes not in old_lines and l.multiplicity >= 3)
    if new_lines:
        (line,) = new_lines
        pts = [p for p in special.points if p.multiplicity >= 4 and line.planes <= p.planes]
        coords = tuple(line_coordinates(line, p.coords) for p in pts)
        return Degeneration("new-triple-line", special, new_points, new_lines, line, coords, j_invariant(coords))
    five = [p for p in new_points if p.multiplicity == 5]
    if len(five) != 1:
        raise ValueError("no single new fivefold point or triple line at this parameter")
    (tl,) = special.lines_of(3)
    moving = tuple(sorted(five[0].planes - tl.planes))
    fibre = family.evaluate(as_scalar(t0))
    _, _, pts, j = triple_line_pencil(fibre, moving)
    return Degeneration("fivefold-point", special, new_points, new_lines, tl, tuple(pts), j)
