"""Multiple lines and points of a plane arrangement in P^3."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..exact import ExactMatrix, Scalar, kernel_basis, rank, render_scalar, sort_key
from .forms import Arrangement

__all__ = [
    "ProjLine",
    "ProjPoint",
    "SingularityReport",
    "canonical",
    "pluecker",
    "pluecker_pairing",
    "enumerate_singular_lines",
    "enumerate_singular_points",
    "classify",
]

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def canonical(vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Scale so the first nonzero entry is 1."""
    lead = next(c for c in vec if c != 0)
    return tuple(c / lead for c in vec)


def pluecker(p: Sequence[Scalar], q: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Canonical Pluecker vector of the line through two distinct points."""
    return canonical([p[i] * q[j] - p[j] * q[i] for i, j in PAIRS])


def pluecker_pairing(p: Sequence[Scalar], q: Sequence[Scalar]) -> Scalar:
    """Zero iff the two lines meet (or coincide)."""
    return (
        p[0] * q[5] - p[1] * q[4] + p[2] * q[3]
        + p[3] * q[2] - p[4] * q[1] + p[5] * q[0]
    )


def _render_vec(v) -> str:
    return "(" + ":".join(render_scalar(c) for c in v) + ")"


@dataclass(frozen=True)
class ProjLine:
    pluecker: tuple[Scalar, ...]
    planes: frozenset[int]
    points: tuple[tuple[Scalar, ...], tuple[Scalar, ...]]

    @property
    def multiplicity(self) -> int:
        return len(self.planes)

    def quadric(self) -> Scalar:
        p = self.pluecker
        return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]

    def contains(self, point: Sequence[Scalar]) -> bool:
        return rank(ExactMatrix([list(self.points[0]), list(self.points[1]), list(point)])) == 2

    def to_json(self) -> dict:
        return {
            "pluecker": [render_scalar(c) for c in self.pluecker],
            "planes": sorted(i + 1 for i in self.planes),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Scalar, ...]
    planes: frozenset[int]
    k: int

    @property
    def multiplicity(self) -> int:
        return len(self.planes)

    m = multiplicity

    @property
    def label(self) -> str:
        return f"p_{self.multiplicity}^{self.k}"

    def render(self) -> str:
        return _render_vec(self.coords)

    def to_json(self) -> dict:
        return {
            "coords": [render_scalar(c) for c in self.coords],
            "planes": sorted(i + 1 for i in self.planes),
            "type": self.label,
        }


def _vanishing(a: Arrangement, point) -> frozenset[int]:
    return frozenset(i for i, f in enumerate(a.forms) if f(point) == 0)


def enumerate_singular_lines(a: Arrangement) -> list[ProjLine]:
    """Every line on at least two planes, once, sorted by multiplicity then planes."""
    vecs = a.vectors
    found: dict[tuple, ProjLine] = {}
    covered: set[tuple[int, int]] = set()
    for i, j in combinations(range(len(vecs)), 2):
        if (i, j) in covered:
            continue
        p, q = kernel_basis(ExactMatrix([list(vecs[i]), list(vecs[j])]))
        planes = _vanishing(a, p) & _vanishing(a, q)
        key = pluecker(p, q)
        found[key] = ProjLine(key, planes, (canonical(p), canonical(q)))
        covered.update(combinations(sorted(planes), 2))
    return sorted(found.values(), key=lambda l: (-l.multiplicity, sorted(l.planes)))


def enumerate_singular_points(a: Arrangement, lines: Sequence[ProjLine] | None = None) -> list[ProjPoint]:
    """Every point on at least three planes, with its type label."""
    if lines is None:
        lines = enumerate_singular_lines(a)
    heavy = [l for l in lines if l.multiplicity >= 3]
    vecs = a.vectors
    found: dict[tuple, frozenset[int]] = {}
    for triple in combinations(range(len(vecs)), 3):
        m = ExactMatrix([list(vecs[i]) for i in triple])
        if rank(m) != 3:
            continue
        (pt,) = kernel_basis(m)
        key = canonical(pt)
        if key not in found:
            found[key] = _vanishing(a, key)
    out = [
        ProjPoint(c, planes, sum(1 for l in heavy if l.planes <= planes))
        for c, planes in found.items()
    ]
    return sorted(out, key=lambda p: (-p.multiplicity, -p.k, sorted(p.planes)))


@dataclass(frozen=True)
class SingularityReport:
    lines: tuple[ProjLine, ...]
    points: tuple[ProjPoint, ...]
    param_value: Scalar | None = None
    label: str = "arrangement"

    def lines_of(self, mult: int) -> list[ProjLine]:
        return [l for l in self.lines if l.multiplicity == mult]

    @property
    def double_lines(self) -> int:
        return len(self.lines_of(2))

    @property
    def triple_lines(self) -> int:
        return len(self.lines_of(3))

    @property
    def high_lines(self) -> int:
        return sum(1 for l in self.lines if l.multiplicity >= 4)

    def points_of(self, label: str) -> list[ProjPoint]:
        return [p for p in self.points if p.label == label]

    @property
    def type_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.points:
            out[p.label] = out.get(p.label, 0) + 1
        return dict(sorted(out.items(), key=lambda kv: (-int(kv[0][2:].split("^")[0]), kv[0])))

    @property
    def admissible(self) -> bool:
        return self.high_lines == 0 and all(p.multiplicity < 6 for p in self.points)

    def counts(self) -> dict:
        return {
            "double_lines": self.double_lines,
            "triple_lines": self.triple_lines,
            "high_lines": self.high_lines,
            "points": self.type_counts,
        }

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "param": None if self.param_value is None else render_scalar(self.param_value),
            "lines": [l.to_json() for l in self.lines],
            "points": [p.to_json() for p in self.points],
            "counts": self.counts(),
            "admissible": self.admissible,
        }

    def render(self) -> str:
        head = self.label if self.param_value is None else f"{self.label} at s = {render_scalar(self.param_value)}"
        out = [head]
        out.append(
            f"lines: {self.double_lines} double, {self.triple_lines} triple, {self.high_lines} of multiplicity >= 4"
        )
        for l in self.lines:
            if l.multiplicity >= 3:
                planes = ",".join(f"L{i + 1}" for i in sorted(l.planes))
                out.append(f"  multiplicity {l.multiplicity}: through {_render_vec(l.points[0])} "
                           f"and {_render_vec(l.points[1])}  [{planes}]")
        out.append("points: " + ", ".join(f"{n} x {lab}" for lab, n in self.type_counts.items()))
        for p in self.points:
            if p.multiplicity >= 4:
                planes = ",".join(f"L{i + 1}" for i in sorted(p.planes))
                out.append(f"  {p.label:7s} {p.render()}  [{planes}]")
        out.append(f"admissible: {'yes' if self.admissible else 'no'}")
        return "\n".join(out)


def classify(a: Arrangement) -> SingularityReport:
    lines = enumerate_singular_lines(a)
    points = enumerate_singular_points(a, lines)
    return SingularityReport(tuple(lines), tuple(points), a.param_value, a.label)
