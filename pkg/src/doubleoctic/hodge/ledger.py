"""Exactness of sequences of mixed Hodge structures, weight by weight.

Morphisms of mixed Hodge structures are strict for the weight filtration,
so a sequence is exact iff each graded piece is.  For dimension bookkeeping
this means the alternating sum of weight-``w`` dimensions vanishes for all
``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import MalformedTable
from .mhs import ZERO, MHSVector

__all__ = ["LadderSpec", "ExactnessVerdict", "check_exact", "middle_of_short_exact"]


@dataclass(frozen=True)
class LadderSpec:
    """``0 -> terms[1] -> ... -> terms[-2] -> 0``; the end zeros are included."""

    terms: tuple[MHSVector, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 3:
            raise MalformedTable("a ladder needs at least three terms")
        if not (self.terms[0].is_zero() and self.terms[-1].is_zero()):
            raise MalformedTable("a ladder starts and ends with 0")
        if self.names and len(self.names) != len(self.terms):
            raise MalformedTable("one name per term")

    @classmethod
    def between_zeros(cls, *terms: MHSVector, names: Sequence[str] = ()) -> LadderSpec:
        names = ("0", *names, "0") if names else ()
        return cls((ZERO, *terms, ZERO), tuple(names))

    def render(self) -> str:
        names = self.names or tuple(t.render() for t in self.terms)
        return " -> ".join(names)


@dataclass(frozen=True)
class ExactnessVerdict:
    passed: bool
    alternating: dict[int, int]

    @property
    def offending(self) -> list[int]:
        return [w for w, s in self.alternating.items() if s != 0]

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "alternating": {str(w): s for w, s in self.alternating.items()},
            "offending_weights": self.offending,
        }


def check_exact(ladder: LadderSpec) -> ExactnessVerdict:
    sums: dict[int, int] = {}
    for i, term in enumerate(ladder.terms):
        sign = -1 if i % 2 else 1
        for w, d in term.dim_by_weight().items():
            sums[w] = sums.get(w, 0) + sign * d
    sums = dict(sorted(sums.items()))
    return ExactnessVerdict(all(s == 0 for s in sums.values()), sums)


def middle_of_short_exact(left: MHSVector, right: MHSVector) -> MHSVector:
    """The middle term of ``0 -> left -> ? -> right -> 0`` up to weight-graded dimensions."""
    return left + right
