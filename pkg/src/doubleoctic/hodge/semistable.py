"""Limit cohomology of a semistable fibre with two components.

For components ``Z0`` and ``P`` meeting in the surface ``Q`` the E_1 page of
the monodromy-weight spectral sequence has, in degree ``k``, the row::

    H^{k-2}(Q)(-1)  ->  H^k(Z0) + H^k(P)  ->  H^k(Q)

When the left map is injective and the right map surjective the limit
``H^k`` is the middle cohomology of the row.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..errors import MalformedTable, PurityViolation
from .mhs import ZERO, MHSVector, PureSummand

__all__ = ["SemistableFibre", "E1Row", "e1_row", "limit_from_e1", "limit_cohomology", "euler"]


def _check_duality(table: Sequence[MHSVector], top: int, name: str):
    if len(table) != top + 1:
        raise MalformedTable(f"{name}: expected degrees 0..{top}")
    for k in range(top + 1):
        if table[k].dim != table[top - k].dim:
            raise MalformedTable(f"{name}: dim H^{k} != dim H^{top - k}")


@dataclass(frozen=True)
class SemistableFibre:
    z0: tuple[MHSVector, ...]
    ptilde: tuple[MHSVector, ...]
    q: tuple[MHSVector, ...]

    def __post_init__(self):
        for name in ("z0", "ptilde", "q"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        _check_duality(self.z0, 6, "Z0")
        _check_duality(self.ptilde, 6, "P")
        _check_duality(self.q, 4, "Q")
        for name, table in (("Z0", self.z0), ("P", self.ptilde), ("Q", self.q)):
            for k, v in enumerate(table):
                if not v.is_pure(k):
                    raise MalformedTable(f"H^{k}({name}) is not pure of weight {k}")


def _q(f: SemistableFibre, k: int) -> MHSVector:
    return f.q[k] if 0 <= k < len(f.q) else ZERO


@dataclass(frozen=True)
class E1Row:
    k: int
    left: MHSVector
    middle: MHSVector
    right: MHSVector

    def graded(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v, sign in ((self.middle, 1), (self.left, -1), (self.right, -1)):
            for w, d in v.dim_by_weight().items():
                out[w] = out.get(w, 0) + sign * d
        return dict(sorted(out.items()))

    def render(self) -> str:
        return f"{self.left} -> {self.middle} -> {self.right}"


def e1_row(f: SemistableFibre, k: int) -> E1Row:
    return E1Row(k, _q(f, k - 2).twist(1), f.z0[k] + f.ptilde[k], _q(f, k))


def _cancel(middle: MHSVector, *outer: MHSVector) -> MHSVector:
    """Remove the outer summands from the middle, matching labels first."""
    left = Counter(dict(middle.items))
    rest: dict[int, int] = {}
    for v in outer:
        for s, m in v.items:
            take = min(left[s], m)
            left[s] -= take
            if m > take:
                rest[s.weight] = rest.get(s.weight, 0) + s.dim * (m - take)
    # leftover dimension is removed from whatever remains in that weight
    for w, need in rest.items():
        for s in sorted((s for s in left if s.weight == w and left[s]), key=lambda s: s.label):
            while need >= s.dim and left[s]:
                left[s] -= 1
                need -= s.dim
        if need:
            pool = sum(s.dim * m for s, m in left.items() if s.weight == w)
            for s in [s for s in left if s.weight == w]:
                left[s] = 0
            left[PureSummand(f"Gr{w}", w, pool - need)] = 1
    return MHSVector(list(left.items()))


def limit_from_e1(f: SemistableFibre, k: int, *, injective_left_surjective_right: bool) -> MHSVector:
    """Limit ``H^k`` from the E_1 row in degree ``k``.

    The flag records the purity assumption (left map injective, right map
    surjective) and must be passed explicitly; without it the row does not
    determine the limit.
    """
    if not injective_left_surjective_right:
        raise ValueError("the E_1 row alone does not determine the limit without the purity assumption")
    row = e1_row(f, k)
    graded = row.graded()
    bad = {w: d for w, d in graded.items() if d < 0}
    if bad:
        raise PurityViolation(f"degree {k}: negative dimension at weight(s) {sorted(bad)}")
    out = _cancel(row.middle, row.left, row.right)
    assert out.dim_by_weight() == {w: d for w, d in graded.items() if d}
    return out


def limit_cohomology(f: SemistableFibre) -> tuple[MHSVector, ...]:
    return tuple(limit_from_e1(f, k, injective_left_surjective_right=True) for k in range(7))


def euler(table: Sequence[MHSVector]) -> int:
    return sum((-1) ** k * v.dim for k, v in enumerate(table))
