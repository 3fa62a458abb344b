"""Cohomology of a space fibred over a curve from its direct-image sheaves,
assuming the Leray spectral sequence degenerates at E_2."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import MalformedTable
from .mhs import ZERO, MHSVector, PureSummand, curve_h1, tate

__all__ = ["SheafDatum", "DirectImageTable", "curve_cohomology", "leray_assemble", "KINDS"]

KINDS = ("constant", "cover", "anti-invariant", "skyscraper")


@dataclass(frozen=True)
class SheafDatum:
    """A constructible sheaf on a rational base curve, up to what its cohomology needs.

    kinds:
      ``constant``        Q_L(-twist)
      ``cover``           pi_* Q_C(-twist) for a finite cover pi: C -> L of genus ``genus``
      ``anti-invariant``  the cokernel of Q_L -> pi_* Q_C for a double cover, twisted
      ``skyscraper``      Q(-twist) at ``points`` points
    """

    kind: str
    twist: int = 0
    curve: str = "E"
    genus: int = 1
    points: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedTable(f"unknown sheaf kind {self.kind!r}")
        if self.kind == "skyscraper" and self.points < 1:
            raise MalformedTable("a skyscraper sheaf needs at least one point")

    @classmethod
    def from_json(cls, obj: Mapping) -> SheafDatum:
        try:
            return cls(
                kind=obj["kind"],
                twist=int(obj.get("twist", 0)),
                curve=obj.get("curve", "E"),
                genus=int(obj.get("genus", 1)),
                points=int(obj.get("points", 0)),
            )
        except KeyError as exc:
            raise MalformedTable(f"sheaf datum lacks {exc}") from None

    def render(self) -> str:
        tw = "" if self.twist == 0 else f"(-{self.twist})"
        if self.kind == "constant":
            return f"Q_L{tw}"
        if self.kind == "cover":
            return f"pi_*Q_{self.curve}{tw}"
        if self.kind == "anti-invariant":
            return f"(pi_*Q_{self.curve}/Q_L){tw}"
        return f"Q_Sigma{tw} [{self.points} points]"


def curve_cohomology(s: SheafDatum) -> tuple[MHSVector, MHSVector, MHSVector]:
    """``(H^0, H^1, H^2)`` of the sheaf on the base ``L = P^1``."""
    m = s.twist
    if s.kind == "constant":
        return MHSVector.of(tate(m)), ZERO, MHSVector.of(tate(m + 1))
    h1 = MHSVector.of(curve_h1(s.curve, s.genus, m)) if s.genus else ZERO
    if s.kind == "cover":
        return MHSVector.of(tate(m)), h1, MHSVector.of(tate(m + 1))
    if s.kind == "anti-invariant":
        return ZERO, h1, ZERO
    return MHSVector.of(tate(m), s.points), ZERO, ZERO


@dataclass(frozen=True)
class DirectImageTable:
    """``sheaves[q]`` lists the summands of ``R^q`` (q = 0..4) over the base curve."""

    base: str
    sheaves: Mapping[int, tuple[SheafDatum, ...]] = field(default_factory=dict)
    top: int = 6

    def __post_init__(self):
        clean = {}
        for q, data in self.sheaves.items():
            q = int(q)
            if not 0 <= q <= 4:
                raise MalformedTable(f"direct image in degree {q} outside 0..4")
            clean[q] = tuple(data)
        object.__setattr__(self, "sheaves", dict(sorted(clean.items())))
        if self.top < max(clean, default=0) + 2:
            raise MalformedTable("total degree range too small for the table")

    @classmethod
    def from_json(cls, obj: Mapping) -> DirectImageTable:
        try:
            sheaves = {int(q): tuple(SheafDatum.from_json(s) for s in lst) for q, lst in obj["sheaves"].items()}
            return cls(obj.get("base", "L"), sheaves, int(obj.get("top", 6)))
        except (TypeError, ValueError, AttributeError) as exc:
            raise MalformedTable(f"bad direct image table: {exc}") from None
        except KeyError as exc:
            raise MalformedTable(f"direct image table lacks {exc}") from None

    def e2(self) -> dict[tuple[int, int], MHSVector]:
        """``E_2^{p,q} = H^p(L, R^q)``."""
        out = {}
        for q, data in self.sheaves.items():
            for p in range(3):
                acc = ZERO
                for s in data:
                    acc = acc + curve_cohomology(s)[p]
                out[(p, q)] = acc
        return out


def leray_assemble(table: DirectImageTable) -> tuple[MHSVector, ...]:
    """``H^n = sum_{p+q=n} H^p(L, R^q)`` for ``n = 0..top``."""
    total = [ZERO] * (table.top + 1)
    for (p, q), v in table.e2().items():
        total[p + q] = total[p + q] + v
    return tuple(total)
