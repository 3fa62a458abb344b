"""Pure summands and weight-graded multisets of them."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import MalformedTable

__all__ = ["PureSummand", "MHSVector", "tate", "curve_h1", "dim_by_weight", "parse_mhs", "ZERO"]

_TATE_RE = re.compile(r"^Q(?:\((-?\d+)\))?$")
_H1_RE = re.compile(r"^H1\((\w+)\)(?:\((-?\d+)\))?$")


@dataclass(frozen=True)
class PureSummand:
    """A pure Hodge structure tracked by label, weight and dimension.

    ``hodge`` optionally maps ``(p, q)`` to ``h^{p,q}``.
    """

    label: str
    weight: int
    dim: int
    hodge: tuple[tuple[tuple[int, int], int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise MalformedTable(f"{self.label}: dimension must be positive")
        m = _TATE_RE.match(self.label)
        if m:
            n = -int(m.group(1) or 0)
            if (self.weight, self.dim) != (2 * n, 1):
                raise MalformedTable(f"{self.label} has weight {2 * n} and dimension 1")
        m = _H1_RE.match(self.label)
        if m and m.group(1) == "E":
            n = -int(m.group(2) or 0)
            if (self.weight, self.dim) != (1 + 2 * n, 2):
                raise MalformedTable(f"{self.label} has weight {1 + 2 * n} and dimension 2")
        if self.hodge:
            h = dict(self.hodge)
            if sum(h.values()) != self.dim:
                raise MalformedTable(f"{self.label}: Hodge numbers do not sum to the dimension")
            if any(h.get((q, p), 0) != v for (p, q), v in h.items()):
                raise MalformedTable(f"{self.label}: Hodge numbers are not symmetric")
            if any(p + q != self.weight for p, q in h):
                raise MalformedTable(f"{self.label}: Hodge type off the weight")

    def twist(self, m: int) -> PureSummand:
        """Tate twist ``(-m)``: weight up by ``2m``."""
        if m == 0:
            return self
        tm = _TATE_RE.match(self.label)
        if tm:
            n = -int(tm.group(1) or 0) + m
            label = "Q" if n == 0 else f"Q(-{n})"
        else:
            h1 = _H1_RE.match(self.label)
            if h1:
                n = -int(h1.group(2) or 0) + m
                label = f"H1({h1.group(1)})" + ("" if n == 0 else f"(-{n})")
            else:
                label = f"{self.label}(-{m})"
        hodge = tuple(((p + m, q + m), v) for (p, q), v in self.hodge)
        return PureSummand(label, self.weight + 2 * m, self.dim, hodge)

    def to_json(self) -> dict:
        out = {"label": self.label, "weight": self.weight, "dim": self.dim}
        if self.hodge:
            out["hodge"] = {f"{p},{q}": v for (p, q), v in self.hodge}
        return out


def tate(n: int = 0) -> PureSummand:
    """``Q(-n)``."""
    return PureSummand("Q" if n == 0 else f"Q(-{n})", 2 * n, 1, (((n, n), 1),))


def curve_h1(curve: str = "E", genus: int = 1, twist: int = 0) -> PureSummand:
    base = PureSummand(f"H1({curve})", 1, 2 * genus, (((1, 0), genus), ((0, 1), genus)))
    return base.twist(twist)


class MHSVector:
    """Direct sum of pure summands with multiplicities; immutable."""

    __slots__ = ("_items",)

    def __init__(self, items: Mapping[PureSummand, int] | Iterable[tuple[PureSummand, int]] = ()):
        pairs = items.items() if isinstance(items, Mapping) else items
        acc: Counter = Counter()
        for s, m in pairs:
            if m < 0:
                raise MalformedTable("multiplicities must be nonnegative")
            if m:
                acc[s] += m
        object.__setattr__(self, "_items", tuple(sorted(acc.items(), key=lambda kv: (kv[0].weight, kv[0].label))))

    def __setattr__(self, name, value):
        raise AttributeError("MHSVector is immutable")

    @classmethod
    def of(cls, summand: PureSummand, mult: int = 1) -> MHSVector:
        return cls([(summand, mult)])

    @property
    def items(self) -> tuple[tuple[PureSummand, int], ...]:
        return self._items

    @property
    def dim(self) -> int:
        return sum(s.dim * m for s, m in self._items)

    def dim_by_weight(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s, m in self._items:
            out[s.weight] = out.get(s.weight, 0) + s.dim * m
        return dict(sorted(out.items()))

    def weights(self) -> set[int]:
        return {s.weight for s, _ in self._items}

    def is_pure(self, weight: int | None = None) -> bool:
        ws = self.weights()
        return not ws or (len(ws) == 1 and (weight is None or ws == {weight}))

    def is_zero(self) -> bool:
        return not self._items

    def __add__(self, other: MHSVector) -> MHSVector:
        return MHSVector(list(self._items) + list(other._items))

    def __mul__(self, n: int) -> MHSVector:
        return MHSVector([(s, m * n) for s, m in self._items])

    __rmul__ = __mul__

    def twist(self, m: int) -> MHSVector:
        return MHSVector([(s.twist(m), k) for s, k in self._items])

    def relabel(self, old: str, new: str) -> MHSVector:
        return MHSVector([(PureSummand(new, s.weight, s.dim, s.hodge) if s.label == old else s, k) for s, k in self._items])

    def multiplicity(self, label: str) -> int:
        return sum(m for s, m in self._items if s.label == label)

    def __eq__(self, other):
        if isinstance(other, MHSVector):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def render(self) -> str:
        if not self._items:
            return "0"
        return " + ".join(s.label if m == 1 else f"{s.label}^{m}" for s, m in self._items)

    __str__ = render

    def __repr__(self):
        return f"MHSVector({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "summands": [dict(s.to_json(), mult=m) for s, m in self._items],
            "dim": self.dim,
            "dim_by_weight": {str(w): d for w, d in self.dim_by_weight().items()},
        }


ZERO = MHSVector()


def dim_by_weight(v: MHSVector) -> dict[int, int]:
    return v.dim_by_weight()


_TERM_RE = re.compile(r"^(?P<label>.+?)(?:\{w=(?P<w>-?\d+),d=(?P<d>\d+)\})?(?:\^(?P<mult>\d+))?$")


def parse_mhs(text: str, registry: Mapping[str, PureSummand] | None = None) -> MHSVector:
    """Parse ``"Q(-1)^5 + H1(E)(-1)"``.

    Tate pieces and ``H1(C)(-m)`` (genus 1) are recognised by label; other
    labels come from ``registry`` (twists ``(-m)`` of registered labels are
    allowed) or carry an explicit ``{w=3,d=2}`` suffix.
    """
    registry = dict(registry or {})
    text = text.strip()
    if text in ("", "0"):
        return ZERO
    items = []
    for raw in text.split(" + "):
        m = _TERM_RE.match(raw.strip())
        if not m:
            raise MalformedTable(f"cannot read summand {raw!r}")
        label, mult = m.group("label").strip(), int(m.group("mult") or 1)
        items.append((_summand(label, m.group("w"), m.group("d"), registry), mult))
    return MHSVector(items)


def _summand(label, w, d, registry) -> PureSummand:
    if w is not None:
        return PureSummand(label, int(w), int(d))
    if label in registry:
        return registry[label]
    tm = _TATE_RE.match(label)
    if tm:
        return tate(-int(tm.group(1) or 0))
    hm = _H1_RE.match(label)
    if hm:
        base = registry.get(f"H1({hm.group(1)})") or curve_h1(hm.group(1))
        return base.twist(-int(hm.group(2) or 0))
    tw = re.match(r"^(.*)\((-\d+)\)$", label)
    if tw and tw.group(1) in registry:
        return registry[tw.group(1)].twist(-int(tw.group(2)))
    raise MalformedTable(f"unknown summand {label!r}; give its weight and dimension as {label}{{w=..,d=..}}")
