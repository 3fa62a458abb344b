"""Differential operators in the algebra Q<t, Theta>, Theta = t d/dt.

An operator is kept in the normal form ``sum_i t^i q_i(Theta)`` with every
power of ``t`` to the left of every power of ``Theta``; products are brought
to normal form with ``Theta^m t^k = t^k (Theta + k)^m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import NegativePowerOfT, NonIntegerExponent, ParseError, ZeroOperator
from ..exact import Poly, Scalar, as_scalar, render_scalar
from ..exact.scalar import Quad, sqrt_of_integer
from ..expr import evaluate, parse, strip_comments

__all__ = [
    "ThetaOperator",
    "DOperator",
    "parse_operator",
    "load_operator",
    "to_d_form",
    "from_d_form",
    "pullback_power",
    "stirling2",
    "THETA",
]

THETA = "Theta"


def _tpoly(coeffs) -> Poly:
    return Poly(coeffs, THETA)


class ThetaOperator:
    """``sum_i t^i * columns[i](Theta)``; immutable, trailing zero columns dropped."""

    __slots__ = ("columns",)

    def __init__(self, columns: Iterable[Poly | Sequence] = ()):
        cols = [c.with_var(THETA) if isinstance(c, Poly) else _tpoly(c) for c in columns]
        while cols and cols[-1].is_zero():
            cols.pop()
        object.__setattr__(self, "columns", tuple(cols))

    def __setattr__(self, name, value):
        raise AttributeError("ThetaOperator is immutable")

    # construction

    @classmethod
    def constant(cls, c) -> ThetaOperator:
        return cls([_tpoly([c])])

    @classmethod
    def t(cls, k: int = 1) -> ThetaOperator:
        return cls([_tpoly(())] * k + [_tpoly([1])])

    @classmethod
    def theta(cls) -> ThetaOperator:
        return cls([_tpoly([0, 1])])

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence]) -> ThetaOperator:
        """``grid[i][j]`` is the coefficient of ``t^i Theta^j``."""
        return cls([_tpoly(row) for row in grid])

    # shape

    @property
    def order(self) -> int:
        return max((c.degree for c in self.columns), default=-1)

    @property
    def t_span(self) -> int:
        return len(self.columns) - 1

    def is_zero(self) -> bool:
        return not self.columns

    def column(self, i: int) -> Poly:
        return self.columns[i] if 0 <= i < len(self.columns) else _tpoly(())

    def coeff(self, i: int, j: int) -> Scalar:
        return self.column(i).coeff(j)

    def grid(self) -> list[list[Scalar]]:
        n = self.order + 1
        return [[c.coeff(j) for j in range(n)] for c in self.columns]

    def lowest_column(self) -> int:
        for i, c in enumerate(self.columns):
            if not c.is_zero():
                return i
        raise ZeroOperator("zero operator has no columns")

    def strip_t(self) -> ThetaOperator:
        """Left-divide by the largest power of ``t`` dividing every column."""
        return ThetaOperator(self.columns[self.lowest_column():])

    # arithmetic

    def _lift(self, other) -> ThetaOperator | None:
        if isinstance(other, ThetaOperator):
            return other
        if isinstance(other, (int, Fraction, Quad)):
            return ThetaOperator.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.columns), len(o.columns))
        return ThetaOperator(self.column(i) + o.column(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ThetaOperator(-c for c in self.columns)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ThetaOperator()
        out = [_tpoly(())] * (len(self.columns) + len(o.columns) - 1)
        for a, p in enumerate(self.columns):
            if p.is_zero():
                continue
            for b, q in enumerate(o.columns):
                if q.is_zero():
                    continue
                # t^a p(Theta) t^b q(Theta) = t^(a+b) p(Theta + b) q(Theta)
                out[a + b] = out[a + b] + p.shift(b) * q
        return ThetaOperator(out)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ThetaOperator.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> ThetaOperator:
        return ThetaOperator(col.scale(c) for col in self.columns)

    def is_proportional(self, other: ThetaOperator) -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        i = self.lowest_column()
        if other.lowest_column() != i:
            return False
        f = other.column(i).leading / self.column(i).leading
        return self.scale(f) == other

    # comparison / display

    def __eq__(self, other):
        if isinstance(other, ThetaOperator):
            return self.columns == other.columns
        return NotImplemented

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f"ThetaOperator({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Normal-form text; ``parse_operator(op.render()) == op``."""
        parts = []
        for i, col in enumerate(self.columns):
            if col.is_zero():
                continue
            body = col.render()
            if i == 0:
                parts.append(body)
            else:
                tp = "t" if i == 1 else f"t^{i}"
                parts.append(f"{tp}*({body})")
        if not parts:
            return "0"
        return " + ".join(parts)


class _ThetaAlgebra:
    """Evaluation rules for operator texts."""

    def __init__(self, text: str):
        self.text = text

    def number(self, value):
        return ThetaOperator.constant(value)

    def symbol(self, name, pos):
        if name == "t":
            return ThetaOperator.t()
        if name in (THETA, "T"):
            return ThetaOperator.theta()
        raise ParseError(f"unknown symbol {name!r}", pos, self.text)

    def constant_value(self, value: ThetaOperator):
        if value.is_zero():
            return Fraction(0)
        if value.t_span == 0 and value.order == 0:
            return value.coeff(0, 0)
        return None

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        c = self.constant_value(b)
        if c is None:
            raise ParseError("can only divide by a constant", pos, self.text)
        if c == 0:
            raise ParseError("division by zero", pos, self.text)
        return a.scale(1 / c)

    def power(self, a, n, pos):
        e = self.constant_value(n)
        if e is None or isinstance(e, Quad) or Fraction(e).denominator != 1:
            raise NonIntegerExponent("exponent must be an integer", pos, self.text)
        e = int(e)
        if e < 0:
            c = self.constant_value(a)
            if c is None:
                if a == ThetaOperator.t():
                    raise NegativePowerOfT("negative power of t", pos, self.text)
                raise ParseError("negative power of a non-constant", pos, self.text)
            return ThetaOperator.constant(c ** e)
        return a ** e

    def call(self, func, arg, pos):
        c = self.constant_value(arg)
        if c is None or isinstance(c, Quad) or Fraction(c).denominator != 1:
            raise ParseError("sqrt takes an integer literal", pos, self.text)
        return ThetaOperator.constant(sqrt_of_integer(int(c)))


def parse_operator(text: str) -> ThetaOperator:
    """Parse an operator written in ``t`` and ``Theta`` (aliases ``Θ``, ``T``).

    ``#`` comments and backslash line continuations are accepted.
    """
    cleaned = " ".join(strip_comments(text).split("\n"))
    return evaluate(parse(cleaned), _ThetaAlgebra(cleaned))


def load_operator(path) -> ThetaOperator:
    with open(path, encoding="utf-8") as fh:
        return parse_operator(fh.read())


# d/dt form


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@dataclass(frozen=True)
class DOperator:
    """``sum_k coeffs[k](t) * (d/dt)^k``."""

    coeffs: tuple[Poly, ...]
    var: str = "t"

    def __init__(self, coeffs: Iterable[Poly], var: str = "t"):
        cs = [c.with_var(var) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Poly:
        return self.coeffs[-1]

    def shift(self, a) -> DOperator:
        """Substitute ``t = a + u``; ``d/dt = d/du``."""
        return DOperator([c.shift(a) for c in self.coeffs], self.var)

    def left_multiply_power(self, m: int) -> DOperator:
        return DOperator([c * Poly.monomial(m, 1, self.var) for c in self.coeffs], self.var)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            d = "" if k == 0 else ("*D" if k == 1 else f"*D^{k}")
            parts.append(f"({c.render()}){d}")
        return " + ".join(parts) or "0"


def to_d_form(op: ThetaOperator) -> DOperator:
    """Rewrite with ``Theta^k = sum_j S(k, j) t^j (d/dt)^j``."""
    n = op.order
    if n < 0:
        raise ZeroOperator("zero operator")
    acc = [[Fraction(0)] * (op.t_span + n + 1) for _ in range(n + 1)]
    for i, col in enumerate(op.columns):
        for k, c in enumerate(col.coeffs):
            if c == 0:
                continue
            for j in range(1 if k else 0, k + 1):
                s = stirling2(k, j)
                if s:
                    acc[j][i + j] = acc[j][i + j] + s * c
    return DOperator([Poly(row, "t") for row in acc])


def _falling(j: int) -> Poly:
    p = _tpoly([1])
    for r in range(j):
        p = p * _tpoly([-r, 1])
    return p


def from_d_form(dop: DOperator) -> ThetaOperator:
    """Inverse of :func:`to_d_form`, using ``t^j (d/dt)^j = Theta (Theta-1) ... (Theta-j+1)``.

    Requires ``t^j`` to divide the coefficient of ``(d/dt)^j``.
    """
    out: dict[int, Poly] = {}
    for j, a in enumerate(dop.coeffs):
        if a.is_zero():
            continue
        if a.order() < j:
            raise NegativePowerOfT(
                f"coefficient of D^{j} is not divisible by {dop.var}^{j}; clear powers first"
            )
        fall = _falling(j)
        for e, c in enumerate(a.coeffs):
            if c == 0:
                continue
            out[e - j] = out.get(e - j, _tpoly(())) + fall.scale(c)
    span = max(out, default=-1)
    return ThetaOperator(out.get(i, _tpoly(())) for i in range(span + 1))


def pullback_power(op: ThetaOperator, k: int) -> ThetaOperator:
    """Base change ``t -> t^k``: ``Theta -> Theta/k``, ``t^i -> t^(k i)``, times ``k^order``."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    n = op.order
    scale_k = Fraction(k) ** n
    cols: list[Poly] = [_tpoly(())] * (k * op.t_span + 1)
    inv = _tpoly([0, Fraction(1, k)])
    for i, col in enumerate(op.columns):
        cols[k * i] = col(inv).scale(scale_k)
    return ThetaOperator(cols)


def render_coefficients(values: Iterable[Scalar]) -> list[str]:
    return [render_scalar(as_scalar(v)) for v in values]
