"""Exact scalars: rationals and elements of a quadratic field Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction` values.  An element
``a + b*sqrt(d)`` with ``b != 0`` is a :class:`Quad`; every operation that
produces ``b == 0`` collapses back to a ``Fraction``, so a rational never
carries a field tag and mixes freely with any ``Quad``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

from ..errors import FieldMismatch, ParseError

__all__ = [
    "Quad",
    "Scalar",
    "as_scalar",
    "quad",
    "conjugate",
    "field_of",
    "is_rational",
    "is_square_free",
    "render_scalar",
    "parse_scalar",
    "sqrt_scalar",
    "sort_key",
    "rational_sqrt",
]


def is_square_free(d: int) -> bool:
    if d in (0, 1):
        return False
    n = abs(d)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def _square_part(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``f**2 * r`` with ``r`` square-free (or +-1)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    f = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        p += 1
    return f, sign * n


class Quad:
    """``a + b*sqrt(d)`` with rational ``a``, ``b != 0`` and square-free ``d``.

    Use :func:`quad` to build values; it returns a ``Fraction`` when ``b == 0``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        if b == 0:
            raise ValueError("Quad requires a nonzero irrational part; use quad()")
        if not is_square_free(d):
            raise ValueError(f"d = {d} is not square-free")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", int(d))

    def __setattr__(self, name, value):
        raise AttributeError("Quad is immutable")

    # helpers

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise FieldMismatch(f"cannot combine Q(sqrt({self.d})) with Q(sqrt({other.d}))")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    # arithmetic

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        x, y = c
        return quad(self.a * x + self.d * self.b * y, self.a * y + self.b * x, self.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        return quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if c[1] == 0:
            if c[0] == 0:
                raise ZeroDivisionError("division by zero")
            return quad(self.a / c[0], self.b / c[0], self.d)
        return self * Quad(c[0], c[1], self.d).inverse()

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.inverse() * quad(c[0], c[1], self.d)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("Quad", self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quad({render_scalar(self)})"

    def __str__(self):
        return render_scalar(self)


Scalar = Union[Fraction, Quad]


def quad(a, b, d: int) -> Scalar:
    """Build ``a + b*sqrt(d)``, collapsing to a Fraction when ``b == 0``."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return Quad(Fraction(a), b, d)


def as_scalar(x) -> Scalar:
    if isinstance(x, Quad):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_rational(x) -> bool:
    return not isinstance(x, Quad)


def conjugate(x: Scalar) -> Scalar:
    if isinstance(x, Quad):
        return Quad(x.a, -x.b, x.d)
    return x


def field_of(*values) -> int | None:
    """The common ``d`` of all irrational values, ``None`` if all are rational."""
    d = None
    for v in values:
        if isinstance(v, Quad):
            if d is None:
                d = v.d
            elif d != v.d:
                raise FieldMismatch(f"values from Q(sqrt({d})) and Q(sqrt({v.d}))")
    return d


def sort_key(x: Scalar) -> tuple[Fraction, Fraction]:
    if isinstance(x, Quad):
        return (x.a, x.b)
    return (Fraction(x), Fraction(0))


def rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, m = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and m * m == q.denominator:
        return Fraction(n, m)
    return None


def sqrt_scalar(x: Scalar, d: int | None = None) -> Scalar | None:
    """An exact square root of ``x`` inside Q or Q(sqrt(d)), or ``None``.

    For rational ``x`` and a given ``d``, roots of the form ``b*sqrt(d)`` are
    also found.
    """
    if isinstance(x, Quad):
        if d is not None and d != x.d:
            raise FieldMismatch("sqrt requested in a different field")
        a, b, dd = x.a, x.b, x.d
        # (p + q*sqrt(dd))**2 = a + b*sqrt(dd)  <=>  p^2 + dd*q^2 = a, 2pq = b
        n = rational_sqrt(a * a - dd * b * b)
        if n is None:
            return None
        for p2 in ((a + n) / 2, (a - n) / 2):
            p = rational_sqrt(p2)
            if p:
                return quad(p, b / (2 * p), dd)
        return None
    x = Fraction(x)
    r = rational_sqrt(x)
    if r is not None:
        return r
    if d is not None:
        r = rational_sqrt(x / d)
        if r is not None:
            return quad(0, r, d)
    return None


def _render_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_scalar(x) -> str:
    """Canonical text: ``p``, ``p/q`` or ``a+b*sqrt(d)`` in lowest terms."""
    if isinstance(x, Quad):
        head = "" if x.a == 0 else _render_fraction(x.a)
        if x.b == 1:
            tail = f"sqrt({x.d})"
        elif x.b == -1:
            tail = f"-sqrt({x.d})"
        else:
            tail = f"{_render_fraction(x.b)}*sqrt({x.d})"
        if head and not tail.startswith("-"):
            tail = "+" + tail
        return head + tail
    return _render_fraction(Fraction(x))


_SCALAR_RE = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?\d+(?:/\d+)?)\s*)?
    (?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>[+-]?\d+)\s*\))?
    \s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``p``, ``p/q`` or ``a+b*sqrt(d)`` (signs optional)."""
    m = _SCALAR_RE.match(text)
    if m and m.group("a") and m.group("d") is not None and not m.group("sign"):
        # "b*sqrt(d)" without a rational part
        body = text.strip()
        m2 = _SCALAR_RE.match(("0" if body[:1] in "+-" else "0+") + body)
        if m2 and m2.group("b"):
            m = m2
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ParseError(f"not a scalar literal: {text!r}", 0, text)
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        return a
    if m.group("a") and not m.group("sign"):
        raise ParseError(f"missing sign before sqrt in {text!r}", m.start("d"), text)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    return a + b * sqrt_of_integer(int(m.group("d")))


def sqrt_of_integer(n: int) -> Scalar:
    """``sqrt(n)`` as an exact scalar, pulling square factors out of the radicand."""
    if n == 0:
        return Fraction(0)
    f, r = _square_part(n)
    if r == 1:
        return Fraction(f)
    return quad(0, f, r)
