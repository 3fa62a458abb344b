"""Dense univariate polynomials over exact scalars."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from ..errors import ZeroPolynomial
from .scalar import Quad, Scalar, as_scalar, field_of, render_scalar, sort_key, sqrt_scalar

__all__ = ["Poly", "ZERO_DEGREE", "rational_roots", "divisors"]

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


class Poly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of ``var**k``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c, var: str = "x") -> Poly:
        return cls((c,), var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> Poly:
        return cls([0] * k + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x", lead=1) -> Poly:
        p = cls((lead,), var)
        for r in roots:
            p = p * cls((-as_scalar(r), 1), var)
        return p

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def order(self) -> int:
        """Lowest power with a nonzero coefficient (ZERO_DEGREE for zero)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return ZERO_DEGREE

    def _like(self, coeffs) -> Poly:
        return Poly(coeffs, self.var)

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, str):
            return None
        try:
            return Poly((as_scalar(other),), self.var)
        except TypeError:
            return None

    # arithmetic

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return self._like(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-c for c in self.coeffs)

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
        if not self.coeffs or not o.coeffs:
            return self._like(())
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self._like((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        c = as_scalar(c)
        return self._like(a * c for a in self.coeffs)

    def __truediv__(self, other):
        # only division by a scalar; use divmod for polynomial division
        if isinstance(other, Poly):
            if other.is_constant() and not other.is_zero():
                other = other.coeffs[0]
            else:
                return NotImplemented
        c = as_scalar(other)
        return self.scale(1 / c)

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dv = other.degree
        for k in range(len(rem) - 1, dv - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lead
            q[k - dv] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dv + j] = rem[k - dv + j] - f * b
        return self._like(q), self._like(rem[:dv] if dv > 0 else ())

    def __floordiv__(self, other: Poly):
        return divmod(self, other)[0]

    def __mod__(self, other: Poly):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> Poly:
        return self._like(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, x):
        """Evaluate at a scalar, or compose with another Poly."""
        if isinstance(x, Poly):
            acc = Poly((), x.var)
        else:
            x = as_scalar(x)
            acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a) -> Poly:
        """``p(x + a)``."""
        return self(Poly((as_scalar(a), 1), self.var))

    def taylor(self, a) -> list[Scalar]:
        """Coefficients of ``p(a + h)`` in ``h``: ``p^(r)(a) / r!``."""
        return list(self.shift(a).coeffs)

    def with_var(self, var: str) -> Poly:
        return Poly(self.coeffs, var)

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_rational(self) -> bool:
        return not any(isinstance(c, Quad) for c in self.coeffs)

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, str):
            return NotImplemented
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == ((o,) if o != 0 else ())

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self, var: str | None = None) -> str:
        """Text in the package's expression grammar (re-parseable)."""
        var = var or self.var
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if isinstance(c, Quad):
                cs = f"({render_scalar(c)})"
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                cs = render_scalar(abs(c))
            if mono and cs == "1":
                body = mono
            elif mono:
                body = f"{cs}*{mono}"
            else:
                body = cs
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    divs = [1]
    for p, e in _factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _integer_coefficients(p: Poly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def _deflate(p: Poly, r: Scalar) -> tuple[Poly, int]:
    lin = Poly((-r, 1), p.var)
    mult = 0
    while p.degree >= 1:
        q, rem = divmod(p, lin)
        if not rem.is_zero():
            break
        p = q
        mult += 1
    return p, mult


def _rational_candidates(p: Poly) -> list[Fraction]:
    """Roots ``a/b`` of the integer form of ``p``, found by the rational-root theorem.

    Candidates are screened with ``(b - a) | P(1)`` and ``(b + a) | P(-1)``
    before an integer Horner test.
    """
    ints = _integer_coefficients(p)
    a0, an = ints[0], ints[-1]
    n = len(ints) - 1
    p1, m1 = sum(ints), sum(c if k % 2 == 0 else -c for k, c in enumerate(ints))
    dens = divisors(an)
    out = []
    for num in divisors(a0):
        for den in dens:
            if gcd(num, den) != 1:
                continue
            for a in (num, -num):
                if p1 and (den - a) and p1 % (den - a):
                    continue
                if m1 and (den + a) and m1 % (den + a):
                    continue
                acc = 0
                pw = 1
                for c in reversed(ints):  # sum c_k a^k den^(n-k), highest first
                    acc = acc * a + c * pw
                    pw *= den
                if acc == 0:
                    out.append(Fraction(a, den))
                    if len(out) == n:
                        return sorted(out)
    return sorted(out)


def rational_roots(p: Poly, d: int | None = None) -> tuple[list[tuple[Scalar, int]], Poly]:
    """All roots of ``p`` in its coefficient field, with multiplicities.

    The coefficient field is Q, or Q(sqrt(d)) when ``p`` has irrational
    coefficients or ``d`` is given.  Rational roots come from the rational-root
    theorem with repeated deflation; a remaining factor of degree <= 2 is
    solved with the quadratic formula inside the field.  Returns
    ``(roots, residual)`` where ``residual`` has no roots in the field and
    ``lead * prod (x - r)**m * residual == p`` for a scalar ``lead``
    (the residual is monic when nonconstant).
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    field = field_of(*p.coeffs)
    if field is not None and d is not None and d != field:
        raise ValueError("coefficient field differs from requested field")
    d = field if field is not None else d

    roots: list[tuple[Scalar, int]] = []
    rest = p.monic()
    z = rest.order()
    if z > 0:
        roots.append((Fraction(0), z))
        rest = Poly(rest.coeffs[z:], p.var)

    if rest.degree >= 1:
        if rest.is_rational():
            rational_part = rest
        else:
            # a rational root must kill both the rational and sqrt(d) parts
            re = Poly([c.a if isinstance(c, Quad) else c for c in rest.coeffs], p.var)
            im = Poly([c.b if isinstance(c, Quad) else 0 for c in rest.coeffs], p.var)
            rational_part = re.gcd(im)
        if rational_part.degree >= 1:
            for cand in _rational_candidates(rational_part):
                if cand == 0:
                    continue
                rest, m = _deflate(rest, cand)
                if m:
                    roots.append((cand, m))
                if rest.degree < 1:
                    break

    if rest.degree == 1:
        roots.append((-rest.coeffs[0] / rest.coeffs[1], 1))
        rest = Poly((1,), p.var)
    elif rest.degree == 2 and d is not None:
        c, b, a = rest.coeffs
        disc = b * b - 4 * a * c
        s = sqrt_scalar(disc, d)
        if s is not None:
            r1 = (-b + s) / (2 * a)
            r2 = (-b - s) / (2 * a)
            if r1 == r2:
                roots.append((r1, 2))
            else:
                roots.extend([(r1, 1), (r2, 1)])
            rest = Poly((1,), p.var)

    roots.sort(key=lambda rm: sort_key(rm[0]))
    return roots, rest.monic()
