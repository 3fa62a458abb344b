"""Linear forms on P^3, one-parameter families of eight-plane arrangements,
coordinate substitutions and equality up to scaling and permutation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import Degenerate, ParseError, SingularMatrix
from ..exact import ExactMatrix, Poly, Scalar, as_scalar, determinant, render_scalar, sort_key
from ..exact.scalar import Quad, sqrt_of_integer
from ..expr import evaluate, parse, strip_comments

__all__ = [
    "COORDS",
    "LinForm",
    "ArrangementFamily",
    "Arrangement",
    "evaluate_family",
    "apply_transform",
    "equivalent",
    "families_equivalent",
    "proportional",
    "parse_form",
    "parse_arrangement",
    "load_arrangement",
]

COORDS = ("x", "y", "z", "v")
PARAM = "s"


def _as_poly(c, var: str = PARAM) -> Poly:
    if isinstance(c, Poly):
        return c.with_var(var)
    return Poly((as_scalar(c),), var)


def _minor_zero(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    return all((a[i] * b[j] - a[j] * b[i]).is_zero() for i in range(4) for j in range(i + 1, 4))


def proportional(f: LinForm, g: LinForm) -> bool:
    """Proportionality over the field of rational functions in the parameter."""
    return _minor_zero(f.coeffs, g.coeffs)


@dataclass(frozen=True, eq=False)
class LinForm:
    """``c_x x + c_y y + c_z z + c_v v`` with coefficients polynomial in the parameter.

    ``coeffs`` is the canonical scale (leading coefficient of the first
    nonzero entry equal to 1); ``original`` keeps the form as given.
    Equality and hashing use the canonical scale.
    """

    coeffs: tuple[Poly, Poly, Poly, Poly]
    original: tuple[Poly, Poly, Poly, Poly] = field(repr=False)
    text: str | None = field(default=None, repr=False, compare=False)

    def __init__(self, coeffs: Iterable, text: str | None = None, param: str = PARAM):
        orig = tuple(_as_poly(c, param) for c in coeffs)
        if len(orig) != 4:
            raise ValueError("a linear form on P^3 has four coefficients")
        first = next((c for c in orig if not c.is_zero()), None)
        if first is None:
            raise Degenerate((), "linear form vanishes identically")
        lead = first.leading
        object.__setattr__(self, "coeffs", tuple(c.scale(1 / lead) for c in orig))
        object.__setattr__(self, "original", orig)
        object.__setattr__(self, "text", text)

    @classmethod
    def of(cls, *coeffs, text: str | None = None) -> LinForm:
        return cls(coeffs, text=text)

    @property
    def param(self) -> str:
        return self.coeffs[0].var

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    @property
    def vector(self) -> tuple[Scalar, ...]:
        """Constant coefficients (requires :meth:`is_constant`)."""
        if not self.is_constant():
            raise ValueError("form depends on the parameter")
        return tuple(c.coeff(0) for c in self.coeffs)

    def evaluate(self, s0) -> LinForm:
        s0 = as_scalar(s0)
        return LinForm([c(s0) for c in self.original], param=self.param)

    def substitute_param(self, p: Poly) -> LinForm:
        return LinForm([c(p) for c in self.original], param=p.var)

    def __call__(self, point: Sequence) -> Scalar:
        acc = Fraction(0)
        for c, x in zip(self.vector, point):
            acc = acc + c * as_scalar(x)
        return acc

    def __eq__(self, other):
        if isinstance(other, LinForm):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, canonical: bool = False) -> str:
        cs = self.coeffs if canonical else self.original
        terms = []
        for c, var in zip(cs, COORDS):
            if c.is_zero():
                continue
            if c.is_constant():
                k = c.coeff(0)
                if isinstance(k, Quad):
                    terms.append(f"({render_scalar(k)})*{var}")
                elif k == 1:
                    terms.append(var)
                elif k == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{render_scalar(k)}*{var}")
            else:
                terms.append(f"({c.render()})*{var}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LinForm({self.render()!r})"


def _validate_pairs(forms: Sequence[LinForm]):
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            if proportional(forms[i], forms[j]):
                raise Degenerate((i, j))


@dataclass(frozen=True)
class ArrangementFamily:
    """Eight forms depending polynomially on one affine parameter."""

    forms: tuple[LinForm, ...]
    label: str = "family"
    param: str = PARAM

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if len(self.forms) != 8:
            raise ValueError(f"expected 8 forms, got {len(self.forms)}")
        _validate_pairs(self.forms)

    def evaluate(self, s0) -> Arrangement:
        return evaluate_family(self, s0)

    def reparametrize(self, p: Poly) -> ArrangementFamily:
        """Substitute the parameter by the polynomial ``p`` (e.g. ``s - 2``)."""
        return ArrangementFamily(tuple(f.substitute_param(p) for f in self.forms), self.label, p.var)

    def is_constant(self) -> bool:
        return all(f.is_constant() for f in self.forms)


@dataclass(frozen=True)
class Arrangement:
    """Eight pairwise non-proportional planes with constant coefficients."""

    forms: tuple[LinForm, ...]
    param_value: Scalar | None = None
    label: str = "arrangement"

    def __post_init__(self):
        forms = tuple(self.forms)
        object.__setattr__(self, "forms", forms)
        if len(forms) != 8:
            raise ValueError(f"expected 8 forms, got {len(forms)}")
        if not all(f.is_constant() for f in forms):
            raise ValueError("arrangement forms must have constant coefficients")
        _validate_pairs(forms)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], label: str = "arrangement", param_value=None) -> Arrangement:
        return cls(tuple(LinForm(v) for v in vectors), param_value, label)

    @property
    def vectors(self) -> list[tuple[Scalar, ...]]:
        return [f.vector for f in self.forms]


def evaluate_family(f: ArrangementFamily, s0) -> Arrangement:
    """The fibre at ``s0``; Degenerate when a form vanishes or two coincide."""
    s0 = as_scalar(s0)
    forms = []
    for i, form in enumerate(f.forms):
        try:
            forms.append(form.evaluate(s0))
        except Degenerate:
            raise Degenerate((i,)) from None
    return Arrangement(tuple(forms), s0, f.label)


def apply_transform(a, M):
    """Compose every form with the substitution ``coords -> M coords``.

    The new coefficient vector of a form ``c`` is ``M^T c``.  Works on an
    :class:`Arrangement` (scalar ``M``) or an :class:`ArrangementFamily`
    (entries may be polynomials in the parameter).
    """
    M = M if isinstance(M, ExactMatrix) else ExactMatrix(M)
    if M.shape != (4, 4):
        raise ValueError("substitution must be 4x4")
    det = determinant(M)
    if det == 0 or (isinstance(det, Poly) and det.is_zero()):
        raise SingularMatrix("substitution matrix is singular")

    def image(form: LinForm) -> LinForm:
        c = form.original
        new = []
        for j in range(4):
            acc = Fraction(0)
            for i in range(4):
                acc = c[i] * M[i, j] + acc
            new.append(acc)
        return LinForm(new, param=form.param)

    forms = tuple(image(f) for f in a.forms)
    if isinstance(a, Arrangement):
        return Arrangement(forms, a.param_value, a.label)
    return ArrangementFamily(forms, a.label, a.param)


def _canonical_multiset(a: Arrangement) -> Counter:
    return Counter(f.coeffs for f in a.forms)


def equivalent(a: Arrangement, b: Arrangement) -> bool:
    """Equal as sets of planes (forms up to scaling and order).

    This is not a search for a projective transformation; apply the known
    substitution first with :func:`apply_transform`.
    """
    return _canonical_multiset(a) == _canonical_multiset(b)


def families_equivalent(f: ArrangementFamily, g: ArrangementFamily) -> bool:
    """Each form of ``f`` proportional (over Q(s)) to a distinct form of ``g``."""
    remaining = list(g.forms)
    for form in f.forms:
        hit = next((k for k, h in enumerate(remaining) if proportional(form, h)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return not remaining


# text format


class _FormPoly:
    """Commutative polynomial in the coordinates with Poly(param) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], Poly]):
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @staticmethod
    def const(p: Poly) -> _FormPoly:
        return _FormPoly({(0, 0, 0, 0): p})

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {(0, 0, 0, 0)}:
            p = self.terms[(0, 0, 0, 0)]
            if p.is_constant():
                return p.coeff(0)
        return None

    def __add__(self, other: _FormPoly) -> _FormPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return _FormPoly(out)

    def __neg__(self):
        return _FormPoly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: _FormPoly) -> _FormPoly:
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        return _FormPoly(out)


class _FormAlgebra:
    def __init__(self, text, coords, param, bindings):
        self.text = text
        self.coords = coords
        self.param = param
        self.bindings = bindings

    def number(self, value):
        return _FormPoly.const(Poly((value,), PARAM))

    def symbol(self, name, pos):
        if name in self.coords:
            exps = [0, 0, 0, 0]
            exps[self.coords.index(name)] = 1
            return _FormPoly({tuple(exps): Poly((1,), PARAM)})
        if name in self.bindings:
            return _FormPoly.const(_as_poly(self.bindings[name]))
        if name == self.param:
            return _FormPoly.const(Poly((0, 1), PARAM))
        raise ParseError(f"unknown symbol {name!r}", pos, self.text)

    def constant_value(self, v):
        return v.constant_value()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        c = b.constant_value()
        if c is None or c == 0:
            raise ParseError("can only divide by a nonzero constant", pos, self.text)
        return a * _FormPoly.const(Poly((1 / c,), PARAM))

    def power(self, a, n, pos):
        e = n.constant_value()
        if e is None or isinstance(e, Quad) or Fraction(e).denominator != 1 or e < 0:
            raise ParseError("exponent must be a nonnegative integer", pos, self.text)
        out = _FormPoly.const(Poly((1,), PARAM))
        for _ in range(int(e)):
            out = out * a
        return out

    def call(self, func, arg, pos):
        c = arg.constant_value()
        if c is None or isinstance(c, Quad) or Fraction(c).denominator != 1:
            raise ParseError("sqrt takes an integer literal", pos, self.text)
        return _FormPoly.const(Poly((sqrt_of_integer(int(c)),), PARAM))


def parse_form(
    text: str,
    coords: Sequence[str] = COORDS,
    param: str = PARAM,
    bindings: Mapping[str, object] | None = None,
) -> LinForm:
    """Parse one linear form.  ``coords`` names the four coordinates in order;
    ``bindings`` maps extra symbols to scalars or polynomials in the parameter."""
    value = evaluate(parse(text), _FormAlgebra(text, tuple(coords), param, dict(bindings or {})))
    coeffs = [Poly((), PARAM)] * 4
    for exps, c in value.terms.items():
        if sum(exps) != 1:
            raise ParseError(f"{text!r} is not a linear form in {', '.join(coords)}", 0, text)
        coeffs[exps.index(1)] = c
    return LinForm(coeffs, text=text.strip())


def parse_arrangement(
    text: str,
    label: str = "file",
    coords: Sequence[str] = COORDS,
    param: str = PARAM,
    bindings: Mapping[str, object] | None = None,
) -> ArrangementFamily:
    """One form per non-blank line; ``#`` starts a comment.

    Errors are reported with the 1-based line number.  Degenerate input (a
    zero form, proportional forms) raises :class:`Degenerate`.
    """
    forms = []
    for lineno, raw in enumerate(strip_comments(text).splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        try:
            forms.append(parse_form(line, coords, param, bindings))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.detail}", exc.position, line) from None
        except Degenerate:
            raise Degenerate((len(forms),)) from None
    return ArrangementFamily(tuple(forms), label)


def load_arrangement(path, **kwargs) -> ArrangementFamily:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read(), **kwargs)


def sort_forms_key(f: LinForm):
    return tuple(sort_key(c.coeff(0)) for c in f.coeffs)
