from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from doubleoctic.errors import FieldMismatch, ParseError, SingularMatrix, ZeroPolynomial
from doubleoctic.exact import (
    ExactMatrix,
    Poly,
    Quad,
    conjugate,
    determinant,
    inverse,
    kernel_basis,
    parse_scalar,
    quad,
    rank,
    rational_roots,
    render_scalar,
    solve,
    sqrt_of_integer,
    sqrt_scalar,
)

F = Fraction
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([-3, -1, 2, 3, 5, -7])


@st.composite
def quads(draw, d=None):
    d = d if d is not None else draw(radicands)
    return quad(draw(fracs), draw(fracs), d)


def to_sympy(x):
    if isinstance(x, Quad):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.d)
    x = F(x)
    return sympy.Rational(x.numerator, x.denominator)


class TestScalars:
    @given(quads())
    def test_render_parse_round_trip(self, x):
        assert parse_scalar(render_scalar(x)) == x

    @given(radicands.flatmap(lambda d: st.tuples(quads(d), quads(d))))
    def test_conjugation_is_a_ring_homomorphism(self, pair):
        x, y = pair
        assert conjugate(x + y) == conjugate(x) + conjugate(y)
        assert conjugate(x * y) == conjugate(x) * conjugate(y)

    @given(radicands.flatmap(lambda d: st.tuples(quads(d), quads(d))))
    def test_field_operations_against_sympy(self, pair):
        x, y = pair
        assert sympy.expand(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0
        if y != 0:
            assert sympy.expand(to_sympy(x / y) * to_sympy(y) - to_sympy(x)) == 0

    def test_collapse_to_fraction(self):
        assert quad(3, 0, 5) == 3 and isinstance(quad(3, 0, 5), Fraction)
        w = quad(F(-1, 2), F(1, 2), -3)
        assert w * w + w + 1 == 0
        assert w**3 == 1

    def test_mixed_fields_refused(self):
        with pytest.raises(FieldMismatch):
            quad(0, 1, 2) + quad(0, 1, 3)

    def test_sqrt(self):
        assert sqrt_of_integer(12) == quad(0, 2, 3)
        assert sqrt_of_integer(-4) == quad(0, 2, -1)
        assert sqrt_of_integer(49) == 7
        assert sqrt_scalar(F(9, 4)) == F(3, 2)
        assert sqrt_scalar(F(-3)) is None
        assert sqrt_scalar(F(-3), -3) == quad(0, 1, -3)
        assert sqrt_scalar(quad(3, 2, 2)) == quad(1, 1, 2)

    def test_rendering(self):
        assert render_scalar(quad(F(-1, 2), F(1, 2), -3)) == "-1/2+1/2*sqrt(-3)"
        assert render_scalar(F(6, 4)) == "3/2"
        assert render_scalar(quad(0, -1, 2)) == "-sqrt(2)"

    def test_bad_literal(self):
        with pytest.raises(ParseError):
            parse_scalar("1/2 sqrt(3)")
        with pytest.raises(ParseError):
            parse_scalar("abc")


class TestPolynomials:
    @given(st.lists(st.tuples(fracs, st.integers(1, 3)), min_size=1, max_size=4), fracs.filter(bool))
    def test_roots_re_expand(self, roots, lead):
        p = Poly((lead,))
        for r, m in roots:
            p = p * Poly((-r, 1)) ** m
        found, residual = rational_roots(p)
        assert residual.degree == 0
        back = Poly((p.leading,))
        for r, m in found:
            back = back * Poly((-r, 1)) ** m
        assert back == p

    def test_quadratic_factor_in_field(self):
        p = Poly((1, 1, 1))  # roots are the primitive cube roots of unity
        assert rational_roots(p) == ([], p)
        found, residual = rational_roots(p, d=-3)
        assert residual.degree == 0
        assert {r for r, _ in found} == {quad(F(-1, 2), F(1, 2), -3), quad(F(-1, 2), F(-1, 2), -3)}

    def test_residual_kept(self):
        found, residual = rational_roots(Poly((-2, 0, 1)) * Poly((-3, 1)))
        assert found == [(F(3), 1)]
        assert residual == Poly((-2, 0, 1))

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            rational_roots(Poly(()))

    @given(st.lists(fracs, min_size=1, max_size=5), st.lists(fracs, min_size=1, max_size=4).filter(lambda c: c[-1] != 0))
    def test_division(self, a, b):
        a, b = Poly(a), Poly(b)
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree < b.degree

    @given(st.lists(fracs, min_size=1, max_size=5), fracs, fracs)
    def test_shift_and_taylor(self, a, s, x):
        p = Poly(a)
        assert p.shift(s)(x) == p(x + s)
        tay = p.taylor(s)
        assert sum(c * x**k for k, c in enumerate(tay)) == p(s + x)


matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 5).flatmap(lambda m: st.lists(st.lists(fracs, min_size=m, max_size=m), min_size=n, max_size=n))
)


class TestLinearAlgebra:
    @given(matrices)
    def test_kernel(self, rows):
        m = ExactMatrix(rows)
        ker = kernel_basis(m)
        assert len(ker) + rank(m) == m.ncols
        for v in ker:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
        assert rank(m) == sympy.Matrix(rows).rank()

    @settings(max_examples=60)
    @given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_determinant_against_sympy(self, rows):
        d = determinant(rows)
        assert to_sympy(d) == sympy.Matrix([[to_sympy(x) for x in r] for r in rows]).det()
        if d != 0:
            inv = inverse(rows)
            prod = ExactMatrix(rows) @ inv
            assert prod == ExactMatrix.identity(len(rows))
        else:
            with pytest.raises(SingularMatrix):
                inverse(rows)

    def test_solve(self):
        assert solve([[1, 2], [3, 4]], [5, 6]) == (F(-4), F(9, 2))
        assert solve([[1, 1], [1, 1]], [1, 2]) is None

    def test_quadratic_field_entries(self):
        w = quad(F(-1, 2), F(1, 2), -3)
        assert determinant([[1, w], [w, 1]]) == 1 - w * w
        ker = kernel_basis([[1, w], [w, w * w]])
        assert len(ker) == 1

    def test_polynomial_entries(self):
        s = Poly((0, 1), "s")
        assert determinant([[s, 1], [1, s]]) == s * s - 1
