from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from doubleoctic.errors import FieldObstruction, IrregularSingularity, NegativePowerOfT, NotSingularHere, ZeroOperator
from doubleoctic.exact import Poly
from doubleoctic.fixtures import load_builtin_operator
from doubleoctic.theta import (
    INFINITY,
    DOperator,
    ThetaOperator,
    apply_operator,
    apply_operator_blocks,
    frobenius,
    from_d_form,
    indicial_polynomial,
    indicial_roots,
    local_monodromy,
    local_operator,
    parse_operator,
    parse_point,
    pullback_power,
    render_point,
    riemann_symbol,
    singular_points,
    span_coordinates,
    stirling2,
    to_d_form,
)

from support import RHO, T, d_action, theta_action, theta_operators

F = Fraction
HALF = F(1, 2)


@pytest.fixture(scope="module")
def pf():
    return load_builtin_operator("pf153")


def sympy_exponents(op, point):
    """Indicial roots from the d/dt form, computed independently with sympy."""
    u, r = sympy.symbols("u r")
    dop = to_d_form(op)
    total = 0
    for k, a in enumerate(dop.coeffs):
        ak = sum(sympy.Rational(c.numerator, c.denominator) * (point + u) ** e for e, c in enumerate(a.coeffs))
        total += sympy.expand(ak) * sympy.ff(r, k) * u ** (-k)
    total = sympy.expand(total)
    low = min(term.as_coeff_exponent(u)[1] for term in sympy.Add.make_args(total))
    ind = sympy.expand(sum(term for term in sympy.Add.make_args(total) if term.as_coeff_exponent(u)[1] == low) / u**low)
    return sorted(F(str(x)) for x, m in sympy.roots(sympy.Poly(ind, r)).items() for _ in range(m))


class TestDForm:
    @settings(max_examples=100)
    @given(theta_operators(max_order=4, max_span=4))
    def test_round_trip(self, op):
        assert from_d_form(to_d_form(op)) == op

    @settings(max_examples=40)
    @given(theta_operators(max_order=4, max_span=3))
    def test_same_action_as_sympy(self, op):
        assert d_action(to_d_form(op)) == theta_action(op)

    def test_stirling(self):
        assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
        assert stirling2(0, 0) == 1

    def test_needs_divisible_coefficients(self):
        with pytest.raises(NegativePowerOfT):
            from_d_form(DOperator([Poly((0,), "t"), Poly((1,), "t")]))  # d/dt alone

    def test_zero_operator(self):
        with pytest.raises(ZeroOperator):
            to_d_form(ThetaOperator())


class TestBaseChange:
    @settings(max_examples=40)
    @given(theta_operators(max_order=3, max_span=2), st.integers(1, 3), st.integers(1, 3))
    def test_composition(self, op, a, b):
        assert pullback_power(pullback_power(op, a), b) == pullback_power(op, a * b)

    @given(st.integers(1, 5))
    def test_exponents_scale(self, k):
        op = load_builtin_operator("pf153")
        assert sorted(indicial_roots(pullback_power(op, k), F(0))) == sorted(k * e for e in indicial_roots(op, F(0)))

    def test_bad_k(self, pf):
        with pytest.raises(ValueError):
            pullback_power(pf, 0)


class TestRiemannSymbol:
    def test_pf153(self, pf):
        sym = riemann_symbol(pf)
        assert sym.points == [F(0), F(1), F(2), INFINITY]
        assert sorted(sym.exponents[INFINITY]) == [HALF, 1, 1, F(3, 2)]
        assert sym.total() == sym.fuchs_expected() == 12

    @pytest.mark.parametrize("point", [0, 1, 2])
    def test_exponents_match_sympy(self, pf, point):
        assert sorted(indicial_roots(pf, F(point))) == sympy_exponents(pf, point)

    def test_singular_locus(self, pf):
        loc = singular_points(pf)
        assert loc.finite == ((F(0), 4), (F(1), 2), (F(2), 2))
        assert loc.points[-1] is INFINITY

    def test_as_printed_coefficient_breaks_the_symbol(self):
        # with 7/13 in the t^3 term the exponents at 1 leave Q
        op = load_builtin_operator("pf153_as_printed")
        with pytest.raises(FieldObstruction):
            riemann_symbol(op)
        lam = Poly((0, 1), "lambda")
        assert indicial_polynomial(op, F(1)).monic() == lam * (lam - 1) * Poly((F(27, 52), -1, 1), "lambda")
        # 7/12 gives the double exponent 1/2 instead
        assert indicial_polynomial(load_builtin_operator("pf153"), F(1)).monic() == lam * (lam - 1) * (lam - HALF) ** 2

    def test_local_operator_at_one(self, pf):
        loc = local_operator(pf, F(1))
        assert sorted(indicial_roots(loc, F(0))) == [0, HALF, HALF, 1]

    def test_not_fuchsian(self):
        with pytest.raises(IrregularSingularity):
            riemann_symbol(parse_operator("Theta - t^2*Theta^2"))

    def test_points(self):
        assert parse_point("infinity") is INFINITY
        assert render_point(parse_point("(-1+sqrt(-3))/2")) == "-1/2+1/2*sqrt(-3)"


class TestFrobenius:
    @pytest.mark.parametrize("point", [F(0), F(1), F(2), INFINITY])
    def test_residuals_vanish(self, pf, point):
        loc = local_operator(pf, point)
        for s in frobenius(pf, point, 7):
            res = apply_operator_blocks(loc, s.exponent, s.blocks)
            assert all(c == 0 for block in res for c in block)

    def test_basis_at_zero(self, pf):
        sols = frobenius(pf, F(0), 4)
        assert [s.exponent for s in sols] == [0, HALF, F(3, 2), 2]
        assert sols[0].coefficients[:2] == (1, F(1, 4))
        assert sols[0].resonances == (2,)
        assert not any(s.logs_required for s in sols)

    @pytest.mark.parametrize("point", [F(1), F(2), INFINITY])
    def test_logs_elsewhere(self, pf, point):
        sols = frobenius(pf, point, 5)
        assert sum(s.logs_required for s in sols) == 1
        assert local_monodromy(pf, point).log_rank == 1

    def test_unipotent_example(self):
        op = load_builtin_operator("theta2")
        sols = frobenius(op, F(0), 3)
        assert [s.log_depth for s in sols] == [0, 1]
        mono = local_monodromy(op, F(0))
        assert not mono.finite and mono.log_rank == 1

    def test_residual_of_a_wrong_series(self, pf):
        assert apply_operator(pf, HALF, [1, 1, F(4, 5)]) == [0, 0, 0]
        assert apply_operator(pf, HALF, [1, 2, F(4, 5)]) != [0, 0, 0]

    def test_span(self, pf):
        sols = frobenius(pf, F(0), 5)
        assert span_coordinates(HALF, [1, 1, F(4, 5)], sols) == (1, 1)
        assert span_coordinates(HALF, [1, 1, F(5, 4)], sols) is None
        assert span_coordinates(F(1, 3), [1], sols) is None

    def test_rejects_ordinary_point(self, pf):
        with pytest.raises(NotSingularHere):
            frobenius(pf, F(3), 3)


def test_action_oracle_is_sound():
    op = parse_operator("Theta^2 - t*(Theta + 1)")
    assert theta_action(op) == sympy.expand(RHO**2 - T * (RHO + 1))
