"""Acceptance criteria 1 to 11, one PASS/FAIL line each, exact comparisons throughout."""

import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings

from doubleoctic.arrangement import (
    apply_transform,
    classify,
    degeneration,
    enumerate_singular_lines,
    equivalent,
    families_equivalent,
    j_invariant,
    line_of_forms,
    pencil_coordinates,
    plane_spanned,
    pluecker_pairing,
)
from doubleoctic.arrangement.strata import canonical
from doubleoctic.exact import Poly, quad
from doubleoctic.fixtures import DEGENERATE_T0, load_builtin_operator, load_family, transform_main_to_153
from doubleoctic.hodge import run_scenario
from doubleoctic.theta import (
    INFINITY,
    apply_operator,
    frobenius,
    from_d_form,
    indicial_roots,
    local_monodromy,
    parse_operator,
    pullback_power,
    riemann_symbol,
    span_coordinates,
    to_d_form,
)

from support import expressions, random_generic_arrangement, theta_action, theta_operators, tree_oracle

F = Fraction
HALF = F(1, 2)


def coords(*xs):
    return canonical([F(x) for x in xs])


@pytest.fixture(scope="module")
def main():
    return load_family("main")


@pytest.fixture(scope="module")
def pf():
    return load_builtin_operator("pf153")


# 1


def expected_points(t):
    p40 = {coords(1, 0, 0, 0), coords(0, 1, -1, 0), coords(1, -1, 1, 0), coords(t - 2, 1, 0, -1),
           coords(1, 0, -1, 0), coords(1, -1, 0, 0)}
    p41 = {coords(0, 0, 1, 0), coords(0, 0, 0, 1), coords(0, 0, -t, 1), coords(0, 0, 1, -1), coords(0, 0, t - 1, -1)}
    return p40, p41


def test_criterion_01_counts(main, criterion):
    details, ok = [], True
    for t in (3, 5, -1):
        rep = classify(main.evaluate(F(t)))
        p40, p41 = expected_points(F(t))
        got40 = {p.coords for p in rep.points_of("p_4^0")}
        got41 = {p.coords for p in rep.points_of("p_4^1")}
        (tl,) = rep.lines_of(3)
        this = (rep.triple_lines == 1 and rep.double_lines == 25 and tl.planes == frozenset({0, 1, 2})
                and got40 == p40 and got41 == p41 and len(rep.points_of("p_4^0")) == 6
                and len(rep.points_of("p_4^1")) == 5)
        ok &= this
        details.append(f"t={t}: {rep.triple_lines} triple, {rep.double_lines} double, "
                       f"{len(got40)} p4^0, {len(got41)} p4^1{'' if this else ' MISMATCH'}")
    criterion(1, ok, "; ".join(details))
    assert ok


# 2


@pytest.fixture(scope="module")
def fibre_at_zero(main):
    return classify(main.evaluate(F(0)))


def test_criterion_02_fivefold_point(fibre_at_zero, criterion):
    rep = fibre_at_zero
    (tl,) = rep.lines_of(3)
    p51 = rep.points_of("p_5^1")
    p41 = rep.points_of("p_4^1")
    merged = len(expected_points(F(0))[1]) == 4 and coords(0, 0, -0, 1) == coords(0, 0, 0, 1)
    on_line = len(p51) == 1 and p51[0].coords == coords(0, 0, 0, 1) and tl.contains(p51[0].coords)
    planes_ok = len(p51) == 1 and p51[0].planes == frozenset(range(5))
    four = len(p41) == 4
    criterion(2, merged and on_line and planes_ok and four,
              f"(0:0:0:1) and (0:0:-t:1) coincide: {merged}; p5^1 on the triple line at (0:0:0:1) "
              f"with planes L1..L5: {on_line and planes_ok}; p4^1 count {len(p41)} (criterion asks for 4)")
    assert merged and on_line and planes_ok


@pytest.mark.xfail(strict=True, reason="only three p4^1 points survive the collision; see the decisions ledger")
def test_criterion_02_four_p41_as_stated(fibre_at_zero):
    assert len(fibre_at_zero.points_of("p_4^1")) == 4


def test_criterion_02_remaining_points_exact(fibre_at_zero):
    # the five p4^1 points at t are (0:0:1:0), (0:0:0:1), (0:0:-t:1), (0:0:1:-1), (0:0:t-1:-1);
    # two merge into the p5^1, the other three stay fourfold
    got = {p.coords for p in fibre_at_zero.points_of("p_4^1")}
    assert got == {coords(0, 0, 1, 0), coords(0, 0, 1, -1), coords(0, 0, -1, -1)}
    assert fibre_at_zero.type_counts["p_4^0"] == 6
    assert fibre_at_zero.admissible


# 3


def test_criterion_03_generic(criterion):
    rng = random.Random(20240917)
    arr, draws = random_generic_arrangement(rng)
    rep = classify(arr)
    triple_points = [p for p in rep.points if p.multiplicity == 3]
    ok = rep.double_lines == 28 and len(rep.lines) == 28 and len(triple_points) == 56 and len(rep.points) == 56
    criterion(3, ok, f"{rep.double_lines} double lines, {len(triple_points)} triple points "
                     f"({draws} draw{'s' if draws > 1 else ''})")
    assert ok


# 4


def test_criterion_04_j_invariants(main, criterion):
    a = main.evaluate(F(0))
    rep = classify(a)
    (tl,) = rep.lines_of(3)
    L = a.forms
    m0 = line_of_forms(L[3], L[4])
    fourth = plane_spanned(tl, m0)
    pts = [pencil_coordinates(tl, L[0], L[1], g) for g in (L[0], L[1], L[2], fourth)]
    j_main = j_invariant(pts)
    eq = degeneration(load_family("meyer-155"), DEGENERATE_T0["meyer-155"])
    omega = quad(F(-1, 2), F(1, 2), -3)
    ok = j_main == 1728 and eq.j == 0 and DEGENERATE_T0["meyer-155"] == omega
    criterion(4, ok, f"harmonic pencil at t=0: j = {j_main}; equianharmonic fixture (155 at omega): j = {eq.j}")
    assert ok


# 5


def test_criterion_05_riemann_symbol(pf, criterion):
    sym = riemann_symbol(pf)
    want = {F(0): [0, HALF, F(3, 2), 2], F(1): [0, HALF, HALF, 1], F(2): [0, HALF, HALF, 1],
            INFINITY: [HALF, 1, 1, F(3, 2)]}
    got = {p: sorted(ex) for p, ex in sym.exponents.items()}
    ok = set(sym.exponents) == set(want) and all(got[p] == sorted(F(x) for x in want[p]) for p in want)
    ok = ok and sym.total() == 12 and sym.fuchs_holds()
    criterion(5, ok, f"singular points {sorted(str(p) for p in sym.exponents)}, Fuchs total {sym.total()}")
    assert ok


# 6


REFERENCE_SERIES = [(HALF, [1, 1, F(4, 5)]), (F(3, 2), [1, 1, F(6, 7)]), (F(2), [1, F(5, 4)])]


def test_criterion_06_frobenius(pf, criterion):
    sols = frobenius(pf, F(0), 6)
    no_logs = not any(s.logs_required for s in sols) and sorted(s.exponent for s in sols) == [0, HALF, F(3, 2), 2]
    residuals = all(all(r == 0 for r in apply_operator(pf, rho, c)) for rho, c in REFERENCE_SERIES)
    c1_forced = apply_operator(pf, 0, [1, F(1, 4)])[1] == 0 and apply_operator(pf, 0, [1, F(1, 3)])[1] != 0
    resonant_free = all(apply_operator(pf, 0, [1, F(1, 4), c2]) == [0, 0, 0] for c2 in (0, 1, F(-23, 1120), -7))
    spans = [span_coordinates(rho, c, sols) for rho, c in REFERENCE_SERIES]
    spans.append(span_coordinates(0, [1, F(1, 4), F(-23, 1120)], sols))
    in_span = all(s is not None for s in spans)
    ok = no_logs and residuals and c1_forced and resonant_free and in_span
    criterion(6, ok, f"no logs: {no_logs}; reference residuals vanish: {residuals}; c1 = 1/4 forced: {c1_forced}; "
                     f"c2 free: {resonant_free}; truncations in span: {in_span}")
    assert ok


# 7


def test_criterion_07_monodromy(pf, criterion):
    mono = local_monodromy(pf, F(0))
    ok = mono.finite and mono.order == 2
    criterion(7, ok, f"local monodromy at 0: {mono}")
    assert ok


# 8


def test_criterion_08_base_change(pf, criterion):
    a = sorted(indicial_roots(pullback_power(pf, 2), F(0)))
    b = sorted(indicial_roots(pullback_power(load_builtin_operator("exponents-0-half-5half-3"), 2), F(0)))
    before = sorted(indicial_roots(load_builtin_operator("exponents-0-half-5half-3"), F(0)))
    ok = a == [0, 1, 3, 4] and b == [0, 1, 5, 6] and before == [0, HALF, F(5, 2), 3]
    criterion(8, ok, f"pf153 -> {[str(x) for x in a]}; (0,1/2,5/2,3) fixture -> {[str(x) for x in b]}")
    assert ok


# 9


def test_criterion_09_hodge(criterion):
    van, blow, semi = (run_scenario(n) for n in ("vanishing-cycles", "blowup-Z0", "semistable-limit"))
    h3 = van.results["vanishing"][3]
    pt = semi.results["Ptilde"]
    weights = [sorted(v.weights()) for v in pt]
    ok = (van.passed and blow.passed and semi.passed
          and h3.dim_by_weight() == {3: 2, 4: 4}
          and blow.results["h_Z0"] == [46, 2, 46]
          and [v.dim for v in pt] == [1, 0, 2, 2, 2, 0, 1]
          and weights == [[0], [], [2], [3], [4], [], [6]]
          and [v.dim for v in semi.results["Q"]] == [1, 0, 6, 0, 1]
          and semi.results["limit_betti"] == [1, 0, 41, 4, 41, 0, 1]
          and van.results["five_term"] == {3: 0, 4: 0}
          and 2 - 4 + 6 - 45 + 41 == 0)
    criterion(9, ok, f"HH^3 weights {h3.dim_by_weight()}, h(Z0) {blow.results['h_Z0']}, "
                     f"limit Betti {semi.results['limit_betti']}")
    assert ok


# 10

# main at t corresponds to row 153 at t - 2; fixed once by the sympy oracle below
PARAMETER_SHIFT = -2


def _sympy_main_to_153_shift():
    """Independent oracle: solve for the row-153 parameter matching the moved main family."""
    s, u = sympy.symbols("s u")
    x, y, z, v = sympy.symbols("x y z v")
    X = sympy.Matrix([x, y, z, v])
    # points move by the printed substitution (written in the row-153 parameter u)
    M = sympy.Matrix([[0, -1, -1, -1], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 1, u + 1]])
    Y = M.inv() * X
    main = [X[0], X[1], X[0] + X[1], X[2], X[0] + 2 * X[1] + X[2] + s * X[3], X[3],
            X[1] + X[2] + X[3], X[0] + X[1] + X[2] + (s - 1) * X[3]]
    moved = [sympy.expand(f.subs({x: Y[0], y: Y[1], z: Y[2], v: Y[3]}, simultaneous=True)) for f in main]
    row = [x, y, z, v, x + y + z, y + z + v, x - u * y + v, x - u * y + z + v]
    # each moved plane must be proportional to some row-153 plane: solve the 2x2 minors for s
    def vec(f):
        return [sympy.Poly(f, x, y, z, v).coeff_monomial(m) for m in (x, y, z, v)]

    sols = None
    for f in moved:
        cf, options, free = vec(f), set(), False
        for g in row:
            cg = vec(g)
            minors = [sympy.expand(cf[i] * cg[j] - cf[j] * cg[i]) for i in range(4) for j in range(i + 1, 4)]
            minors = [m for m in minors if m != 0]
            if not minors:
                free = True
                continue
            for r in sympy.solve(minors, [s], dict=True):
                options.add(sympy.expand(r[s] - u))
        if not free:
            sols = options if sols is None else sols & options
    return sols


def test_criterion_10_equivalence(main, criterion):
    row153 = load_family("meyer-153")
    s = Poly((0, 1), "s")
    relation = _sympy_main_to_153_shift()
    oracle_ok = relation == {sympy.Integer(-PARAMETER_SHIFT)}
    moved = apply_transform(main, transform_main_to_153())
    family_ok = families_equivalent(moved, row153.reparametrize(s + PARAMETER_SHIFT))
    fibres_ok = all(equivalent(moved.evaluate(F(t)), row153.evaluate(F(t) + PARAMETER_SHIFT))
                    for t in (3, 5, F(7, 3), -1))
    wrong_shift = families_equivalent(moved, row153.reparametrize(s))
    ok = oracle_ok and family_ok and fibres_ok and not wrong_shift
    criterion(10, ok, f"oracle parameter relation s_main - s_153 = {sorted(relation)}; main moved onto row 153 "
                      f"at t{PARAMETER_SHIFT}: {family_ok and fibres_ok}")
    assert ok


# 11


@settings(max_examples=100, deadline=None, database=None)
@given(expressions)
def _parser_confluence(expr):
    text, tree = expr
    assert theta_action(parse_operator(text)) == tree_oracle(tree)


@settings(max_examples=100, deadline=None, database=None)
@given(theta_operators(max_order=4, max_span=4))
def _d_form_round_trip(op):
    assert from_d_form(to_d_form(op)) == op


def _line_properties():
    rng = random.Random(11)
    arrangements = [load_family("main").evaluate(F(t)) for t in (3, 0, 1, 2, F(-5, 7))]
    arrangements += [random_generic_arrangement(rng)[0] for _ in range(3)]
    for name in ("meyer-197", "family-96"):
        arrangements.append(load_family(name).evaluate(DEGENERATE_T0[name]))
    for a in arrangements:
        lines = enumerate_singular_lines(a)
        for l in lines:
            if pluecker_pairing(l.pluecker, l.pluecker) != 0 or l.quadric() != 0:
                return False, "Pluecker relation"
        if sum(l.multiplicity * (l.multiplicity - 1) // 2 for l in lines) != 28:
            return False, "sum C(mult, 2)"
    return True, ""


def _j_invariance():
    rng = random.Random(4)
    for _ in range(25):
        pts = [(F(rng.randint(-9, 9)), F(rng.randint(1, 9))) for _ in range(4)]
        if len({p[0] / p[1] for p in pts}) < 4:
            continue
        js = {j_invariant(list(p)) for p in permutations(pts)}
        if len(js) != 1:
            return False
    return True


def test_criterion_11_properties(criterion):
    results = {}
    ok_lines, why = _line_properties()
    results["Pluecker relation and sum C(mult,2) = 28"] = ok_lines
    results["j invariant under S4"] = _j_invariance()
    for name, fn in (("parser confluence (100 expressions)", _parser_confluence),
                     ("to_d_form round trip (order <= 4, t-span <= 4)", _d_form_round_trip)):
        try:
            fn()
            results[name] = True
        except AssertionError:
            results[name] = False
    ok = all(results.values())
    criterion(11, ok, "; ".join(f"{k}: {'ok' if v else 'FAILED ' + why}" for k, v in results.items()))
    assert ok
