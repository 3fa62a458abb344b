"""Shared strategies and independent oracles for the test-suite."""

from fractions import Fraction
from itertools import combinations

import sympy
from hypothesis import strategies as st

from doubleoctic.arrangement import Arrangement
from doubleoctic.exact import determinant
from doubleoctic.theta import ThetaOperator

T, RHO = sympy.symbols("t rho")


# arrangements


def is_generic(vectors):
    """No four planes through a point (hence no three through a line)."""
    return all(determinant([list(vectors[i]) for i in quad]) != 0 for quad in combinations(range(len(vectors)), 4))


def random_generic_arrangement(rng, bound=9):
    """Draw integer planes until the arrangement is generic; returns (arrangement, draws)."""
    draws = 0
    while True:
        draws += 1
        vecs = [tuple(Fraction(rng.randint(-bound, bound)) for _ in range(4)) for _ in range(8)]
        if any(all(c == 0 for c in v) for v in vecs):
            continue
        if is_generic(vecs):
            return Arrangement.from_vectors(vecs, label=f"random draw {draws}"), draws


# operators

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def theta_operators(draw, max_order=4, max_span=4):
    order = draw(st.integers(0, max_order))
    span = draw(st.integers(0, max_span))
    grid = [[draw(small_fractions) for _ in range(order + 1)] for _ in range(span + 1)]
    grid[draw(st.integers(0, span))][order] = draw(small_fractions.filter(lambda x: x != 0))
    return ThetaOperator.from_grid(grid)


def theta_action(op):
    """sympy image of ``t^rho`` under the normal form, divided by ``t^rho``."""
    return sympy.expand(sum(T**i * _at_rho(col) for i, col in enumerate(op.columns)))


def _at_rho(col):
    return sum(sympy.Rational(c.numerator, c.denominator) * RHO**k for k, c in enumerate(col.coeffs))


def d_action(dop):
    """sympy image of ``t^rho`` under ``sum a_k(t) (d/dt)^k``, divided by ``t^rho``."""
    f = T**RHO
    acc = 0
    for k, a in enumerate(dop.coeffs):
        ak = sum(sympy.Rational(c.numerator, c.denominator) * T**e for e, c in enumerate(a.coeffs))
        acc += ak * sympy.diff(f, T, k)
    return sympy.expand(sympy.powsimp(sympy.expand(acc / f)))


# expression trees for the parser


@st.composite
def _leaf(draw):
    kind = draw(st.sampled_from(["Theta", "t", "num"]))
    if kind != "num":
        return kind, kind
    q = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
    text = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return f"({text})", ("num", q)


def _extend(children):
    pair = st.tuples(children, children)
    return st.one_of(
        pair.map(lambda p: (f"({p[0][0]} + {p[1][0]})", ("+", p[0][1], p[1][1]))),
        pair.map(lambda p: (f"({p[0][0]} - {p[1][0]})", ("-", p[0][1], p[1][1]))),
        pair.map(lambda p: (f"{p[0][0]}*{p[1][0]}", ("*", p[0][1], p[1][1]))),
        pair.map(lambda p: (f"({p[0][0]})({p[1][0]})", ("*", p[0][1], p[1][1]))),
        children.map(lambda c: (f"-({c[0]})", ("neg", c[1]))),
        st.tuples(children, st.integers(0, 2)).map(lambda c: (f"({c[0][0]})^{c[1]}", ("^", c[0][1], c[1]))),
    )


expressions = st.recursive(_leaf(), _extend, max_leaves=6)


def tree_action(tree, f):
    """Apply an expression tree, read as a differential operator, to the sympy function ``f``."""
    if tree == "Theta":
        return T * sympy.diff(f, T)
    if tree == "t":
        return T * f
    head = tree[0]
    if head == "num":
        return sympy.Rational(tree[1].numerator, tree[1].denominator) * f
    if head == "+":
        return tree_action(tree[1], f) + tree_action(tree[2], f)
    if head == "-":
        return tree_action(tree[1], f) - tree_action(tree[2], f)
    if head == "*":
        return tree_action(tree[1], tree_action(tree[2], f))
    if head == "neg":
        return -tree_action(tree[1], f)
    if head == "^":
        for _ in range(tree[2]):
            f = tree_action(tree[1], f)
        return f
    raise ValueError(tree)


def tree_oracle(tree):
    f = T**RHO
    return sympy.expand(sympy.powsimp(sympy.expand(tree_action(tree, f) / f)))
