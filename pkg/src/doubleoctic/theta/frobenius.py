"""Frobenius series at a regular singular point and local monodromy.

A solution near the point is written in the local coordinate ``u`` as::

    u^rho * sum_k  log(u)^k / k!  *  sum_m  F_k[m] u^m

For ``Theta = u d/du`` one has ``Theta(u^a L^k/k!) = a u^a L^k/k! + u^a L^(k-1)/(k-1)!``,
so on the block vector ``F[m] = (F_0[m], ..., F_K[m])`` at exponent ``a`` the
operator ``q(Theta)`` acts as ``sum_r q^(r)(a)/r! * S^r`` with ``S`` the
shift ``F_k -> F_(k+1)``.

Exponents are grouped into classes differing by integers.  For a class with
lowest exponent ``rho`` and largest integer offset ``M`` the equations for
slots ``0..M`` form a finite linear system whose kernel is exactly the local
solution space of the class; beyond ``M`` every slot is forced by the
recursion.  The kernel is put in reduced echelon form with the highest log
power ordered first, so log-free solutions come out with their resonant free
coefficients at the conventional value 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..errors import FieldObstruction, NotSingularHere
from ..exact import ExactMatrix, Scalar, as_scalar, kernel_basis, rational_roots, render_scalar, rref, solve, sort_key
from ..exact.scalar import Quad
from .local import INFINITY, Point, _field_hint, local_operator, render_point, singular_points
from .operator import ThetaOperator

__all__ = [
    "FrobeniusSolution",
    "LocalMonodromy",
    "frobenius",
    "apply_operator",
    "apply_operator_blocks",
    "local_monodromy",
    "span_coordinates",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 8


@dataclass(frozen=True)
class FrobeniusSolution:
    """``u^exponent * sum_k log(u)^k/k! * blocks[k](u)``, truncated at ``u^N``.

    ``coefficients`` is ``blocks[0]``; for a log-free solution it starts with 1.
    ``log_blocks`` holds ``blocks[1:]`` (empty when ``logs_required`` is false).
    ``resonances`` lists the offsets ``m > 0`` with ``q_0(exponent + m) == 0``.
    """

    exponent: Scalar
    coefficients: tuple[Scalar, ...]
    resonances: tuple[int, ...] = ()
    logs_required: bool = False
    log_blocks: tuple[tuple[Scalar, ...], ...] = ()

    @property
    def blocks(self) -> tuple[tuple[Scalar, ...], ...]:
        return (self.coefficients,) + self.log_blocks

    @property
    def log_depth(self) -> int:
        return len(self.log_blocks)

    def to_json(self) -> dict:
        return {
            "exponent": render_scalar(self.exponent),
            "coefficients": [render_scalar(c) for c in self.coefficients],
            "resonances": list(self.resonances),
            "logs_required": self.logs_required,
            "log_blocks": [[render_scalar(c) for c in b] for b in self.log_blocks],
        }


@dataclass(frozen=True)
class LocalMonodromy:
    finite: bool
    order: int | None = None
    log_rank: int = 0
    quasi_unipotent: bool = True

    @classmethod
    def Finite(cls, order: int) -> LocalMonodromy:
        return cls(True, order, 0, True)

    @classmethod
    def Infinite(cls, log_rank: int, quasi_unipotent: bool = True) -> LocalMonodromy:
        return cls(False, None, log_rank, quasi_unipotent)

    def __str__(self):
        if self.finite:
            return f"Finite({self.order})"
        tag = "" if self.quasi_unipotent else ", not quasi-unipotent"
        return f"Infinite(log rank {self.log_rank}{tag})"

    def to_json(self) -> dict:
        return {
            "finite": self.finite,
            "order": self.order,
            "log_rank": self.log_rank,
            "quasi_unipotent": self.quasi_unipotent,
        }


def _slot_residual(op, rho, blocks, m, taylor_cache, skip_zero=False):
    """Residual block vector of ``op`` applied to the blocks at slot ``m``.

    With ``skip_zero`` the ``i = 0`` term is left out (recursion right side).
    """
    K = len(blocks) - 1
    out = [Fraction(0)] * (K + 1)
    for i in range(0 if not skip_zero else 1, min(m, op.t_span) + 1):
        src = m - i
        tay = taylor_cache(i, rho + src)
        for j in range(K + 1):
            acc = out[j]
            for r in range(K + 1 - j):
                c = blocks[j + r][src] if src < len(blocks[j + r]) else 0
                if c != 0 and tay[r] != 0:
                    acc = acc + tay[r] * c
            out[j] = acc
    return out


def _make_cache(op: ThetaOperator, depth: int):
    cache: dict = {}

    def get(i, a):
        key = (i, a)
        if key not in cache:
            tay = op.column(i).taylor(a)
            cache[key] = [tay[r] if r < len(tay) else Fraction(0) for r in range(depth)]
        return cache[key]

    return get


def apply_operator(op: ThetaOperator, rho, coeffs: Sequence) -> list[Scalar]:
    """Coefficients ``r_m`` of ``u^(rho+m)`` in ``op`` applied to ``u^rho sum c_m u^m``.

    ``r_m = sum_i q_i(rho + m - i) c_(m-i)`` for ``m < len(coeffs)``; each
    ``r_m`` only involves the supplied coefficients.
    """
    rho = as_scalar(rho)
    cs = [as_scalar(c) for c in coeffs]
    out = []
    for m in range(len(cs)):
        acc = Fraction(0)
        for i in range(min(m, op.t_span) + 1):
            c = cs[m - i]
            if c != 0:
                acc = acc + op.column(i)(rho + m - i) * c
        out.append(acc)
    return out


def apply_operator_blocks(op: ThetaOperator, rho, blocks: Sequence[Sequence]) -> list[list[Scalar]]:
    """Residual blocks for a log-bearing truncated series (see module docstring)."""
    rho = as_scalar(rho)
    bs = [[as_scalar(c) for c in b] for b in blocks]
    n = max(len(b) for b in bs)
    bs = [b + [Fraction(0)] * (n - len(b)) for b in bs]
    cache = _make_cache(op, len(bs))
    rows = [_slot_residual(op, rho, bs, m, cache) for m in range(n)]
    return [[rows[m][j] for m in range(n)] for j in range(len(bs))]


def _exponent_classes(roots: list[tuple[Scalar, int]]):
    """Group ``(root, mult)`` pairs whose differences are integers."""
    classes: list[list[tuple[Scalar, int]]] = []
    for r, m in sorted(roots, key=lambda x: sort_key(x[0])):
        for cl in classes:
            diff = r - cl[0][0]
            if not isinstance(diff, Quad) and Fraction(diff).denominator == 1:
                cl.append((r, m))
                break
        else:
            classes.append([(r, m)])
    return classes


def _class_solutions(loc: ThetaOperator, cls, N: int) -> list[FrobeniusSolution]:
    rho = cls[0][0]
    offsets = {int(r - rho): m for r, m in cls}
    M = max(offsets)
    total = sum(offsets.values())
    K = total - 1
    width = M + 1
    cache = _make_cache(loc, K + 1)

    def col(j, m):
        # highest log power first, then slot order
        return (K - j) * width + m

    nvars = (K + 1) * width
    eqs = []
    for m in range(width):
        for j in range(K + 1):
            row = [Fraction(0)] * nvars
            for i in range(min(m, loc.t_span) + 1):
                src = m - i
                tay = cache(i, rho + src)
                for r in range(K + 1 - j):
                    if tay[r] != 0:
                        row[col(j + r, src)] = row[col(j + r, src)] + tay[r]
            eqs.append(row)
    kern = kernel_basis(ExactMatrix(eqs, nvars))
    if len(kern) != total:
        raise ArithmeticError(
            f"local solution space has dimension {len(kern)}, expected {total}"
        )
    reduced, _ = rref(ExactMatrix(kern, nvars))

    length = M + N + 1
    out = []
    for vec in reduced:
        blocks = [[vec[col(j, m)] for m in range(width)] + [Fraction(0)] * N for j in range(K + 1)]
        for m in range(width, length):
            rhs = _slot_residual(loc, rho, blocks, m, cache, skip_zero=True)
            t0 = cache(0, rho + m)
            for j in range(K, -1, -1):
                acc = -rhs[j]
                for r in range(1, K + 1 - j):
                    acc = acc - t0[r] * blocks[j + r][m]
                blocks[j][m] = acc / t0[0]
        out.append(_package(loc, rho, blocks, N))
    return out


def _package(loc, rho, blocks, N) -> FrobeniusSolution:
    depth = max((j for j, b in enumerate(blocks) if any(c != 0 for c in b)), default=0)
    blocks = blocks[: depth + 1]
    lead = min(next(m for m, c in enumerate(b) if c != 0) for b in blocks if any(c != 0 for c in b))
    pivot = next(b[lead] for b in blocks if b[lead] != 0)
    shifted = tuple(tuple(c / pivot for c in b[lead: lead + N + 1]) for b in blocks)
    exponent = rho + lead
    q0 = loc.column(0)
    resonances = tuple(m for m in range(1, N + 1) if q0(exponent + m) == 0)
    return FrobeniusSolution(
        exponent=exponent,
        coefficients=shifted[0],
        resonances=resonances,
        logs_required=depth > 0,
        log_blocks=shifted[1:],
    )


def frobenius(op: ThetaOperator, point: Point = Fraction(0), N: int = DEFAULT_ORDER) -> list[FrobeniusSolution]:
    """A basis of local solutions at a regular singular point, truncated at order ``N``.

    Returns ``op.order`` solutions sorted by exponent (log-free first within
    an exponent); series are in the local coordinate of :func:`local_operator`.
    """
    if point is not INFINITY:
        a = as_scalar(point)
        locus = singular_points(op)
        if a != 0 and all(p != a for p, _ in locus.finite):
            raise NotSingularHere(f"t = {render_scalar(a)} is an ordinary point")
    loc = local_operator(op, point)
    roots, residual = rational_roots(loc.column(0), d=_field_hint(op, point))
    if residual.degree > 0:
        raise FieldObstruction(f"exponents at {render_point(point)} outside the field: {residual}")
    sols: list[FrobeniusSolution] = []
    for cls in _exponent_classes(roots):
        sols.extend(_class_solutions(loc, cls, N))
    sols.sort(key=lambda s: (sort_key(s.exponent), s.log_depth))
    return sols


def local_monodromy(op: ThetaOperator, point: Point = Fraction(0), N: int = DEFAULT_ORDER) -> LocalMonodromy:
    sols = frobenius(op, point, N)
    rational = all(not isinstance(s.exponent, Quad) for s in sols)
    depth = max(s.log_depth for s in sols)
    if depth or not rational:
        return LocalMonodromy.Infinite(depth, rational)
    order = 1
    for s in sols:
        order = lcm(order, Fraction(s.exponent).denominator)
    return LocalMonodromy.Finite(order)


def span_coordinates(
    exponent, coeffs: Sequence, solutions: Sequence[FrobeniusSolution]
) -> tuple[Scalar, ...] | None:
    """Write the truncated series ``u^exponent * sum coeffs[m] u^m`` in terms of
    log-free ``solutions`` (each truncated to the same window).

    Returns the combination coefficients, or ``None`` if the series is not in
    their span.  Solutions whose exponent is not ``exponent`` + an integer are
    ignored.
    """
    exponent = as_scalar(exponent)
    target = [as_scalar(c) for c in coeffs]
    n = len(target)
    usable = []
    for s in solutions:
        if s.logs_required:
            continue
        off = s.exponent - exponent
        if isinstance(off, Quad) or Fraction(off).denominator != 1:
            continue
        off = int(off)
        if off < 0 or off >= n:
            continue
        vec = [Fraction(0)] * n
        for m in range(n):
            k = m - off
            if 0 <= k < len(s.coefficients):
                vec[m] = s.coefficients[k]
            elif k >= len(s.coefficients):
                raise ValueError("solution truncated below the requested window")
        usable.append(vec)
    if not usable:
        return None if any(c != 0 for c in target) else ()
    mat = ExactMatrix([[v[m] for v in usable] for m in range(n)], len(usable))
    return solve(mat, target)
