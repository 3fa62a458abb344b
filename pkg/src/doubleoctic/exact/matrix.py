"""Exact matrices and linear algebra over Q and Q(sqrt(d)).

Rational matrices are row-reduced fraction-free (Bareiss) on an integer copy
with row denominators cleared; only the final normalisation to reduced
echelon form divides.  Matrices with quadratic-field entries use ordinary
Gauss-Jordan elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Sequence

from ..errors import SingularMatrix
from .scalar import Quad, Scalar, as_scalar

__all__ = [
    "ExactMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "determinant",
    "inverse",
]


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major rectangular grid.

    Entries are normally scalars; polynomial entries are allowed for
    coordinate substitutions in families (only products and determinants are
    used there).
    """

    rows: tuple[tuple[Any, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[Any]], ncols: int | None = None):
        rs = tuple(tuple(_entry(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rs[0]) if rs else 0
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.transpose().rows
            return ExactMatrix(
                [[_dot(r, c) for c in cols] for r in self.rows], other.ncols
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(_dot(r, vec) for r in self.rows)

    def __repr__(self):
        return f"ExactMatrix({[list(map(str, r)) for r in self.rows]})"


def _entry(x):
    if hasattr(x, "coeffs"):  # Poly
        return x
    return as_scalar(x)


def _dot(a: Sequence, b: Sequence):
    acc = Fraction(0)
    for x, y in zip(a, b):
        if x != 0 and y != 0:
            acc = x * y + acc
    return acc


def _as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def _bareiss_rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    ints: list[list[int]] = []
    for r in rows:
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        ints.append([int(x * den) for x in r])

    nrows = len(ints)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if ints[i][c] != 0), None)
        if p is None:
            continue
        ints[r], ints[p] = ints[p], ints[r]
        piv = ints[r][c]
        for i in range(r + 1, nrows):
            lead = ints[i][c]
            row = ints[i]
            for j in range(c + 1, ncols):
                num = piv * row[j] - lead * ints[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row[j] = q
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1

    # back-substitution: normalise pivots and clear above them
    out = [[Fraction(x) for x in ints[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        inv = 1 / out[i][c]
        out[i] = [x * inv for x in out[i]]
        for k in range(i):
            f = out[k][c]
            if f != 0:
                out[k] = [a - f * b for a, b in zip(out[k], out[i])]
    return out, pivots


def _gauss_jordan(rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[: len(pivots)], pivots


def rref(m) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    m = _as_matrix(m)
    rows = [list(r) for r in m.rows]
    if any(isinstance(x, Quad) for r in rows for x in r):
        return _gauss_jordan(rows, m.ncols)
    return _bareiss_rref(rows, m.ncols)


def rank(m) -> int:
    return len(rref(m)[1])


def kernel_basis(m) -> list[tuple[Scalar, ...]]:
    """Basis of the right kernel ``{v : m v = 0}``.

    One vector per non-pivot column ``f``: it has a 1 at ``f``, zeros at the
    other free columns, and the pivot coordinates forced by the reduced
    echelon form.  ``rank(m) + len(basis) == m.ncols``.
    """
    m = _as_matrix(m)
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v: list[Scalar] = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(m, b: Sequence) -> tuple[Scalar, ...] | None:
    """A particular solution of ``m x = b`` (free variables 0), or ``None``."""
    m = _as_matrix(m)
    b = [as_scalar(x) for x in b]
    if len(b) != m.nrows:
        raise ValueError("shape mismatch")
    aug = ExactMatrix([list(r) + [x] for r, x in zip(m.rows, b)], m.ncols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x: list[Scalar] = [Fraction(0)] * m.ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def determinant(m):
    """Determinant; works for scalar and polynomial entries."""
    m = _as_matrix(m)
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    if any(hasattr(x, "coeffs") for r in m.rows for x in r):
        return _laplace([list(r) for r in m.rows])
    rows = [list(r) for r in m.rows]
    det: Scalar = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def _laplace(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = Fraction(0)
    for j in range(n):
        x = rows[0][j]
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * _laplace(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def inverse(m) -> ExactMatrix:
    m = _as_matrix(m)
    n = m.nrows
    if n != m.ncols:
        raise SingularMatrix("non-square matrix")
    aug = ExactMatrix(
        [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)],
        2 * n,
    )
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is not invertible")
    return ExactMatrix([row[n:] for row in red[:n]], n)
