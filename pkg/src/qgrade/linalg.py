"""Exact linear algebra over Q and Z.

Matrices are lists of rows.  Entries may be ints or Fractions; results over Q
are Fractions and results over Z are ints.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

Vector = tuple
Matrix = Sequence[Sequence]


class Solution(NamedTuple):
    particular: tuple
    kernel: list[tuple]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rref(matrix: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    rows = [[as_fraction(x) for x in row] for row in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def solve_rational(matrix: Matrix, rhs: Sequence, ncols: int | None = None) -> Solution | None:
    """Solve ``matrix @ x = rhs`` over Q.

    The particular solution sets every free variable to zero; the kernel basis
    has one vector per free variable (that variable 1, the other free ones 0).
    Returns None when the system is inconsistent.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if len(rhs) != len(matrix):
        raise ValueError("right-hand side length does not match row count")
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if not augmented:
        zero = tuple(Fraction(0) for _ in range(ncols))
        kernel = [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
        return Solution(zero, kernel)
    rows, pivots = rref(augmented)
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for row, c in zip(rows, pivots):
        particular[c] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(rows, pivots):
            v[c] = -row[f]
        kernel.append(tuple(v))
    return Solution(tuple(particular), kernel)


def _integer_echelon(rows: list[list[int]], width: int) -> tuple[list[list[int]], list[list[int]]]:
    """Row-reduce an integer matrix with unimodular row operations.

    Returns (echelon, transform) with ``transform @ rows == echelon``.  Only the
    first ``width`` columns are reduced.
    """
    a = [list(r) for r in rows]
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for c in range(width):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if a[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[best] = a[best], a[r]
            u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, n):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if any(a[i][c] != 0 for i in range(r, n)):
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            r += 1
    return a, u


def solve_integer(matrix: Matrix, rhs: Sequence, ncols: int | None = None) -> Solution | None:
    """Solve ``matrix @ x = rhs`` over Z (entries must be integral).

    Uses a unimodular column reduction: with ``V A^T = E`` in echelon form,
    substitute ``x = V^T y`` and solve ``E^T y = rhs`` by forward substitution.
    The kernel basis returned is a Z-basis of the integer kernel lattice.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    m = len(matrix)
    for row in matrix:
        for x in row:
            if as_fraction(x).denominator != 1:
                raise ValueError("solve_integer needs an integer matrix")
    b = [as_fraction(x) for x in rhs]
    if any(x.denominator != 1 for x in b):
        return None
    b = [int(x) for x in b]
    transposed = [[int(matrix[i][j]) for i in range(m)] for j in range(ncols)]
    echelon, v = _integer_echelon(transposed, m)
    y = [0] * ncols
    for r, erow in enumerate(echelon):
        c = next((j for j, x in enumerate(erow) if x != 0), None)
        if c is None:
            break
        acc = b[c] - sum(echelon[k][c] * y[k] for k in range(r))
        if acc % erow[c] != 0:
            return None
        y[r] = acc // erow[c]
    for c in range(m):
        if sum(echelon[k][c] * y[k] for k in range(ncols)) != b[c]:
            return None
    x = tuple(sum(v[k][j] * y[k] for k in range(ncols)) for j in range(ncols))
    kernel = [tuple(v[k]) for k in range(ncols) if not any(echelon[k])]
    return Solution(x, kernel)


def matvec(matrix: Matrix, vec: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix)
