"""Exact linear algebra over the rationals: elimination, solving,
nullspaces.  Matrices are lists of lists of Fractions; nothing here is
meant for large systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_reduce(rows: Sequence[Sequence], rhs: Sequence[Sequence] | None = None):
    """Reduced row echelon form of ``rows`` (and the same operations applied
    to ``rhs``).  Returns (rref, rhs', pivot column list)."""
    m = _as_matrix(rows)
    r = _as_matrix(rhs) if rhs is not None else [[] for _ in m]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        r[row], r[piv] = r[piv], r[row]
        f = m[row][col]
        m[row] = [x / f for x in m[row]]
        r[row] = [x / f for x in r[row]]
        for i in range(nrows):
            if i != row and m[i][col] != 0:
                g = m[i][col]
                m[i] = [a - g * b for a, b in zip(m[i], m[row])]
                r[i] = [a - g * b for a, b in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, r, pivots


def solve_affine(rows: Sequence[Sequence], rhs: Sequence):
    """Solve ``rows . x = rhs`` exactly.

    Returns ``None`` when inconsistent, else ``(particular, basis, free)``:
    a particular solution, a basis of the homogeneous nullspace, and the
    indices of the free columns.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    m, r, pivots = row_reduce(rows, [[Fraction(x)] for x in rhs])
    rank = len(pivots)
    for i in range(rank, nrows):
        if r[i] and r[i][0] != 0:
            return None
    free = [c for c in range(ncols) if c not in pivots]
    particular = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        particular[col] = r[i][0]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -m[i][fc]
        basis.append(vec)
    return particular, basis, free


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Solution of a system expected to pin every variable; ``None`` when
    inconsistent or underdetermined."""
    sol = solve_affine(rows, rhs)
    if sol is None or sol[1]:
        return None
    return sol[0]


def nullspace(rows: Sequence[Sequence]) -> list[Vector]:
    sol = solve_affine(rows, [Fraction(0)] * len(rows))
    return sol[1]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    _, _, pivots = row_reduce(rows)
    return len(pivots)


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish elimination (exact)."""
    m = _as_matrix(rows)
    n = len(m)
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        out *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return out
