"""Small dense linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are sequences of rows.  Everything
here is exact; nothing is tuned for size beyond a handful of dimensions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def norm2(u: Sequence):
    return dot(u, u)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*m)]


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [[Fraction(v) for v in row] for row in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : m x = 0}; one vector per free column, in column order."""
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    a, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Unique solution of the square system m x = b, or None if singular."""
    n = len(m)
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(a[i][n] for i in range(n))


def solve_consistent(m: Sequence[Sequence], b: Sequence, ncols: int) -> Vector | None:
    """Some solution of m x = b (free variables set to zero), or None."""
    if not m:
        return tuple(Fraction(0) for _ in range(ncols))
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(a, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in a]


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result
