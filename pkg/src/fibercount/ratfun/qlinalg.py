"""Dense linear algebra over Q with Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

QMatrix = list[list[Fraction]]


def to_q(m: Sequence[Sequence]) -> QMatrix:
    return [[Fraction(x) for x in row] for row in m]


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and pivot columns (leftmost pivots first)."""
    a = to_q(m)
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int) -> QMatrix:
    """Basis of {x : m x = 0} as a list of vectors."""
    red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def reduce_vector(v: Sequence, red: QMatrix, pivots: Sequence[int]) -> list[Fraction]:
    """Reduce v against an RREF basis; the result has zeros in all pivot columns."""
    out = [Fraction(x) for x in v]
    for row, pc in zip(red, pivots):
        if out[pc]:
            f = out[pc]
            out = [x - f * y for x, y in zip(out, row)]
    return out


def in_span(v: Sequence, red: QMatrix, pivots: Sequence[int]) -> bool:
    return not any(reduce_vector(v, red, pivots))


def qmatmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> QMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum((Fraction(a[i][k]) * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]
