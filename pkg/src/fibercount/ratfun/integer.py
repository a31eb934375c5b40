"""Integer lattice routines: Smith and Hermite normal forms, coset reduction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = list[list[int]]


def _copy(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(map(int, row)) for row in m]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms.

    ``ncols`` is needed only for matrices with zero rows.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest nonzero entry of row/col t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, bi, bj = min(cand)
            swap_rows(t, bi)
            swap_cols(t, bj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def invariant_factors(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, ...]:
    return smith_normal_form(m, ncols).diagonal


def hermite_rows(gens: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``gens`` in Z^dim.

    Rows are in echelon form with positive pivots, and entries above each
    pivot are reduced into [0, pivot).
    """
    rows = [list(map(int, g)) for g in gens if any(g)]
    basis: IntMatrix = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[col] else zero).append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = [r for r in zero if any(r)]
        col += 1
    # reduce entries above pivots
    for i, r in enumerate(basis):
        pc = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            q = basis[k][pc] // r[pc]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], r)]
    return basis


def reduce_mod_lattice(vec: Sequence[int], hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical coset representative of vec modulo the row lattice ``hnf``.

    Each pivot coordinate is brought into [0, pivot); the result depends only
    on the coset.
    """
    v = list(map(int, vec))
    for r in hnf:
        pc = next(j for j, x in enumerate(r) if x)
        q = v[pc] // r[pc]
        if q:
            v = [x - q * y for x, y in zip(v, r)]
    return tuple(v)


def integer_rank(m: Sequence[Sequence[int]]) -> int:
    return sum(1 for d in invariant_factors(m) if d)
