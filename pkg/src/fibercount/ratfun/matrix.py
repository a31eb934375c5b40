"""Matrices over Q(t) and characteristic/minimal polynomials of rational matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .laurent import LaurentPoly
from .qlinalg import nullspace, qmatmul, to_q
from .rational import RF_ONE, RF_ZERO, RatFun, as_ratfun


class SingularMatrixError(ZeroDivisionError):
    pass


class RatFunMatrix:
    """Immutable rectangular grid of RatFun entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(as_ratfun(x) for x in row) for row in entries)
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = widths.pop() if widths else (cols or 0)
        self._e = grid

    @classmethod
    def identity(cls, n: int) -> "RatFunMatrix":
        return cls([[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatFunMatrix":
        return cls([[RF_ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_int(cls, m: Sequence[Sequence[int]]) -> "RatFunMatrix":
        return cls([[RatFun.const(Fraction(x)) for x in row] for row in m], cols=len(m[0]) if m else 0)

    def __getitem__(self, ij: tuple[int, int]) -> RatFun:
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> list[list[RatFun]]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def map(self, fn: Callable[[RatFun], RatFun]) -> "RatFunMatrix":
        return RatFunMatrix([[fn(x) for x in r] for r in self._e], cols=self.cols)

    def transpose(self) -> "RatFunMatrix":
        return RatFunMatrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows)

    def _check_same(self, other: "RatFunMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatFunMatrix") -> "RatFunMatrix":
        self._check_same(other)
        return RatFunMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], cols=self.cols)

    def __sub__(self, other: "RatFunMatrix") -> "RatFunMatrix":
        self._check_same(other)
        return RatFunMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], cols=self.cols)

    def __neg__(self) -> "RatFunMatrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "RatFunMatrix":
        c = as_ratfun(c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "RatFunMatrix") -> "RatFunMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RF_ZERO
                for k in range(self.cols):
                    a = self._e[i][k]
                    if a:
                        b = other._e[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RatFunMatrix(out, cols=other.cols)

    def trace(self) -> RatFun:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = RF_ZERO
        for i in range(self.rows):
            acc = acc + self._e[i][i]
        return acc

    def inverse(self) -> "RatFunMatrix":
        return matrix_inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunMatrix) and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        return "RatFunMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._e) + "])"


def matrix_inverse(m: RatFunMatrix) -> RatFunMatrix:
    """Gauss-Jordan inverse over Q(t)."""
    n = m.rows
    if m.cols != n:
        raise ValueError(f"inverse of non-square {m.shape} matrix")
    a = m.tolist()
    inv = RatFunMatrix.identity(n).tolist()
    for c in range(n):
        # prefer the simplest nonzero pivot to keep intermediate degrees small
        cands = [i for i in range(c, n) if a[i][c]]
        if not cands:
            raise SingularMatrixError(f"singular matrix: no nonzero pivot in column {c}")
        p = min(cands, key=lambda i: (a[i][c].den.degree + a[i][c].num.degree - a[i][c].num.valuation, i))
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        piv = a[c][c].inverse()
        a[c] = [x * piv for x in a[c]]
        inv[c] = [x * piv for x in inv[c]]
        for i in range(n):
            f = a[i][c]
            if i != c and f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
    return RatFunMatrix(inv, cols=n)


def one_minus_tA(A: Sequence[Sequence[int]]) -> RatFunMatrix:
    n = len(A)
    t = RatFun.monomial(1)
    return RatFunMatrix([[(RF_ONE if i == j else RF_ZERO) - t * Fraction(A[i][j]) for j in range(n)] for i in range(n)],
                        cols=n)


def charpoly_coeffs(A: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients c_0..c_n of det(x I - A) = sum c_k x^k (Faddeev-LeVerrier)."""
    n = len(A)
    a = to_q(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
        M = qmatmul(a, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            M[i][i] += coeffs[n - k + 1]
        AM = qmatmul(a, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs


def det_one_minus_tA(A: Sequence[Sequence]) -> LaurentPoly:
    """det(I - tA) as a polynomial in t."""
    c = charpoly_coeffs(A)
    n = len(c) - 1
    # det(I - tA) = t^n det(t^-1 I - A)
    return LaurentPoly((n - k, c[k]) for k in range(n + 1))


def minimal_polynomial(A: Sequence[Sequence]) -> LaurentPoly:
    """Monic minimal polynomial of a rational square matrix."""
    n = len(A)
    if n == 0:
        return LaurentPoly.const(1)
    a = to_q(A)
    powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    for k in range(1, n + 1):
        powers.append(qmatmul(a, powers[-1]))
        # columns are vec(A^0..A^k); look for the first dependency
        cols = [[x for row in P for x in row] for P in powers]
        mat = [[cols[j][i] for j in range(k + 1)] for i in range(n * n)]
        ns = nullspace(mat, k + 1)
        if ns:
            v = ns[0]
            lead = v[k]
            return LaurentPoly((i, c / lead) for i, c in enumerate(v))
    raise AssertionError("Cayley-Hamilton guarantees a dependency by degree n")
