"""Invariants of a surface bundle read off from the monodromy on H_1 of the fiber."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ratfun import LaurentPoly, RatFun, det_one_minus_tA, minimal_polynomial, smith_normal_form
from .ratfun.qlinalg import qmatmul

ONE_MINUS_T = LaurentPoly({0: 1, 1: -1})


class MonodromyError(ValueError):
    """Raised when the supplied monodromy data cannot produce the requested invariant."""


@dataclass(frozen=True)
class MonodromyData:
    genus: int
    A: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        object.__setattr__(self, "A", A)
        if self.genus < 0:
            raise MonodromyError("genus must be nonnegative")
        n = 2 * self.genus
        if len(A) != n or any(len(r) != n for r in A):
            raise MonodromyError(f"matrix must be {n}x{n} for genus {self.genus}")
        if n and abs(_int_det(A)) != 1:
            raise MonodromyError("matrix is not invertible over Z (det != ±1)")

    @classmethod
    def of(cls, A: Sequence[Sequence[int]]) -> "MonodromyData":
        if len(A) % 2:
            raise MonodromyError("matrix size must be even")
        return cls(len(A) // 2, tuple(map(tuple, A)))

    @property
    def size(self) -> int:
        return 2 * self.genus


def _int_det(A) -> int:
    c = det_one_minus_tA(A)
    # det(I - tA) has top coefficient (-1)^n det A
    n = len(A)
    return int(c.coeff(n) * (-1) ** n)


def lefschetz_zeta(m: MonodromyData) -> RatFun:
    """det(1 - tA) / (1 - t)^2."""
    return RatFun(det_one_minus_tA(m.A), ONE_MINUS_T * ONE_MINUS_T)


def matrix_power_traces(A: Sequence[Sequence[int]], n_max: int) -> list[int]:
    """tr(A^n) for n = 1..n_max by repeated multiplication."""
    out = []
    if not A:
        return [0] * n_max
    P = [list(map(Fraction, r)) for r in A]
    for _ in range(n_max):
        out.append(int(sum(P[i][i] for i in range(len(A)))))
        P = qmatmul(P, A)
    return out


def lefschetz_numbers(m: MonodromyData, n_max: int) -> list[int]:
    """L(phi^n) = 2 - tr(A^n), n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return [2 - tr for tr in matrix_power_traces(m.A, n_max)]


def normalize_symmetric(p: LaurentPoly, what: str = "polynomial") -> LaurentPoly:
    """Rescale and shift p so that p(1) = 1 and p(t^-1) = p(t)."""
    if p.is_zero():
        raise MonodromyError(f"{what} is zero")
    span = p.degree - p.valuation
    if span % 2:
        raise MonodromyError(f"{what} not reciprocal: odd span {span}")
    q = p.shift(-(p.valuation + span // 2))
    val = q(Fraction(1))
    if val == 0:
        raise MonodromyError(f"{what} vanishes at t = 1")
    q = q.scale(1 / Fraction(val))
    if q.bar() != q:
        raise MonodromyError(f"{what} not reciprocal")
    return q


def alexander_polynomial(m: MonodromyData) -> LaurentPoly:
    """Delta = c t^-g det(1 - tA), with c fixed by Delta(1) = 1."""
    det = det_one_minus_tA(m.A)
    val = det(Fraction(1))
    if val == 0:
        raise MonodromyError("b1 > 1: Alexander normalization impossible (det(I - A) = 0)")
    delta = det.shift(-m.genus).scale(1 / Fraction(val))
    if delta.bar() != delta:
        raise MonodromyError("monodromy char. polynomial not reciprocal")
    assert delta(Fraction(1)) == 1
    return delta


def small_delta(m: MonodromyData) -> LaurentPoly:
    """Minimal polynomial of A, normalized like Delta."""
    return normalize_symmetric(minimal_polynomial(m.A), "minimal polynomial")


def i_delta(delta: LaurentPoly | RatFun) -> RatFun:
    """(1 + t)/(1 - t) + t Delta'/Delta."""
    d = delta if isinstance(delta, RatFun) else RatFun.from_poly(delta)
    if d.is_zero():
        raise ZeroDivisionError("I_Delta of the zero polynomial")
    return RatFun(LaurentPoly({0: 1, 1: 1}), ONE_MINUS_T) + d.log_derivative()


@dataclass(frozen=True)
class IdentityReport:
    genus: int
    zeta_log_derivative: RatFun
    delta_log_derivative: RatFun
    lhs: RatFun
    rhs: RatFun
    holds: bool
    i_delta: RatFun
    restated_lhs: RatFun
    restatement_holds: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.holds and self.restatement_holds


def zeta_alexander_identity(m: MonodromyData) -> IdentityReport:
    """Check t zeta'/zeta - t Delta'/Delta = 2t/(1 - t) + g, and its I_Delta form."""
    zl = lefschetz_zeta(m).log_derivative()
    delta = alexander_polynomial(m)
    dl = RatFun.from_poly(delta).log_derivative()
    lhs = zl - dl
    rhs = RatFun(LaurentPoly({1: 2}), ONE_MINUS_T) + m.genus
    idl = i_delta(delta)
    restated = zl - (m.genus - 1)
    return IdentityReport(m.genus, zl, dl, lhs, rhs, lhs == rhs, idl, restated, restated == idl)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free ⊕ Z/t1 ⊕ ... ⊕ Z/tk."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{k}" for k in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel(M: Sequence[Sequence[int]], rows: int, cols: int) -> AbelianGroup:
    """Z^rows / image(M) for an integer rows x cols matrix."""
    if rows == 0:
        return AbelianGroup(0)
    if cols == 0:
        return AbelianGroup(rows)
    diag = smith_normal_form(M).diagonal
    nonzero = [d for d in diag if d]
    return AbelianGroup(rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def h1_mapping_torus(m: MonodromyData) -> AbelianGroup:
    """H_1(M) = Z ⊕ coker(A - I)."""
    n = m.size
    AmI = [[m.A[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    c = cokernel(AmI, n, n)
    return AbelianGroup(1 + c.free_rank, c.torsion)


# -- symplectic generators -------------------------------------------------------

def symplectic_form(g: int) -> list[list[int]]:
    """J with omega(x, y) = x^T J y on the basis a_1, b_1, ..., a_g, b_g."""
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return J


def transvection(v: Sequence[int], sign: int = 1) -> list[list[int]]:
    """Symplectic transvection x -> x + sign * omega(x, v) v."""
    n = len(v)
    J = symplectic_form(n // 2)
    Jv = [sum(J[i][j] * v[j] for j in range(n)) for i in range(n)]
    return [[int(i == j) + sign * v[i] * Jv[j] for j in range(n)] for i in range(n)]


def humphries_vectors(g: int) -> list[list[int]]:
    """Homology classes of the Dehn twist curves a_i, b_i and a_i - a_(i+1)."""
    out = []
    for i in range(g):
        a = [0] * (2 * g)
        a[2 * i] = 1
        b = [0] * (2 * g)
        b[2 * i + 1] = 1
        out += [a, b]
        if i + 1 < g:
            c = [0] * (2 * g)
            c[2 * i], c[2 * i + 2] = 1, -1
            out.append(c)
    return out


def random_symplectic(g: int, length: int, rng) -> list[list[int]]:
    """Product of ``length`` random generator transvections (or inverses); ``rng`` is a random.Random."""
    gens = humphries_vectors(g)
    M = [[int(i == j) for j in range(2 * g)] for i in range(2 * g)]
    for _ in range(length):
        T = transvection(rng.choice(gens), rng.choice((1, -1)))
        M = [[sum(M[i][k] * T[k][j] for k in range(2 * g)) for j in range(2 * g)] for i in range(2 * g)]
    return M
