"""Transfer matrices of AL-path counts and the AL chain complex.

Index convention: ``A[i][j]`` counts paths from point i to point j across one
fundamental domain, so the coefficient of ``V_ij`` in the propagator
expansion is entry ``(j, i)`` of ``(I - tA)^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence
import warnings

from .monodromy import AbelianGroup, cokernel
from .ratfun import RF_ZERO, RatFun, RatFunMatrix, matrix_inverse, one_minus_tA
from .ratfun.integer import matmul

IntMatrix = tuple[tuple[int, ...], ...]


def _as_int_matrix(m: Sequence[Sequence[int]], name: str = "matrix") -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in m)
    if any(len(r) != len(out) for r in out):
        raise ValueError(f"{name} must be square")
    return out


def al_transfer(A: Sequence[Sequence[int]]) -> RatFunMatrix:
    """(I - tA)^-1."""
    A = _as_int_matrix(A)
    if not A:
        return RatFunMatrix([], cols=0)
    return matrix_inverse(one_minus_tA(A))


def through_transfer(A: Sequence[Sequence[int]]) -> RatFunMatrix:
    """tA (I - tA)^-1, the paths that cross the reference fiber at least once."""
    A = _as_int_matrix(A)
    if not A:
        return RatFunMatrix([], cols=0)
    t = RatFun.monomial(1)
    return RatFunMatrix.from_int(A).scale(t) @ al_transfer(A)


def vhat_coefficients(A: Sequence[Sequence[int]]) -> RatFunMatrix:
    """Matrix whose (i, j) entry is the coefficient of V_ij, i.e. (I - tA)^-1 at (j, i)."""
    return al_transfer(A).transpose()


@dataclass(frozen=True)
class FiberCriticalData:
    points: tuple[tuple[str, int], ...]

    def __post_init__(self):
        pts = tuple((str(p), int(k)) for p, k in self.points)
        object.__setattr__(self, "points", pts)
        ids = [p for p, _ in pts]
        if len(set(ids)) != len(ids):
            raise ValueError("critical point ids must be unique")
        if any(k not in (0, 1, 2) for _, k in pts):
            raise ValueError("critical point index must be 0, 1 or 2")
        if pts and not ({0, 2} <= {k for _, k in pts}):
            warnings.warn("fiber data lacks an index-0 or index-2 point", stacklevel=2)

    def count(self, index: int) -> int:
        return sum(1 for _, k in self.points if k == index)

    def ids(self, index: int) -> list[str]:
        return [p for p, k in self.points if k == index]


@dataclass(frozen=True)
class TransitionMatrix:
    blocks: tuple[IntMatrix, IntMatrix, IntMatrix]

    def __post_init__(self):
        if len(self.blocks) != 3:
            raise ValueError("need one transition block per Morse index 0, 1, 2")
        object.__setattr__(self, "blocks", tuple(_as_int_matrix(b, f"A({i})") for i, b in enumerate(self.blocks)))

    def check_against(self, fiber: FiberCriticalData) -> None:
        for i, b in enumerate(self.blocks):
            if len(b) != fiber.count(i):
                raise ValueError(f"A({i}) is {len(b)}x{len(b)} but the fiber has {fiber.count(i)} index-{i} points")


def closed_orbit_series(td: TransitionMatrix) -> RatFun:
    """sum_i (-1)^i tr(tA_i (I - tA_i)^-1)."""
    total = RF_ZERO
    for i, block in enumerate(td.blocks):
        if block:
            tr = through_transfer(block).trace()
            total = total + tr if i % 2 == 0 else total - tr
    return total


# -- the AL chain complex ------------------------------------------------------

def _zero(r: int, c: int) -> IntMatrix:
    return tuple(tuple(0 for _ in range(c)) for _ in range(r))


@dataclass(frozen=True)
class ALChainComplex:
    """Two Morse complexes on the fiber joined by the AL-path map Phi_1.

    ``dims_a[j]``/``dims_b[j]`` are the numbers of index-j generators of f_a/f_b.
    ``phi0_a[j]`` is the boundary C_j(f_a) -> C_{j-1}(f_a) (j = 1, 2), stored as a
    dims_a[j-1] x dims_a[j] matrix; ``phi0_b`` likewise.  ``phi1[j]`` is the
    dims_b[j] x dims_a[j] matrix of Phi_1 in degree j.
    """

    dims_a: tuple[int, int, int]
    dims_b: tuple[int, int, int]
    phi0_a: dict = field(default_factory=dict)
    phi0_b: dict = field(default_factory=dict)
    phi1: dict = field(default_factory=dict)

    def __post_init__(self):
        da, db = tuple(map(int, self.dims_a)), tuple(map(int, self.dims_b))
        object.__setattr__(self, "dims_a", da)
        object.__setattr__(self, "dims_b", db)
        object.__setattr__(self, "phi0_a", self._fill(self.phi0_a, da, da, boundary=True, name="phi0_a"))
        object.__setattr__(self, "phi0_b", self._fill(self.phi0_b, db, db, boundary=True, name="phi0_b"))
        object.__setattr__(self, "phi1", self._fill(self.phi1, db, da, boundary=False, name="phi1"))

    @staticmethod
    def _fill(given: dict, rows_dims, cols_dims, boundary: bool, name: str) -> dict:
        out = {}
        degrees = (1, 2) if boundary else (0, 1, 2)
        for j in list(given):
            if int(j) not in degrees:
                raise ValueError(f"{name}: no map in degree {j}")
        for j in degrees:
            r = rows_dims[j - 1] if boundary else rows_dims[j]
            c = cols_dims[j]
            m = given.get(j, given.get(str(j)))
            if m is None:
                out[j] = _zero(r, c)
                continue
            m = tuple(tuple(int(x) for x in row) for row in m)
            if r == 0 or c == 0:
                if any(len(row) for row in m) and (len(m) != r):
                    raise ValueError(f"{name}[{j}] must be {r}x{c}")
                out[j] = _zero(r, c)
                continue
            if len(m) != r or any(len(row) != c for row in m):
                raise ValueError(f"{name}[{j}] must be {r}x{c}, got {len(m)}x{len(m[0]) if m else 0}")
            out[j] = m
        return out


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failure: tuple[str, int, int, int] | None = None  # (condition, degree, row, col)

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        cond, j, r, c = self.failure
        return f"invalid: {cond} fails in degree {j} at entry ({r}, {c})"


def _first_nonzero(m) -> tuple[int, int] | None:
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x:
                return (i, j)
    return None


def _sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def validate_chain_complex(c: ALChainComplex) -> ValidationReport:
    """Check both boundaries square to zero and Phi_1 is a chain map."""
    for name, phi, dims in (("phi0_a^2 = 0", c.phi0_a, c.dims_a), ("phi0_b^2 = 0", c.phi0_b, c.dims_b)):
        if dims[0] and dims[2]:
            bad = _first_nonzero(matmul(phi[1], phi[2]))
            if bad:
                return ValidationReport(False, (name, 2, *bad))
    # Phi0(f_b) Phi1 = Phi1 Phi0(f_a) as maps C_j(f_a) -> C_{j-1}(f_b)
    for j in (1, 2):
        if c.dims_b[j - 1] == 0 or c.dims_a[j] == 0:
            continue
        lhs = matmul(c.phi0_b[j], c.phi1[j]) if c.dims_b[j] else [[0] * c.dims_a[j] for _ in range(c.dims_b[j - 1])]
        rhs = matmul(c.phi1[j - 1], c.phi0_a[j]) if c.dims_a[j - 1] else [[0] * c.dims_a[j] for _ in range(c.dims_b[j - 1])]
        bad = _first_nonzero(_sub(lhs, rhs))
        if bad:
            return ValidationReport(False, ("chain map", j, *bad))
    return ValidationReport(True)


class ChainComplexError(ValueError):
    pass


def al_dims(c: ALChainComplex) -> list[int]:
    """dim C_j^AL = dims_b[j] + dims_a[j-1] for j = 0..3."""
    def get(d, j):
        return d[j] if 0 <= j <= 2 else 0
    return [get(c.dims_b, j) + get(c.dims_a, j - 1) for j in range(4)]


def al_boundary(c: ALChainComplex) -> dict[int, list[list[int]]]:
    """Boundary maps d_j : C_j^AL -> C_{j-1}^AL for j = 1..3, in block form.

    C_j^AL = C_j(f_b) ⊕ C_{j-1}(f_a); d = [[Phi0_b, Phi1], [0, -Phi0_a]].
    """
    rep = validate_chain_complex(c)
    if not rep.valid:
        raise ChainComplexError(str(rep))
    dims = al_dims(c)

    def block(m, r, cc):
        return [list(row) for row in m] if r and cc else [[0] * cc for _ in range(r)]

    out = {}
    for j in (1, 2, 3):
        rb, ra = (c.dims_b[j - 1] if j - 1 <= 2 else 0), (c.dims_a[j - 2] if j - 2 >= 0 else 0)
        cb, ca = (c.dims_b[j] if j <= 2 else 0), c.dims_a[j - 1]
        top_left = block(c.phi0_b[j], rb, cb) if j in (1, 2) else [[0] * cb for _ in range(rb)]
        top_right = block(c.phi1[j - 1], rb, ca)
        bot_left = [[0] * cb for _ in range(ra)]
        bot_right = [[-x for x in row] for row in block(c.phi0_a[j - 1], ra, ca)] if j - 1 in (1, 2) \
            else [[0] * ca for _ in range(ra)]
        M = [tl + tr for tl, tr in zip(top_left, top_right)] + [bl + br for bl, br in zip(bot_left, bot_right)]
        assert len(M) == dims[j - 1] and all(len(r) == dims[j] for r in M)
        out[j] = M
    for j in (2, 3):
        if dims[j - 2] and dims[j - 1] and dims[j]:
            if _first_nonzero(matmul(out[j - 1], out[j])):
                raise ChainComplexError(f"boundary does not square to zero in degree {j}")
    return out


def homology_from_boundaries(dims: Sequence[int], bd: dict[int, Sequence[Sequence[int]]]) -> list[AbelianGroup]:
    """H_j = ker d_j / im d_{j+1} from integer boundary matrices d_j: C_j -> C_{j-1}."""
    from .ratfun import smith_normal_form

    def rank(j):
        if j not in bd or not dims[j] or not dims[j - 1]:
            return 0
        return smith_normal_form(bd[j]).rank

    groups = []
    top = len(dims) - 1
    for j in range(len(dims)):
        kernel_rank = dims[j] - (rank(j) if j >= 1 else 0)
        if j < top and dims[j] and dims[j + 1] and (j + 1) in bd:
            diag = smith_normal_form(bd[j + 1]).diagonal
            nz = [d for d in diag if d]
            groups.append(AbelianGroup(kernel_rank - len(nz), tuple(d for d in nz if d > 1)))
        else:
            groups.append(AbelianGroup(kernel_rank))
    return groups


def al_homology(c: ALChainComplex) -> list[AbelianGroup]:
    """H_j(C^AL) for j = 0..3."""
    return homology_from_boundaries(al_dims(c), al_boundary(c))


def torus_model(A: Sequence[Sequence[int]]) -> ALChainComplex:
    """Minimal-Morse model of a mapping torus with fiber of genus g = len(A)/2.

    Both fiber functions have 1, 2g, 1 critical points and zero Morse boundary;
    Phi_1 is (1 - 1, I - A, 1 - 1), i.e. id minus the monodromy action.
    """
    A = _as_int_matrix(A)
    n = len(A)
    I_minus_A = tuple(tuple(int(i == j) - A[i][j] for j in range(n)) for i in range(n))
    return ALChainComplex((1, n, 1), (1, n, 1), phi1={0: ((0,),), 1: I_minus_A, 2: ((0,),)})


__all__ = [
    "ALChainComplex", "ChainComplexError", "FiberCriticalData", "TransitionMatrix", "ValidationReport",
    "al_boundary", "al_dims", "al_homology", "al_transfer", "closed_orbit_series", "homology_from_boundaries",
    "through_transfer", "torus_model", "validate_chain_complex", "vhat_coefficients",
]
