"""Y-graph and chord sums, the leg-joining pairing, and the surgery formulas."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .alpaths import al_transfer, through_transfer
from .diagrams import DEFAULT, Conventions, DiagramSum, Term
from .diagrams.algebra import normalize
from .diagrams.graph import Diagram, DiagramError
from .diagrams.relations import ODeltaReport, o_delta_reduce
from .ratfun import LaurentPoly, RatFun, parse_ratfun
from .ratfun.rational import as_ratfun


class SurgeryError(ValueError):
    pass


SIDES = ("+", "-")


@dataclass(frozen=True, order=True)
class LegLabel:
    """A leg: surgery index, side of the critical point (P+ or P-), point id, gradient index."""

    i: int
    side: str
    point: str
    k: int

    def __post_init__(self):
        if self.side not in SIDES:
            raise SurgeryError(f"leg side must be '+' or '-', got {self.side!r}")
        if self.k < 1 or self.i < 1:
            raise SurgeryError(f"surgery and gradient indices start at 1: {self}")

    def __str__(self) -> str:
        return f"{self.i}{self.side}{self.point}:{self.k}"


_LABEL_RE = re.compile(r"^\s*(\d+)\s*([+-])\s*([A-Za-z_][\w']*)\s*:\s*(\d+)\s*$")


def parse_label(x) -> LegLabel:
    """Accepts a LegLabel, a string like ``1+y1:2`` or a table {i, side, point, k}."""
    if isinstance(x, LegLabel):
        return x
    if isinstance(x, str):
        m = _LABEL_RE.match(x)
        if not m:
            raise SurgeryError(f"malformed leg label {x!r}; expected e.g. '1+y1:2'")
        return LegLabel(int(m[1]), m[2], m[3], int(m[4]))
    if isinstance(x, dict):
        try:
            return LegLabel(int(x["i"]), str(x["side"]), str(x["point"]), int(x["k"]))
        except KeyError as exc:
            raise SurgeryError(f"leg label table lacks {exc}") from exc
    raise SurgeryError(f"cannot read a leg label from {x!r}")


def _perm_sign(seq: Sequence) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[j] < s[i]:
                sign = -sign
    return sign


# -- Y sums ---------------------------------------------------------------------

@dataclass(frozen=True)
class YSum:
    terms: tuple[tuple[Fraction, tuple[LegLabel, LegLabel, LegLabel]], ...] = ()

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self) -> set[LegLabel]:
        return {l for _, legs in self.terms for l in legs}

    def __add__(self, other: "YSum") -> "YSum":
        return y_sum_build(list(self.terms) + list(other.terms))

    def scale(self, c) -> "YSum":
        return y_sum_build([(Fraction(c) * a, legs) for a, legs in self.terms])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*Y({', '.join(map(str, legs))})" for c, legs in self.terms)


def y_sum_build(terms: Iterable) -> YSum:
    acc: dict[tuple, Fraction] = {}
    for coeff, legs in terms:
        legs = tuple(parse_label(l) for l in legs)
        if len(legs) != 3:
            raise SurgeryError(f"a Y term needs three legs, got {len(legs)}")
        if len(set(legs)) < 3:
            continue
        key = tuple(sorted(legs))
        acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff) * _perm_sign(legs)
    return YSum(tuple((c, k) for k, c in sorted(acc.items()) if c))


# -- chord sums -----------------------------------------------------------------

@dataclass(frozen=True)
class ChordSum:
    terms: tuple[tuple[RatFun, tuple[LegLabel, LegLabel]], ...] = ()

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self) -> set[LegLabel]:
        return {l for _, legs in self.terms for l in legs}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*C({x}, {y})" for c, (x, y) in self.terms)


@dataclass(frozen=True)
class Route:
    """Where a chord coefficient comes from: an explicit function or a transfer-matrix entry (1-based)."""

    x: LegLabel
    y: LegLabel
    coeff: RatFun | None = None
    matrix: str | None = None  # "direct" or "through"
    row: int = 0
    col: int = 0


def chord_sum_build(A: Sequence[Sequence[int]] | None, routes: Iterable[Route]) -> ChordSum:
    direct = through = None
    acc: dict[tuple, RatFun] = {}
    for r in routes:
        x, y = parse_label(r.x), parse_label(r.y)
        if x.side == y.side:
            raise SurgeryError(f"chord {x} -- {y} joins two legs on the same side")
        if r.coeff is not None:
            c = as_ratfun(parse_ratfun(r.coeff))
        else:
            if A is None:
                raise SurgeryError("matrix-routed chords need a monodromy matrix")
            if r.matrix == "direct":
                direct = direct or al_transfer(A)
                m = direct
            elif r.matrix == "through":
                through = through or through_transfer(A)
                m = through
            else:
                raise SurgeryError(f"unknown chord matrix {r.matrix!r}; use 'direct' or 'through'")
            rows, cols = m.shape
            if not (1 <= r.row <= rows and 1 <= r.col <= cols):
                raise SurgeryError(f"entry ({r.row}, {r.col}) outside the {rows}x{cols} {r.matrix} matrix")
            c = m[r.row - 1, r.col - 1]
        acc[(x, y)] = acc.get((x, y), RatFun.const(0)) + c
    return ChordSum(tuple((c, k) for k, c in sorted(acc.items()) if not c.is_zero()))


# -- pairing --------------------------------------------------------------------

@dataclass
class PairingStats:
    combinations: int = 0
    matched: int = 0
    disconnected: int = 0


def _check_unique(factors: Sequence, what: str) -> None:
    owner: dict[LegLabel, int] = {}
    for idx, f in enumerate(factors):
        for l in f.labels():
            if owner.setdefault(l, idx) != idx:
                raise SurgeryError(f"duplicate leg label {l} in {what} factors {owner[l] + 1} and {idx + 1}")


def _match_chords(legs: dict[LegLabel, tuple[int, int]], cs: Sequence[ChordSum]):
    """All ways to pick one term per chord factor covering exactly the given legs."""
    used: set[LegLabel] = set()
    chosen: list = []

    def rec(k: int):
        if k == len(cs):
            if len(used) == len(legs):
                yield list(chosen)
            return
        for c, (x, y) in cs[k].terms:
            if x in legs and y in legs and x not in used and y not in used:
                used.update((x, y))
                chosen.append((c, x, y))
                yield from rec(k + 1)
                chosen.pop()
                used.difference_update((x, y))

    yield from rec(0)


def _assemble(ys_terms, chords) -> Term | None:
    at: dict[LegLabel, tuple[int, int]] = {}
    for v, (_, legs) in enumerate(ys_terms):
        for pos, l in enumerate(legs):
            at[l] = (v, pos)
    edges, colors = [], []
    orient = [[None] * 3 for _ in ys_terms]
    for e, (c, x, y) in enumerate(chords):
        (vx, px), (vy, py) = at[x], at[y]
        edges.append((vx, vy))
        colors.append(c)
        orient[vx][px] = (e, 0)
        orient[vy][py] = (e, 1)
    coeff = math.prod((a for a, _ in ys_terms), start=Fraction(1))
    if not _connected(len(ys_terms), edges):
        return None
    return Term(coeff, Diagram(tuple(edges), tuple(tuple(o) for o in orient)), tuple(colors))


def _connected(nv: int, edges) -> bool:
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, d in edges:
        parent[find(s)] = find(d)
    return len({find(v) for v in range(nv)}) == 1


def pair(ys: Sequence[YSum], cs: Sequence[ChordSum], conv: Conventions = DEFAULT) -> DiagramSum:
    """Join same-labeled legs of a product of Y sums with a product of chord sums."""
    if 2 * len(cs) != 3 * len(ys):
        raise SurgeryError(f"{len(ys)} Y factors need {3 * len(ys) // 2} chord factors, got {len(cs)}")
    _check_unique(ys, "Y")
    _check_unique(cs, "chord")
    stats = PairingStats()
    terms: list[Term] = []
    for combo in product(*(y.terms for y in ys)):
        stats.combinations += 1
        legs = {l: (v, p) for v, (_, ls) in enumerate(combo) for p, l in enumerate(ls)}
        for chords in _match_chords(legs, cs):
            stats.matched += 1
            t = _assemble(combo, chords)
            if t is None:
                stats.disconnected += 1
                continue
            terms.append(t)
    out = normalize(DiagramSum(tuple(terms)), conv)
    out.meta.update(pairing=stats.__dict__.copy())
    return out


def surgery_Zn(ys: Sequence[YSum], cs: Sequence[ChordSum], n: int, conv: Conventions = DEFAULT) -> DiagramSum:
    """(2n)! <prod Y, prod C>; zero when there are more than 2n surgeries."""
    m = len(ys)
    if m > 2 * n:
        return DiagramSum()
    if m < 2 * n:
        raise SurgeryError(f"formula applies only to m >= 2n (m={m}, n={n})")
    if len(cs) != 3 * n:
        raise SurgeryError(f"need {3 * n} chord sums for n={n}, got {len(cs)}")
    p = pair(ys, cs, conv)
    out = p.scale(math.factorial(2 * n))
    out.meta.update(p.meta)
    return out


@dataclass(frozen=True)
class QResult:
    value: DiagramSum
    before_reduction: DiagramSum
    report: ODeltaReport | None
    pairing: dict = field(default_factory=dict)


def _check_restricted(ys: Sequence[YSum]) -> None:
    for idx, y in enumerate(ys):
        for _, legs in y.terms:
            if len({l.side for l in legs}) != 1:
                raise SurgeryError(f"Y factor {idx + 1} has a term mixing P+ and P- legs: {', '.join(map(str, legs))}")


def surgery_Q(ys: Sequence[YSum], cs: Sequence[ChordSum], delta: LaurentPoly | None, Delta: LaurentPoly | None,
              k_max: int = 3, conv: Conventions = DEFAULT) -> QResult:
    """2! <Y(1)_0 Y(2)_0, C(1) C(2) C(3)> reduced modulo O_delta."""
    m = len(ys)
    if m > 2:
        return QResult(DiagramSum(), DiagramSum(), None)
    if m < 2:
        raise SurgeryError(f"formula applies only to m >= 2 (m={m})")
    if len(cs) != 3:
        raise SurgeryError(f"need 3 chord sums, got {len(cs)}")
    _check_restricted(ys)
    p = pair(ys, cs, conv)
    raw = p.scale(2)
    if delta is None or Delta is None:
        return QResult(raw, raw, None, p.meta.get("pairing", {}))
    rep = o_delta_reduce(raw, delta, Delta, k_max, conv)
    return QResult(rep.result, raw, rep, p.meta.get("pairing", {}))


# -- the worked genus-3 example --------------------------------------------------

A0 = ((2, 1), (1, 1))


def block_sum(*blocks: Sequence[Sequence[int]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def _perms3():
    from itertools import permutations
    return list(permutations((1, 2, 3)))


def example_y_sums(delta: int = 1, eps: int = 1) -> list[YSum]:
    """Y(1)_0 = delta Y(y'..) + eps Y(x..) and Y(2)_0 = delta Y(w'..) + eps Y(z..), summed over the
    3! assignments of gradient indices to the three points."""
    def star(i, side, name, coeff):
        return [(coeff, tuple(LegLabel(i, side, f"{name}{s[j]}", j + 1) for j in range(3))) for s in _perms3()]

    y1 = y_sum_build(star(1, "+", "y", delta) + star(1, "-", "x", eps))
    y2 = y_sum_build(star(2, "+", "w", delta) + star(2, "-", "z", eps))
    return [y1, y2]


def example_routes(k: int) -> list[Route]:
    """Chords of gradient index k: y'_a -> z_a read from (1-tA)^-1, w'_a -> x_a from tA(1-tA)^-1."""
    routes = []
    for a in (1, 2, 3):
        routes.append(Route(LegLabel(1, "+", f"y{a}", k), LegLabel(2, "-", f"z{a}", k),
                            matrix="direct", row=2 * a - 1, col=2 * a - 1))
        routes.append(Route(LegLabel(2, "+", f"w{a}", k), LegLabel(1, "-", f"x{a}", k),
                            matrix="through", row=2 * a, col=2 * a))
    return routes


def example_chord_sums() -> list[ChordSum]:
    A = block_sum(A0, A0, A0)
    return [chord_sum_build(A, example_routes(k)) for k in (1, 2, 3)]
