"""IHX-aware equality, H^1 classes of monomial colorings, and reduction modulo O_delta."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import QQ

from ..monodromy import i_delta
from ..ratfun import LaurentPoly, RatFun, reduce_mod_lattice
from ..ratfun.qlinalg import reduce_vector, rref
from . import classvalue
from .algebra import (
    DEFAULT,
    AtomKey,
    Conventions,
    DiagramSum,
    Term,
    _atom_sort_key,
    apply_holonomy,
    atoms_to_sum,
    normalize,
    reduce_atoms,
    split_color,
    symmetrized_value,
    syntactic_atoms,
    trace,
)
from .canon import canonical_graph, to_canonical
from .graph import THETA, Diagram, DiagramError


# -- monomial classes ------------------------------------------------------------

@dataclass(frozen=True)
class MonomialClass:
    graph: tuple[tuple[int, int], ...]
    representative: tuple[int, ...]  # exponent vector on the canonical graph, lattice-reduced
    coordinates: tuple[int, ...]     # coordinates in H^1 = Z^b

    def is_zero(self) -> bool:
        return not any(self.coordinates)


def monomial_class(g: Diagram, exps: Sequence[int]) -> MonomialClass:
    """Class of the monomial coloring t^exps in Z^E / coboundaries = H^1(G; Z)."""
    if len(exps) != g.num_edges:
        raise DiagramError(f"need {g.num_edges} exponents, got {len(exps)}")
    cg, iso = to_canonical(g)
    k0 = [0] * g.num_edges
    for e, k in enumerate(exps):
        k0[iso.edge[e]] = -k if iso.flip[e] else k
    rep = reduce_mod_lattice(k0, cg.hnf)
    coords = tuple(sum(cg.class_coords[e][i] * rep[e] for e in range(g.num_edges)) for i in range(cg.betti))
    return MonomialClass(cg.key, rep, coords)


# -- joint coordinates by class values ---------------------------------------------

class _Coordinates:
    """Linear coordinates for several sums at once, from exact class values."""

    def __init__(self, conv: Conventions):
        self.conv = conv
        self._cache: dict[AtomKey, object] = {}

    def value_by_graph(self, atoms: dict[AtomKey, Fraction]) -> dict:
        out: dict = {}
        for key, c in atoms.items():
            v = self._cache.get(key)
            if v is None:
                v = self._cache[key] = symmetrized_value(key, self.conv)
            g = key[0]
            out[g] = out.get(g, 0) + v * QQ(c.numerator, c.denominator)
        return out

    def vectors(self, sums: Sequence[dict[AtomKey, Fraction]]) -> list[list[Fraction]]:
        per = [self.value_by_graph(a) for a in sums]
        graphs = sorted({g for p in per for g in p})
        rows = [[] for _ in sums]
        for g in graphs:
            K, _ = classvalue._field(canonical_graph(g).betti)
            vals = [p.get(g, K.zero) for p in per]
            vals = [K.zero if isinstance(v, int) else v for v in vals]
            vecs, _ = classvalue.coefficient_vectors(vals)
            for r, v in zip(rows, vecs):
                r.extend(v)
        return rows


# -- IHX ------------------------------------------------------------------------------

def ihx_relation(term: Term, e: int) -> DiagramSum | None:
    """The Jacobi-form IHX relation around a non-loop edge e colored by a monomial.

    With cyclic orders (e_u, a, b) at u and (e_v, c, d) at v the relation is
    T(u:(a,b,e), v:(c,d,e)) + T(u:(b,c,e), v:(a,d,e)) + T(u:(c,a,e), v:(b,d,e)) = 0,
    after a Holonomy shift at v making the color of e equal to 1.
    """
    d = term.diagram
    s, t = d.edges[e]
    if s == t:
        return None
    alpha, k, f = split_color(term.colors[e])
    if f != RatFun.const(1):
        return None
    base = apply_holonomy(term, t, -k)  # e points into t
    base = Term(base.coeff * alpha, d, base.colors[:e] + (RatFun.const(1),) + base.colors[e + 1:])
    u, v = s, t
    hu, hv = (e, 0), (e, 1)

    def rest(vertex, h):
        o = d.orientation[vertex]
        i = o.index(h)
        return o[(i + 1) % 3], o[(i + 2) % 3]

    a, b = rest(u, hu)
    c, dd = rest(v, hv)
    configs = [((a, b), (c, dd)), ((b, c), (a, dd)), ((c, a), (b, dd))]
    terms = []
    for (x1, x2), (y1, y2) in configs:
        edges = [list(p) for p in d.edges]
        for h in (x1, x2):
            edges[h[0]][h[1]] = u
        for h in (y1, y2):
            edges[h[0]][h[1]] = v
        orient = list(d.orientation)
        orient[u] = (x1, x2, hu)
        orient[v] = (y1, y2, hv)
        try:
            nd = Diagram(tuple(map(tuple, edges)), tuple(orient))
        except DiagramError:
            continue
        terms.append(Term(base.coeff, nd, base.colors))
    return DiagramSum(tuple(terms))


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:
        if self is Verdict.UNKNOWN:
            raise ValueError("an UNKNOWN verdict has no truth value")
        return self is Verdict.EQUAL


@dataclass(frozen=True)
class EqualityOptions:
    holonomy_window: int = 2
    use_ihx: bool = True
    conventions: Conventions = DEFAULT


@dataclass(frozen=True)
class EqualityReport:
    verdict: Verdict
    relations_used: int = 0
    rounds: int = 0
    saturated: bool = True
    difference: DiagramSum = field(default_factory=DiagramSum)


def _atom_terms(atoms: dict[AtomKey, Fraction]) -> list[Term]:
    return list(atoms_to_sum(atoms).terms)


def _holonomy_variants(term: Term, window: int) -> list[Term]:
    out = [term]
    for v in range(term.diagram.num_vertices):
        for k in range(-window, window + 1):
            if k:
                out.append(apply_holonomy(term, v, k))
    return out


def equal_mod_relations(a: DiagramSum, b: DiagramSum, opts: EqualityOptions = EqualityOptions()) -> EqualityReport:
    """Decide a == b modulo all relations, IHX included, as far as the window allows.

    EQUAL is only returned with a certificate (zero difference or membership
    in the span of instantiated IHX relations).  NOT_EQUAL is returned when the
    IHX search saturated, i.e. enlarging the instantiated set produced no new
    relations; otherwise the verdict is UNKNOWN.
    """
    conv = opts.conventions
    if a.terms and b.terms and a.degree() != b.degree():
        raise DiagramError("cannot compare sums of different degrees")
    diff_atoms = reduce_atoms(syntactic_atoms(a - b, conv), conv)
    diff = atoms_to_sum(diff_atoms)
    if not diff_atoms:
        return EqualityReport(Verdict.EQUAL, difference=diff)
    if not opts.use_ihx:
        return EqualityReport(Verdict.NOT_EQUAL, difference=diff)

    coords = _Coordinates(conv)
    seen_terms: set = set()
    frontier = _atom_terms(diff_atoms)
    relations: list[dict[AtomKey, Fraction]] = []
    rel_keys: set = set()
    saturated = False
    rounds = 0
    for rounds in range(1, opts.holonomy_window + 2):
        new_frontier: list[Term] = []
        added = 0
        for term in frontier:
            for var in _holonomy_variants(term, opts.holonomy_window if rounds == 1 else 0):
                tk = (var.diagram, var.colors)
                if tk in seen_terms:
                    continue
                seen_terms.add(tk)
                for e in range(var.diagram.num_edges):
                    rel = ihx_relation(var, e)
                    if rel is None:
                        continue
                    ratoms = syntactic_atoms(rel, conv)
                    if not ratoms:
                        continue
                    rk = frozenset((k, c / next(iter(ratoms.values()))) for k, c in ratoms.items())
                    if rk in rel_keys:
                        continue
                    rel_keys.add(rk)
                    relations.append(ratoms)
                    added += 1
                    new_frontier.extend(_atom_terms(ratoms))
        if relations:
            vecs = coords.vectors(relations + [diff_atoms])
            target = vecs.pop()
            red, piv = rref(vecs, len(target))
            if not any(reduce_vector(target, red, piv)):
                return EqualityReport(Verdict.EQUAL, len(relations), rounds, False, diff)
        if added == 0:
            saturated = True
            break
        frontier = new_frontier
    verdict = Verdict.NOT_EQUAL if saturated else Verdict.UNKNOWN
    return EqualityReport(verdict, len(relations), rounds, saturated, diff)


# -- O_delta ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ODeltaReport:
    result: DiagramSum
    k_max: int
    generators: tuple[DiagramSum, ...]
    acted: tuple[int, ...]           # k values whose generators changed the result
    zero_generators: tuple[int, ...]  # k values whose generators vanish in the quotient


def o_delta_generator(k: int, delta: LaurentPoly, Delta: LaurentPoly, conv: Conventions = DEFAULT) -> DiagramSum:
    """Tr_Theta((t^k - t^-k)/delta (x) I_Delta (x) 1), normalized."""
    num = LaurentPoly({k: 1, -k: -1})
    return trace(THETA, [RatFun(num, 1) / RatFun.from_poly(delta), i_delta(Delta), RatFun.const(1)], conv)


def o_delta_reduce(s: DiagramSum, delta: LaurentPoly, Delta: LaurentPoly, k_max: int,
                   conv: Conventions = DEFAULT) -> ODeltaReport:
    """Reduce s modulo span{generator_k : 1 <= k <= k_max}.

    Atoms of the generators come first in the joint basis so row reduction puts
    pivots on them; the reduced s then only uses atoms outside the pivots.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    deg = s.degree()
    if deg not in (None, 1):
        raise DiagramError("O_delta reduction applies to degree-1 sums")
    gens = [o_delta_generator(k, delta, Delta, conv) for k in range(1, k_max + 1)]
    zero_gens = tuple(k for k, g in zip(range(1, k_max + 1), gens) if g.is_zero())
    s_atoms = reduce_atoms(syntactic_atoms(s, conv), conv)
    gen_atoms = [syntactic_atoms(g, conv) for g in gens]
    if not s_atoms:
        return ODeltaReport(DiagramSum(), k_max, tuple(gens), (), zero_gens)

    ordered: list[AtomKey] = []
    for ga in gen_atoms:
        for key in sorted(ga, key=_atom_sort_key):
            if key not in ordered:
                ordered.append(key)
    for key in sorted(s_atoms, key=_atom_sort_key):
        if key not in ordered:
            ordered.append(key)

    # coordinates: every element written in a greedy independent subset of ordered atoms
    values = [symmetrized_value(k, conv) for k in ordered]

    def coords(atoms: dict[AtomKey, Fraction]) -> list[Fraction]:
        total = values[0] * 0
        for k, c in atoms.items():
            total = total + values[ordered.index(k)] * QQ(c.numerator, c.denominator)
        chosen, x = classvalue.express_in_greedy_basis(values, total)
        vec = [Fraction(0)] * len(ordered)
        for i, c in zip(chosen, x):
            vec[i] = c
        return vec

    gen_vecs = [coords(ga) for ga in gen_atoms]
    s_vec = coords(s_atoms)
    nonzero = [(k, v) for k, v in zip(range(1, k_max + 1), gen_vecs) if any(v)]
    if not nonzero:
        return ODeltaReport(atoms_to_sum(s_atoms), k_max, tuple(gens), (), zero_gens)
    red, piv = rref([v for _, v in nonzero], len(ordered))
    reduced = reduce_vector(s_vec, red, piv)
    # which generators acted: solve s - reduced = sum c_k g_k
    delta_vec = [x - y for x, y in zip(s_vec, reduced)]
    acted: list[int] = []
    if any(delta_vec):
        cols = [v for _, v in nonzero]
        aug = [[cols[j][r] for j in range(len(cols))] + [delta_vec[r]] for r in range(len(ordered))]
        sol_red, sol_piv = rref(aug, len(cols) + 1)
        for row, pc in zip(sol_red, sol_piv):
            if pc < len(cols) and row[-1]:
                acted.append(nonzero[pc][0])
    result = {ordered[i]: c for i, c in enumerate(reduced) if c}
    return ODeltaReport(atoms_to_sum(result), k_max, tuple(gens), tuple(sorted(acted)), zero_gens)
