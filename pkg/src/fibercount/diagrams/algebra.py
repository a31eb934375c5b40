"""Formal sums of colored diagrams and their canonical form.

normalize() produces a unique representative of a sum modulo AS, orientation
reversal, Linearity, Holonomy and automorphisms (IHX is handled separately in
``relations``).  It works in two layers:

* a syntactic layer mapping each term onto its canonical graph, splitting
  every color as ``alpha * t^k * f``, reducing the exponent vector modulo
  coboundaries and picking the least key over the automorphism group;
* an exact layer that compares the resulting atoms through their class values
  (see ``classvalue``) and removes linear dependencies between atoms of the
  same graph, keeping the earliest atoms in key order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import QQ

from ..ratfun import RF_ONE, RatFun, as_ratfun, parse_ratfun, reduce_mod_lattice
from ..ratfun.rational import RF_ZERO
from . import classvalue
from .canon import CanonicalGraph, EdgeMap, GraphKey, canonical_graph, to_canonical
from .graph import THETA, Diagram, DiagramError, cyclic_sign


@dataclass(frozen=True)
class Conventions:
    """Sign conventions for the local relations.

    ``reversal_sign``: reversing an edge replaces its color p(t) by
    ``reversal_sign * p(t^-1)``.  The default -1 is the choice under which
    the worked surgery example keeps its printed nonzero value.
    """

    reversal_sign: int = -1

    def __post_init__(self):
        if self.reversal_sign not in (1, -1):
            raise ValueError("reversal_sign must be +1 or -1")


DEFAULT = Conventions()


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    diagram: Diagram
    colors: tuple[RatFun, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        cols = tuple(as_ratfun(c) for c in self.colors)
        if len(cols) != self.diagram.num_edges:
            raise DiagramError(f"coloring has {len(cols)} entries for {self.diagram.num_edges} edges")
        object.__setattr__(self, "colors", cols)


def split_color(c: RatFun) -> tuple[Fraction, int, RatFun]:
    """c = alpha * t^k * f with f(0) = 1 (numerator and denominator constant terms 1)."""
    k = c.num.valuation
    shifted = c.num.shift(-k)
    alpha = shifted.coeff(0)
    return alpha, k, RatFun._raw(shifted.scale(1 / alpha), c.den)


def reverse_color(c: RatFun, conv: Conventions = DEFAULT) -> RatFun:
    r = c.bar()
    return -r if conv.reversal_sign < 0 else r


def transport(colors: Sequence[RatFun], orientation, target: Diagram, m: EdgeMap,
              conv: Conventions) -> tuple[int, tuple[RatFun, ...]]:
    """Move a coloring along an isomorphism; returns (sign, colors on target)."""
    out: list[RatFun] = [RF_ZERO] * len(colors)
    sign = 1
    for e, c in enumerate(colors):
        out[m.edge[e]] = reverse_color(c, conv) if m.flip[e] else c
    for v, o in enumerate(orientation):
        img = tuple(m.half_edge(h) for h in o)
        sign *= cyclic_sign(img, target.orientation[m.vertex[v]])
    return sign, tuple(out)


# -- atoms -------------------------------------------------------------------

AtomKey = tuple  # (graph key, exponent tuple, tuple of f)


def _atom_sort_key(key: AtomKey) -> tuple:
    g, k, fs = key
    return (len(g), g, k, tuple(f.sort_key() for f in fs))


def _syntactic_key(cg: CanonicalGraph, colors: Sequence[RatFun]) -> tuple[Fraction, AtomKey]:
    alpha = Fraction(1)
    ks, fs = [], []
    for c in colors:
        a, k, f = split_color(c)
        alpha *= a
        ks.append(k)
        fs.append(f)
    k_red = reduce_mod_lattice(ks, cg.hnf)
    return alpha, (cg.key, k_red, tuple(fs))


def atom_colors(key: AtomKey) -> tuple[RatFun, ...]:
    _, ks, fs = key
    return tuple(f.shift(k) for k, f in zip(ks, fs))


def _canonical_atom(term: Term, conv: Conventions) -> tuple[Fraction, AtomKey] | None:
    if term.coeff == 0 or any(c.is_zero() for c in term.colors):
        return None
    cg, iso = to_canonical(term.diagram)
    if cg.has_bridge:
        return None
    s0, cols0 = transport(term.colors, term.diagram.orientation, cg.diagram, iso, conv)
    best = None
    coeffs: set[Fraction] = set()
    for aut in cg.automorphisms:
        s, cols = transport(cols0, cg.diagram.orientation, cg.diagram, aut, conv)
        alpha, key = _syntactic_key(cg, cols)
        c = term.coeff * s0 * s * alpha
        sk = _atom_sort_key(key)
        if best is None or sk < best[0]:
            best = (sk, key)
            coeffs = {c}
        elif sk == best[0]:
            coeffs.add(c)
    if len(coeffs) > 1:
        return None  # the atom equals two different multiples of itself
    return coeffs.pop(), best[1]


def symmetrized_value(key: AtomKey, conv: Conventions = DEFAULT):
    cg = canonical_graph(key[0])
    cols = atom_colors(key)
    b = cg.betti
    K, _ = classvalue._field(b)
    total = K.zero
    for aut in cg.automorphisms:
        s, c2 = transport(cols, cg.diagram.orientation, cg.diagram, aut, conv)
        v = classvalue.colored_value(c2, cg.class_coords, b)
        total = total + v if s > 0 else total - v
    return total * K(QQ(1, len(cg.automorphisms)))


# -- sums ----------------------------------------------------------------------

@dataclass(frozen=True)
class DiagramSum:
    """A finite Q-linear combination of colored diagrams."""

    terms: tuple[Term, ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def single(cls, diagram: Diagram, colors: Sequence, coeff=1) -> "DiagramSum":
        return cls((Term(Fraction(coeff), diagram, tuple(colors)),))

    @classmethod
    def zero(cls) -> "DiagramSum":
        return cls(())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DiagramSum") -> "DiagramSum":
        return DiagramSum(self.terms + other.terms)

    def __neg__(self) -> "DiagramSum":
        return self.scale(-1)

    def __sub__(self, other: "DiagramSum") -> "DiagramSum":
        return self + (-other)

    def scale(self, c) -> "DiagramSum":
        c = Fraction(c)
        if c == 0:
            return DiagramSum()
        return DiagramSum(tuple(Term(t.coeff * c, t.diagram, t.colors) for t in self.terms))

    __rmul__ = scale

    def degree(self) -> int | None:
        degs = {t.diagram.degree for t in self.terms}
        if len(degs) > 1:
            raise DiagramError("mixed degrees in one sum")
        return degs.pop() if degs else None

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagramSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        from .serialize import format_sum
        return format_sum(self)

    def __repr__(self) -> str:
        return f"DiagramSum({self})"


def syntactic_atoms(s: DiagramSum, conv: Conventions = DEFAULT) -> dict[AtomKey, Fraction]:
    """Canonical atoms of s with merged coefficients (zeros dropped)."""
    acc: dict[AtomKey, Fraction] = {}
    for t in s.terms:
        r = _canonical_atom(t, conv)
        if r is None:
            continue
        c, key = r
        acc[key] = acc.get(key, Fraction(0)) + c
    return {k: c for k, c in acc.items() if c != 0}


def atoms_to_sum(atoms: dict[AtomKey, Fraction]) -> DiagramSum:
    terms = []
    for key in sorted(atoms, key=_atom_sort_key):
        c = atoms[key]
        if c:
            terms.append(Term(c, canonical_graph(key[0]).diagram, atom_colors(key)))
    return DiagramSum(tuple(terms))


def reduce_atoms(atoms: dict[AtomKey, Fraction], conv: Conventions = DEFAULT) -> dict[AtomKey, Fraction]:
    """Exact layer: per graph, rewrite the sum in a greedy independent subset of its atoms."""
    by_graph: dict[GraphKey, list[AtomKey]] = {}
    for key in atoms:
        by_graph.setdefault(key[0], []).append(key)
    out: dict[AtomKey, Fraction] = {}
    for g, keys in by_graph.items():
        keys.sort(key=_atom_sort_key)
        values = [symmetrized_value(k, conv) for k in keys]
        total = values[0] * 0
        for k, v in zip(keys, values):
            total = total + v * QQ(atoms[k].numerator, atoms[k].denominator)
        chosen, coeffs = classvalue.express_in_greedy_basis(values, total)
        for i, c in zip(chosen, coeffs):
            if c:
                out[keys[i]] = c
    return out


def normalize(s: DiagramSum, conv: Conventions = DEFAULT) -> DiagramSum:
    return atoms_to_sum(reduce_atoms(syntactic_atoms(s, conv), conv))


def is_zero_mod_relations(s: DiagramSum, conv: Conventions = DEFAULT) -> bool:
    return normalize(s, conv).is_zero()


# -- operations on single terms --------------------------------------------------

def trace(g: Diagram, colors: Sequence, conv: Conventions = DEFAULT) -> DiagramSum:
    """Tr_G(c_1 (x) ... (x) c_m): the class of G colored by the given functions."""
    if len(colors) != g.num_edges:
        raise DiagramError(f"trace on a graph with {g.num_edges} edges needs {g.num_edges} colors, got {len(colors)}")
    return normalize(DiagramSum.single(g, [parse_ratfun(c) for c in colors]), conv)


def apply_holonomy(term: Term, v: int, k: int) -> Term:
    """Multiply colors at vertex v by t^(k eps), eps = +1 for edges pointing into v."""
    d = term.diagram
    if not 0 <= v < d.num_vertices:
        raise DiagramError(f"vertex {v + 1} not in diagram")
    cols = list(term.colors)
    for e, (s, t) in enumerate(d.edges):
        eps = (1 if t == v else 0) - (1 if s == v else 0)
        if eps and k:
            cols[e] = cols[e].shift(k * eps)
    return Term(term.coeff, d, tuple(cols))


def reverse_edge(term: Term, e: int, conv: Conventions = DEFAULT) -> Term:
    """Flip edge e and replace its color by the orientation-reversal image."""
    d = term.diagram
    if not 0 <= e < d.num_edges:
        raise DiagramError(f"edge {e + 1} not in diagram")
    cols = list(term.colors)
    cols[e] = reverse_color(cols[e], conv)
    return Term(term.coeff, d.reversed(e), tuple(cols))


__all__ = [
    "Conventions", "DEFAULT", "DiagramSum", "Term", "THETA", "apply_holonomy", "atom_colors", "atoms_to_sum",
    "is_zero_mod_relations", "normalize", "reduce_atoms", "reverse_color", "reverse_edge", "split_color",
    "symmetrized_value", "syntactic_atoms", "trace", "RF_ONE",
]
