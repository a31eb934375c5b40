"""Canonical underlying graphs, isomorphisms onto them, and their automorphisms.

The canonical graph of a diagram is the lexicographically least relabeling of
its unoriented multigraph; edges are sorted, oriented from the lower to the
higher vertex, and every vertex carries the sorted-half-edge orientation.
Search is by brute force over vertex permutations, so the vertex count is
capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from ..ratfun import hermite_rows, smith_normal_form
from .graph import Diagram, DiagramError, HalfEdge

MAX_VERTICES = 6

GraphKey = tuple[tuple[int, int], ...]


class DegreeTooLarge(DiagramError):
    pass


@dataclass(frozen=True)
class EdgeMap:
    """Isomorphism data: vertex map, edge map and which edges get reversed."""

    vertex: tuple[int, ...]
    edge: tuple[int, ...]
    flip: tuple[bool, ...]

    def half_edge(self, h: HalfEdge) -> HalfEdge:
        e, end = h
        return (self.edge[e], end ^ int(self.flip[e]))


def _pair_key(edges, perm) -> GraphKey:
    return tuple(sorted(tuple(sorted((perm[s], perm[d]))) for s, d in edges))


@lru_cache(maxsize=4096)
def _canonical_perm(edges: tuple[tuple[int, int], ...], nv: int) -> tuple[GraphKey, tuple[int, ...]]:
    if nv > MAX_VERTICES:
        raise DegreeTooLarge(f"degree too large: {nv} vertices exceeds the automorphism search bound {MAX_VERTICES}")
    best = None
    for perm in permutations(range(nv)):
        key = _pair_key(edges, perm)
        if best is None or key < best[0]:
            best = (key, perm)
    return best


@dataclass(frozen=True)
class CanonicalGraph:
    key: GraphKey
    diagram: Diagram
    automorphisms: tuple[EdgeMap, ...]
    hnf: tuple[tuple[int, ...], ...]
    class_coords: tuple[tuple[int, ...], ...]  # class_coords[e] = H^1 coordinates of edge e's dual

    @property
    def betti(self) -> int:
        return self.diagram.first_betti()

    @property
    def has_bridge(self) -> bool:
        return any(not any(c) for e, c in enumerate(self.class_coords) if not self.diagram.is_loop(e))


def _matchings(src_edges, dst_edges, vperm):
    """All edge bijections src -> dst compatible with the vertex map, with flip data."""
    classes: dict[tuple[int, int], list[int]] = {}
    for e, (s, d) in enumerate(dst_edges):
        classes.setdefault((s, d), []).append(e)
    groups: dict[tuple[int, int], list[int]] = {}
    for e, (s, d) in enumerate(src_edges):
        groups.setdefault(tuple(sorted((vperm[s], vperm[d]))), []).append(e)
    per_class = []
    for pair, src in groups.items():
        dst = classes[pair]
        per_class.append([(src, p) for p in permutations(dst)])
    for choice in product(*per_class):
        edge = [0] * len(src_edges)
        for src, dst in choice:
            for a, b in zip(src, dst):
                edge[a] = b
        loops = [e for e, (s, d) in enumerate(src_edges) if s == d]
        base_flip = [vperm[s] > vperm[d] for s, d in src_edges]
        for loop_flips in product((False, True), repeat=len(loops)):
            flip = list(base_flip)
            for e, f in zip(loops, loop_flips):
                flip[e] = f
            yield EdgeMap(tuple(vperm), tuple(edge), tuple(flip))


@lru_cache(maxsize=512)
def canonical_graph(key: GraphKey) -> CanonicalGraph:
    nv = 1 + max(max(e) for e in key)
    g0 = Diagram.build(key)
    auts = []
    for perm in permutations(range(nv)):
        if _pair_key(key, perm) == key:
            auts.extend(_matchings(key, key, perm))
    cob = g0.coboundary_rows()
    hnf = hermite_rows(cob, g0.num_edges)
    # H^1 coordinates: U @ delta @ V = D, rows r.. of U span the dual of coker(delta)
    delta = [[cob[v][e] for v in range(nv)] for e in range(g0.num_edges)]
    snf = smith_normal_form(delta)
    r = snf.rank
    if any(d not in (0, 1) for d in snf.diagonal):
        raise AssertionError("graph incidence matrices are unimodular")
    U = snf.U
    coords = tuple(tuple(U[i][e] for i in range(r, g0.num_edges)) for e in range(g0.num_edges))
    return CanonicalGraph(key, g0, tuple(auts), tuple(map(tuple, hnf)), coords)


def to_canonical(d: Diagram) -> tuple[CanonicalGraph, EdgeMap]:
    """Canonical graph of d and one isomorphism d -> canonical."""
    key, perm = _canonical_perm(d.edges, d.num_vertices)
    cg = canonical_graph(key)
    return cg, next(_matchings(d.edges, key, perm))
