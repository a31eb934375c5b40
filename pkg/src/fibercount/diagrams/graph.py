"""Oriented trivalent graphs with vertex orientations.

Vertices are 0-based internally.  A half-edge is ``(edge, end)`` with end 0
for the source end and 1 for the target end, so a self-loop at v owns both
``(e, 0)`` and ``(e, 1)``.  A vertex orientation is a triple of half-edges
read as a cyclic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

HalfEdge = tuple[int, int]


class DiagramError(ValueError):
    pass


def cyclic_sign(a: Sequence, b: Sequence) -> int:
    """+1 if the triples agree as cyclic orders, -1 if they are opposite."""
    if sorted(a) != sorted(b):
        raise DiagramError(f"{a} and {b} are not orderings of the same half-edges")
    i = list(b).index(a[0])
    return 1 if (b[(i + 1) % 3], b[(i + 2) % 3]) == (a[1], a[2]) else -1


def canonical_cycle(triple: Sequence[HalfEdge]) -> tuple[HalfEdge, HalfEdge, HalfEdge]:
    """Rotate a cyclic triple so its smallest half-edge comes first."""
    i = min(range(3), key=lambda k: triple[k])
    return tuple(triple[(i + k) % 3] for k in range(3))


@dataclass(frozen=True)
class Diagram:
    edges: tuple[tuple[int, int], ...]
    orientation: tuple[tuple[HalfEdge, HalfEdge, HalfEdge], ...]

    def __post_init__(self):
        edges = tuple((int(s), int(d)) for s, d in self.edges)
        object.__setattr__(self, "edges", edges)
        orient = tuple(canonical_cycle(tuple((int(e), int(k)) for e, k in o)) for o in self.orientation)
        object.__setattr__(self, "orientation", orient)
        nv = len(orient)
        if nv % 2 or nv == 0:
            raise DiagramError("a trivalent graph needs a positive even number of vertices")
        if len(edges) * 2 != nv * 3:
            raise DiagramError(f"{nv} trivalent vertices need {nv * 3 // 2} edges, got {len(edges)}")
        for s, d in edges:
            if not (0 <= s < nv and 0 <= d < nv):
                raise DiagramError(f"edge endpoint out of range in {(s, d)}")
        for v, o in enumerate(orient):
            if sorted(o) != sorted(self.half_edges_at(v)):
                raise DiagramError(f"orientation at vertex {v + 1} does not list its three half-edges")
        if not self.is_connected():
            raise DiagramError("diagram is not connected")

    @classmethod
    def build(cls, edges: Iterable[Sequence[int]], orientation: Iterable[Sequence[HalfEdge]] | None = None) -> "Diagram":
        edges = tuple((int(s), int(d)) for s, d in edges)
        if orientation is None:
            nv = 1 + max(max(e) for e in edges)
            orientation = [sorted(_half_edges(edges, v)) for v in range(nv)]
        return cls(edges, tuple(tuple(o) for o in orientation))

    @property
    def num_vertices(self) -> int:
        return len(self.orientation)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def degree(self) -> int:
        return self.num_vertices // 2

    def vertex_of(self, h: HalfEdge) -> int:
        return self.edges[h[0]][h[1]]

    def half_edges_at(self, v: int) -> list[HalfEdge]:
        return _half_edges(self.edges, v)

    def is_loop(self, e: int) -> bool:
        s, d = self.edges[e]
        return s == d

    def is_connected(self) -> bool:
        nv = self.num_vertices
        adj = {v: set() for v in range(nv)}
        for s, d in self.edges:
            adj[s].add(d)
            adj[d].add(s)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == nv

    def bridges(self) -> list[int]:
        out = []
        for e in range(self.num_edges):
            if self.is_loop(e):
                continue
            rest = self.edges[:e] + self.edges[e + 1:]
            nv = self.num_vertices
            adj = {v: set() for v in range(nv)}
            for s, d in rest:
                adj[s].add(d)
                adj[d].add(s)
            seen, stack = {0}, [0]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != nv:
                out.append(e)
        return out

    def coboundary_rows(self) -> list[list[int]]:
        """Row v is the incidence vector: +1 on edges into v, -1 on edges out of v."""
        rows = []
        for v in range(self.num_vertices):
            row = [0] * self.num_edges
            for e, (s, d) in enumerate(self.edges):
                if s != d:
                    if d == v:
                        row[e] += 1
                    if s == v:
                        row[e] -= 1
            rows.append(row)
        return rows

    def first_betti(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def reversed(self, e: int) -> "Diagram":
        """Same graph with edge e pointing the other way (half-edge ends swapped)."""
        s, d = self.edges[e]
        edges = list(self.edges)
        edges[e] = (d, s)
        swap = {(e, 0): (e, 1), (e, 1): (e, 0)}
        orient = tuple(tuple(swap.get(h, h) for h in o) for o in self.orientation)
        return Diagram(tuple(edges), orient)


def _half_edges(edges, v: int) -> list[HalfEdge]:
    out = []
    for e, (s, d) in enumerate(edges):
        if s == v:
            out.append((e, 0))
        if d == v:
            out.append((e, 1))
    return out


# Two vertices, three parallel edges from vertex 1 to vertex 2.
THETA = Diagram.build([(0, 1), (0, 1), (0, 1)])
