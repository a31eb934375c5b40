"""Text and record forms of diagram sums.

Record layout (one per term)::

    coeff    = "24"
    vertices = 2
    edges    = [[1, 2], [1, 2], [1, 2]]          # 1-based [src, dst]
    cyclic   = [[1, 2, 3], [-1, -2, -3]]         # +e: source end of e, -e: target end
    colors   = ["(1 - t)/(1 - 3*t + t^2)", ...]

The printed form uses one variable per edge slot, ``t1 .. tm``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..ratfun import format_ratfun, parse_ratfun
from .graph import THETA, Diagram, DiagramError

SLOT_SEP = " (x) "


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _half_to_int(h) -> int:
    e, end = h
    return (e + 1) if end == 0 else -(e + 1)


def _int_to_half(x: int):
    if x == 0:
        raise DiagramError("half-edge 0 is not valid; use +e for the source end and -e for the target end")
    return (x - 1, 0) if x > 0 else (-x - 1, 1)


def _default_orientation(d: Diagram) -> bool:
    return all(tuple(sorted(d.half_edges_at(v))) == o for v, o in enumerate(d.orientation))


def diagram_label(d: Diagram) -> str:
    if d == THETA:
        return "Tr_Theta"
    edges = ",".join(f"{s + 1}>{t + 1}" for s, t in d.edges)
    if _default_orientation(d):
        return f"Tr[{edges}]"
    cyc = ";".join(" ".join(str(_half_to_int(h)) for h in o) for o in d.orientation)
    return f"Tr[{edges}|{cyc}]"


def format_term_body(term) -> str:
    slots = SLOT_SEP.join(format_ratfun(c, f"t{i + 1}") for i, c in enumerate(term.colors))
    return f"{diagram_label(term.diagram)}({slots})"


def format_sum(s) -> str:
    if not s.terms:
        return "0"
    out = []
    for i, term in enumerate(s.terms):
        c = term.coeff
        mag = -c if c < 0 else c
        body = format_term_body(term)
        text = body if mag == 1 else f"{_fmt_coeff(mag)}*{body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def term_to_record(term) -> dict[str, Any]:
    d = term.diagram
    return {
        "coeff": _fmt_coeff(term.coeff),
        "vertices": d.num_vertices,
        "edges": [[s + 1, t + 1] for s, t in d.edges],
        "cyclic": [[_half_to_int(h) for h in o] for o in d.orientation],
        "colors": [format_ratfun(c) for c in term.colors],
    }


def sum_to_records(s) -> list[dict[str, Any]]:
    return [term_to_record(t) for t in s.terms]


def _parse_coeff(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise DiagramError("coefficients must be exact (integer or 'p/q' string)")
    return Fraction(x)


def diagram_from_record(rec: dict[str, Any]) -> Diagram:
    try:
        edges = [(int(s) - 1, int(t) - 1) for s, t in rec["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"bad 'edges' field: {exc}") from exc
    nv = int(rec.get("vertices", 1 + max(max(e) for e in edges)))
    cyc = rec.get("cyclic")
    if cyc is None:
        d = Diagram.build(edges)
    else:
        d = Diagram(tuple(edges), tuple(tuple(_int_to_half(int(x)) for x in o) for o in cyc))
    if d.num_vertices != nv:
        raise DiagramError(f"'vertices' says {nv} but edges and cyclic orders give {d.num_vertices}")
    return d


def term_from_record(rec: dict[str, Any]):
    from .algebra import Term

    d = diagram_from_record(rec)
    colors = rec.get("colors")
    if colors is None or len(colors) != d.num_edges:
        raise DiagramError(f"'colors' must list {d.num_edges} rational functions")
    return Term(_parse_coeff(rec.get("coeff", 1)), d, tuple(parse_ratfun(c) for c in colors))


def sum_from_records(recs) -> Any:
    from .algebra import DiagramSum

    return DiagramSum(tuple(term_from_record(r) for r in recs))
