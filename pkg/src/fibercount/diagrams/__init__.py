"""Colored trivalent diagrams modulo AS, IHX, orientation reversal, Linearity and Holonomy."""

from .algebra import (
    DEFAULT,
    Conventions,
    DiagramSum,
    Term,
    apply_holonomy,
    normalize,
    reverse_edge,
    split_color,
    trace,
)
from .canon import DegreeTooLarge, canonical_graph, to_canonical
from .graph import THETA, Diagram, DiagramError, cyclic_sign
from .serialize import format_sum, sum_from_records, sum_to_records
