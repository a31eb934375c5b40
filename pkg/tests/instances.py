"""Random small surgery instances (n = 1) for the pairing property tests."""

from __future__ import annotations

import random

from fibercount.ratfun import parse_ratfun
from fibercount.surgery import ChordSum, LegLabel, YSum, y_sum_build

COLORS = ["1", "t", "1 + t", "(1 - t)/(1 - 3*t + t^2)", "t/(1 - 3*t + t^2)", "2 - t", "1/(1 + t)"]
POINTS = ("p", "q")


def _star(rng: random.Random, i: int, side: str) -> tuple:
    names = [f"{rng.choice(POINTS)}{j}" for j in (1, 2, 3)]
    order = [1, 2, 3]
    rng.shuffle(order)
    return tuple(LegLabel(i, side, names[j], order[j]) for j in range(3))


def random_instance(rng: random.Random, single_term: bool = False, points=None) -> tuple[list[YSum], list[ChordSum]]:
    """Two restricted Y sums on surgeries 1 and 2 and three chord sums, one per gradient index.

    Chords join every P+ leg of one surgery with every P- leg of the other
    carrying the same gradient index, with random coefficients, so that most
    Y-term combinations are matched.  ``points`` reuses the label pool of an
    earlier instance (its Y sums), for multilinearity checks.
    """
    nterms = 1 if single_term else 2
    ys = []
    for i in (1, 2):
        terms = []
        for _ in range(nterms):
            side = rng.choice("+-")
            terms.append((rng.randint(-2, 2) or 1, _star(rng, i, side)))
        ys.append(y_sum_build(terms))
    labels = {l for y in ys for _, legs in y.terms for l in legs}
    if points is not None:
        labels |= {l for y in points for _, legs in y.terms for l in legs}
    cs = []
    for k in (1, 2, 3):
        plus = sorted(l for l in labels if l.k == k and l.side == "+")
        minus = sorted(l for l in labels if l.k == k and l.side == "-")
        terms = tuple((parse_ratfun(rng.choice(COLORS)), (x, y)) for x in plus for y in minus if x.i != y.i)
        cs.append(ChordSum(terms))
    return ys, cs
