"""Exact values of colored graphs in a multivariate rational function field.

For a fixed graph, the span of its colorings modulo Linearity and Holonomy
embeds in Q(u_1, ..., u_b), b = rank H^1, by sending the color of edge e to
``p(u^L(e))`` where ``L(e)`` is the H^1 class dual to e.  Products over edges
land in the field and Holonomy shifts cancel because coboundaries have zero
class.  We use sympy's sparse fraction field as the arithmetic backend.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import QQ
from sympy.polys.fields import field

from ..ratfun import LaurentPoly, RatFun
from ..ratfun.qlinalg import rref

MAX_BETTI = 8


@lru_cache(maxsize=None)
def _field(b: int):
    names = ",".join(f"u{i + 1}" for i in range(max(b, 1)))
    K, *gens = field(names, QQ)
    return K, tuple(gens)


def monomial(b: int, exps: Sequence[int]):
    K, gens = _field(b)
    out = K.one
    for g, k in zip(gens, exps):
        if k:
            out = out * g ** k
    return out


def _eval_laurent(p: LaurentPoly, x, K):
    total = K.zero
    for k, c in p.terms:
        total = total + K(QQ(c.numerator, c.denominator)) * x ** k
    return total


def substitute(f: RatFun, b: int, exps: Sequence[int]):
    """f(u^exps) as an element of Q(u_1..u_b)."""
    K, _ = _field(b)
    x = monomial(b, exps)
    return _eval_laurent(f.num, x, K) / _eval_laurent(f.den, x, K)


def colored_value(colors: Sequence[RatFun], coords: Sequence[Sequence[int]], b: int):
    K, _ = _field(b)
    out = K.one
    for c, L in zip(colors, coords):
        out = out * substitute(c, b, L)
    return out


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def coefficient_vectors(values: Sequence) -> tuple[list[list[Fraction]], list[tuple]]:
    """Write field elements over one common denominator and list numerator coefficients."""
    if not values:
        return [], []
    den = values[0].denom
    for v in values[1:]:
        den = den.lcm(v.denom)
    numers = [v.numer * den.exquo(v.denom) for v in values]
    monos = sorted({m for n in numers for m in n.keys()})
    index = {m: i for i, m in enumerate(monos)}
    vecs = []
    for n in numers:
        row = [Fraction(0)] * len(monos)
        for m, c in n.items():
            row[index[m]] = _to_fraction(c)
        vecs.append(row)
    return vecs, monos


def express_in_greedy_basis(values: Sequence, target) -> tuple[list[int], list[Fraction]]:
    """Pick a maximal independent prefix-greedy subset of ``values`` and write ``target`` in it.

    Returns (chosen indices, coefficients).  Raises ValueError if target is
    outside the span.
    """
    vecs, _ = coefficient_vectors(list(values) + [target])
    tvec = vecs.pop()
    chosen: list[int] = []
    basis_rows: list[list[Fraction]] = []
    for i, v in enumerate(vecs):
        if not any(v):
            continue
        trial = basis_rows + [v]
        if len(rref(trial)[1]) == len(trial):
            chosen.append(i)
            basis_rows = trial
    if not chosen:
        if any(tvec):
            raise ValueError("target not in span")
        return [], []
    # solve sum x_i basis_i = target: columns are basis vectors
    m = len(tvec)
    aug = [[basis_rows[j][r] for j in range(len(chosen))] + [tvec[r]] for r in range(m)]
    red, piv = rref(aug, len(chosen) + 1)
    if len(chosen) in piv:
        raise ValueError("target not in span")
    x = [Fraction(0)] * len(chosen)
    for row, pc in zip(red, piv):
        x[pc] = row[-1]
    return chosen, x
