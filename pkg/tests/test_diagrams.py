import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibercount.diagrams import (
    THETA,
    Conventions,
    DegreeTooLarge,
    Diagram,
    DiagramError,
    DiagramSum,
    Term,
    apply_holonomy,
    normalize,
    reverse_edge,
    sum_from_records,
    sum_to_records,
    trace,
)
from fibercount.diagrams.algebra import DEFAULT
from fibercount.diagrams.relations import EqualityOptions, Verdict, equal_mod_relations
from fibercount.diagrams.canon import canonical_graph, to_canonical
from fibercount.ratfun import RatFun, parse_ratfun

P = parse_ratfun
GOLD = "(1 - t)/(1 - 3*t + t^2)"
GOLD_TEXT = ("Tr_Theta((1 - t1)/(1 - 3*t1 + t1^2) (x) (1 - t2)/(1 - 3*t2 + t2^2) "
             "(x) (1 - t3)/(1 - 3*t3 + t3^2))")
PLUS = Conventions(reversal_sign=1)

# vertex 0 carries a self-loop, edge 1 is the bridge, vertex 1 carries a self-loop
DUMBBELL = Diagram.build([(0, 0), (0, 1), (1, 1)])
K4 = Diagram.build([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def same_class(a, b, conv=DEFAULT):
    return equal_mod_relations(a, b, EqualityOptions(use_ihx=False, conventions=conv)).verdict is Verdict.EQUAL


def single(d, colors, coeff=1):
    return DiagramSum.single(d, [P(c) for c in colors], coeff)


# -- trace ------------------------------------------------------------------------

def test_trace_golden_colors_is_one_term():
    s = trace(THETA, [GOLD] * 3)
    assert len(s.terms) == 1
    assert str(s) == GOLD_TEXT


def test_trace_constant_coloring_with_unsigned_reversal():
    assert str(trace(THETA, [1, 1, 1], PLUS)) == "Tr_Theta(1 (x) 1 (x) 1)"
    assert trace(THETA, ["t", "t", "t"], PLUS) == trace(THETA, [1, 1, 1], PLUS)


def test_constant_coloring_vanishes_with_signed_reversal():
    # the vertex swap of Theta reverses all three edges and preserves AS,
    # so Theta(1,1,1) = (-1)^3 Theta(1,1,1) when reversal carries a sign
    assert trace(THETA, [1, 1, 1]).is_zero()
    assert trace(THETA, [1, 1, 1], DEFAULT) == trace(THETA, ["t", "t", "t"], DEFAULT)


def test_trace_arity_checked():
    with pytest.raises(DiagramError):
        trace(THETA, [1, 1])


# -- local moves ---------------------------------------------------------------------

def test_holonomy_at_target_vertex():
    t = Term(1, THETA, (P("1+t"), P("2"), P(GOLD)))
    assert apply_holonomy(t, 1, 1).colors == (P("t+t^2"), P("2*t"), P(f"t*{GOLD}"))
    assert apply_holonomy(t, 1, 0) == t


def test_holonomy_on_dumbbell_moves_only_the_bridge():
    t = Term(1, DUMBBELL, (P("1+t"), P("3"), P("t")))
    out = apply_holonomy(t, 0, 1)
    assert out.colors == (P("1+t"), P("3*t^-1"), P("t"))


@pytest.mark.parametrize("conv", [DEFAULT, PLUS])
def test_reverse_edge_on_monomials(conv):
    t = Term(1, THETA, (P("t^2"), P("1"), P("1")))
    r = reverse_edge(t, 0, conv)
    assert r.colors[0] == P("t^-2") * conv.reversal_sign
    assert r.diagram.edges[0] == (1, 0)
    assert reverse_edge(reverse_edge(Term(1, THETA, (1, 1, 1)), 2, conv), 2, conv) == Term(1, THETA, (1, 1, 1))


def test_reverse_edge_is_linear():
    p, q = P("1 + 2*t"), P(GOLD)
    whole = reverse_edge(Term(1, THETA, (p + q, P("1"), P("t"))), 0)
    parts = reverse_edge(Term(1, THETA, (p, P("1"), P("t"))), 0).colors[0] + \
        reverse_edge(Term(1, THETA, (q, P("1"), P("t"))), 0).colors[0]
    assert whole.colors[0] == parts


# -- normalize -----------------------------------------------------------------------

def test_doubling_merges():
    s = single(THETA, [GOLD] * 3) + single(THETA, [GOLD] * 3)
    n = normalize(s)
    assert len(n.terms) == 1 and n.terms[0].coeff == 2


def test_holonomy_shift_merges_with_unshifted_term():
    s = single(THETA, [f"t*{GOLD}"] * 3)
    assert normalize(s) == normalize(single(THETA, [GOLD] * 3))


def test_as_relabeling_cancels():
    colors = (P("1 + t"), P(GOLD), P("t^2"))
    o0 = THETA.orientation[0]
    flipped = Diagram(THETA.edges, ((o0[0], o0[2], o0[1]), THETA.orientation[1]))
    s = DiagramSum((Term(1, THETA, colors), Term(1, flipped, colors)))
    assert normalize(s).is_zero()


def test_bridged_graphs_vanish():
    assert normalize(single(DUMBBELL, ["1+t", "3", "t"])).is_zero()


def test_degree_cap():
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    with pytest.raises(DegreeTooLarge, match="degree too large"):
        normalize(single(Diagram.build(edges), ["1"] * 12))


def test_theta_automorphism_group():
    cg, _ = to_canonical(THETA)
    assert len(cg.automorphisms) == 12
    assert len(canonical_graph(to_canonical(K4)[0].key).automorphisms) == 24


def test_record_round_trip():
    s = normalize(single(K4, ["1", "t", GOLD, "1+t", "2", "t^-1"], Fraction(3, 2)))
    back = sum_from_records(sum_to_records(s))
    assert normalize(back) == s


# -- properties -------------------------------------------------------------------------

POOL = ["1", "t", "t^-1", "2", "1 + t", "1 - 2*t", GOLD, "t/(1 - 3*t + t^2)", "1/(1 + t)", "(2 - t)/(1 - t)"]
color = st.sampled_from(POOL).map(P)
coeff = st.integers(-3, 3).filter(bool)


def theta_terms(n):
    return st.lists(st.tuples(coeff, color, color, color), min_size=1, max_size=n).map(
        lambda ts: DiagramSum(tuple(Term(c, THETA, (a, b, d)) for c, a, b, d in ts)))


@settings(max_examples=30, deadline=None)
@given(theta_terms(4), st.sampled_from([DEFAULT, PLUS]))
def test_normalize_is_idempotent(s, conv):
    n = normalize(s, conv)
    assert normalize(n, conv) == n


@settings(max_examples=30, deadline=None)
@given(color, color, color, color, st.integers(0, 2), st.sampled_from([DEFAULT, PLUS]))
def test_trace_is_multilinear(p, q, b, c, slot, conv):
    base = [b, c]
    def cols(x):
        return base[:slot] + [x] + base[slot:]
    lhs = trace(THETA, cols(p + q), conv)
    rhs = trace(THETA, cols(p), conv) + trace(THETA, cols(q), conv)
    assert same_class(lhs, rhs, conv)


@settings(max_examples=30, deadline=None)
@given(theta_terms(2), st.integers(0, 1), st.integers(-3, 3), st.integers(0, 2), st.sampled_from([DEFAULT, PLUS]))
def test_local_moves_preserve_class(s, v, k, e, conv):
    moved = DiagramSum(tuple(reverse_edge(apply_holonomy(t, v, k), e, conv) for t in s.terms))
    assert normalize(moved, conv) == normalize(s, conv)


@settings(max_examples=10, deadline=None)
@given(st.lists(color, min_size=6, max_size=6), st.integers(0, 3), st.integers(-2, 2), st.integers(0, 5))
def test_degree_two_moves_preserve_class(cols, v, k, e):
    t = Term(1, K4, tuple(cols))
    assert normalize(DiagramSum((reverse_edge(apply_holonomy(t, v, k), e),))) == normalize(DiagramSum((t,)))


def test_relabeled_k4_equals_original():
    rng = random.Random(3)
    cols = tuple(P(rng.choice(POOL)) for _ in range(6))
    perm = [2, 0, 3, 1]
    edges = tuple((perm[s], perm[d]) for s, d in K4.edges)
    orient = [None] * 4
    for v, o in enumerate(K4.orientation):
        orient[perm[v]] = o
    relabeled = Diagram(edges, tuple(orient))
    assert normalize(DiagramSum((Term(1, relabeled, cols),))) == normalize(DiagramSum((Term(1, K4, cols),)))
