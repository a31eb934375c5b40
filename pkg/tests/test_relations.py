import random

import pytest
from hypothesis import given, settings, strategies as st

from fibercount.diagrams import THETA, Conventions, Diagram, DiagramSum, Term, apply_holonomy, trace
from fibercount.diagrams.relations import (
    EqualityOptions,
    Verdict,
    equal_mod_relations,
    ihx_relation,
    monomial_class,
    o_delta_generator,
    o_delta_reduce,
)
from fibercount.monodromy import MonodromyData, alexander_polynomial, small_delta
from fibercount.ratfun import parse_ratfun

P = parse_ratfun
GOLD = "(1 - t)/(1 - 3*t + t^2)"
PLUS = Conventions(reversal_sign=1)
K4 = Diagram.build([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
A0x3 = [[2, 1, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [0, 0, 2, 1, 0, 0],
        [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 2, 1], [0, 0, 0, 0, 1, 1]]


def verdict(a, b, **kw):
    return equal_mod_relations(a, b, EqualityOptions(**kw)).verdict


# -- monomial classes --------------------------------------------------------------

def test_theta_all_ones_is_a_coboundary():
    assert monomial_class(THETA, [1, 1, 1]).is_zero()
    assert monomial_class(THETA, [0, 0, 0]).is_zero()
    assert monomial_class(K4, [0] * 6).is_zero()


def test_theta_classes_agree_mod_coboundary():
    a, b = monomial_class(THETA, [1, 0, 0]), monomial_class(THETA, [0, -1, -1])
    assert not a.is_zero()
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_class_constant_on_holonomy_orbits(exps, shift):
    rows = K4.coboundary_rows()
    moved = [e + sum(shift[v] * rows[v][i] for v in range(4)) for i, e in enumerate(exps)]
    assert monomial_class(K4, exps) == monomial_class(K4, moved)


# -- equality ------------------------------------------------------------------------

def test_syntactic_equality():
    s = trace(THETA, [GOLD, "1+t", "t"])
    assert verdict(s, s) is Verdict.EQUAL


def test_holonomy_shifted_theta_equal():
    a = DiagramSum.single(THETA, [P(f"t*{GOLD}")] * 3)
    b = DiagramSum.single(THETA, [P(GOLD)] * 3)
    assert verdict(a, b) is Verdict.EQUAL


def test_scalar_multiple_not_equal():
    one = DiagramSum.single(THETA, [P("1")] * 3)
    assert verdict(one, one.scale(2), conventions=PLUS) is Verdict.NOT_EQUAL
    gold = DiagramSum.single(THETA, [P(GOLD)] * 3)
    assert verdict(gold, gold.scale(2)) is Verdict.NOT_EQUAL


def test_unknown_verdict_has_no_truth_value():
    with pytest.raises(ValueError):
        bool(Verdict.UNKNOWN)
    assert bool(Verdict.EQUAL) and not bool(Verdict.NOT_EQUAL)


@pytest.mark.parametrize("cols", [["1"] * 6, ["1", "t", "1+t", "2-t", "1", "t^-1"]])
def test_ihx_needed_on_k4(cols):
    rel = ihx_relation(Term(1, K4, tuple(P(c) for c in cols)), 0)
    assert len(rel.terms) == 3
    i_term, rest = DiagramSum(rel.terms[:1]), DiagramSum(rel.terms[1:])
    assert verdict(i_term, -rest, use_ihx=False) is Verdict.NOT_EQUAL
    assert verdict(i_term, -rest, holonomy_window=1) is Verdict.EQUAL


def test_ihx_skips_loops_and_rational_middle_edges():
    assert ihx_relation(Term(1, THETA, (P(GOLD), P("1"), P("1"))), 0) is None
    dumbbell = Diagram.build([(0, 0), (0, 1), (1, 1)])
    assert ihx_relation(Term(1, dumbbell, (P("1"), P("1"), P("1"))), 0) is None


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["1", "t", GOLD, "1+t"]), st.sampled_from(["1", "t^-1", "2-t"]), st.integers(0, 1),
       st.integers(-2, 2))
def test_holonomy_preserves_equality(a, b, v, k):
    t = Term(1, THETA, (P(a), P(b), P(GOLD)))
    assert verdict(DiagramSum((t,)), DiagramSum((apply_holonomy(t, v, k),))) is Verdict.EQUAL


# -- O_delta -----------------------------------------------------------------------------

def _delta_pair():
    m = MonodromyData.of(A0x3)
    return small_delta(m), alexander_polynomial(m)


def test_generator_reduces_to_zero():
    d, D = _delta_pair()
    g = o_delta_generator(1, d, D, PLUS)
    assert not g.is_zero()
    rep = o_delta_reduce(g, d, D, 1, PLUS)
    assert rep.result.is_zero()
    assert rep.acted == (1,)


def test_zero_reduces_to_zero():
    d, D = _delta_pair()
    assert o_delta_reduce(DiagramSum(), d, D, 3).result.is_zero()


def test_generators_vanish_with_signed_reversal():
    d, D = _delta_pair()
    assert all(o_delta_generator(k, d, D).is_zero() for k in (1, 2, 3))


def test_golden_value_survives_reduction():
    d, D = _delta_pair()
    s = trace(THETA, [GOLD] * 3).scale(24)
    rep = o_delta_reduce(s, d, D, 5)
    assert rep.result == s
    assert rep.acted == ()
    assert rep.zero_generators == (1, 2, 3, 4, 5)


def test_reduction_removes_generator_component():
    d, D = _delta_pair()
    g2 = o_delta_generator(2, d, D, PLUS)
    other = trace(THETA, ["1", "1", "1+t"], PLUS)
    rep = o_delta_reduce(other + g2.scale(3), d, D, 2, PLUS)
    base = o_delta_reduce(other, d, D, 2, PLUS)
    assert verdict(rep.result, base.result, use_ihx=False, conventions=PLUS) is Verdict.EQUAL
    assert 2 in rep.acted


def test_k_max_must_be_positive():
    d, D = _delta_pair()
    with pytest.raises(ValueError):
        o_delta_reduce(DiagramSum(), d, D, 0)
