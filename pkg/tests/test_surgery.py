import random

import pytest
from hypothesis import given, settings, strategies as st

from fibercount.diagrams import DiagramSum
from fibercount.diagrams.relations import EqualityOptions, Verdict, equal_mod_relations
from fibercount.monodromy import MonodromyData, alexander_polynomial, small_delta
from fibercount.ratfun import RatFun, parse_ratfun
from fibercount.surgery import (
    A0,
    ChordSum,
    LegLabel,
    Route,
    SurgeryError,
    YSum,
    block_sum,
    chord_sum_build,
    example_chord_sums,
    example_y_sums,
    pair,
    parse_label,
    surgery_Q,
    surgery_Zn,
    y_sum_build,
)

from instances import random_instance

P = parse_ratfun
D = "(1 - 3*t + t^2)"
GOLDEN = ("24*Tr_Theta((1 - t1)/(1 - 3*t1 + t1^2) (x) (1 - t2)/(1 - 3*t2 + t2^2) "
          "(x) (1 - t3)/(1 - 3*t3 + t3^2))")
a, b, c = parse_label("1+a:1"), parse_label("1+b:2"), parse_label("1+c:3")


def same_class(x, y):
    return equal_mod_relations(x, y, EqualityOptions(use_ihx=False)).verdict is Verdict.EQUAL


# -- Y and chord sums ------------------------------------------------------------------

def test_y_antisymmetry_cancels():
    assert y_sum_build([(1, (a, b, c)), (1, (b, a, c))]).is_zero()


def test_y_repeated_leg_is_zero():
    assert y_sum_build([(1, (a, a, b))]).is_zero()


def test_y_terms_sorted_with_sign():
    y = y_sum_build([(2, (c, a, b)), (1, (b, a, c))])
    assert y.terms == ((1, (a, b, c)),)


def test_example_y_sums_keep_one_term_per_labeling():
    # the 3! relabelings carry distinct leg sets, so nothing merges
    y1, y2 = example_y_sums()
    assert len(y1.terms) == 12 and len(y2.terms) == 12


def test_label_parsing():
    assert parse_label("2-z3:1") == LegLabel(2, "-", "z3", 1)
    assert parse_label({"i": 1, "side": "+", "point": "y'", "k": 2}) == LegLabel(1, "+", "y'", 2)
    with pytest.raises(SurgeryError):
        parse_label("1*y:1")
    with pytest.raises(SurgeryError):
        LegLabel(1, "+", "y", 0)


def test_chord_coefficients_from_transfer_matrices():
    x, y = parse_label("1+p:1"), parse_label("2-q:1")
    direct = chord_sum_build(A0, [Route(x, y, matrix="direct", row=1, col=1)])
    assert direct.terms[0][0] == P(f"(1-t)/{D}")
    through = chord_sum_build(A0, [Route(x, y, matrix="through", row=1, col=1)])
    assert through.terms[0][0] == P(f"t*(2-t)/{D}")
    zero = [[0, 0], [0, 0]]
    assert chord_sum_build(zero, [Route(x, y, matrix="direct", row=2, col=2)]).terms[0][0] == RatFun.const(1)
    assert chord_sum_build(zero, [Route(x, y, matrix="direct", row=1, col=2)]).is_zero()
    assert chord_sum_build(None, [Route(x, y, coeff="1 + t")]).terms[0][0] == P("1 + t")


def test_chord_errors():
    x, y = parse_label("1+p:1"), parse_label("2-q:1")
    with pytest.raises(SurgeryError, match="outside"):
        chord_sum_build(A0, [Route(x, y, matrix="direct", row=3, col=1)])
    with pytest.raises(SurgeryError, match="same side"):
        chord_sum_build(A0, [Route(x, parse_label("2+q:1"), coeff="1")])
    with pytest.raises(SurgeryError, match="direct"):
        chord_sum_build(A0, [Route(x, y, matrix="sideways", row=1, col=1)])


# -- pairing ----------------------------------------------------------------------------

def theta_instance():
    legs1 = [LegLabel(1, "+", f"u{k}", k) for k in (1, 2, 3)]
    legs2 = [LegLabel(2, "-", f"v{k}", k) for k in (1, 2, 3)]
    ys = [y_sum_build([(1, tuple(legs1))]), y_sum_build([(1, tuple(legs2))])]
    cs = [chord_sum_build(None, [Route(legs1[k], legs2[k], coeff=f"(1-t)/{D}")]) for k in range(3)]
    return ys, cs


def test_matching_labels_give_theta():
    ys, cs = theta_instance()
    out = pair(ys, cs)
    assert str(out) == "Tr_Theta((1 - t1)/(1 - 3*t1 + t1^2) (x) (1 - t2)/(1 - 3*t2 + t2^2) (x) (1 - t3)/(1 - 3*t3 + t3^2))"
    assert out.meta["pairing"]["matched"] == 1


def test_mismatched_labels_give_zero():
    ys, cs = theta_instance()
    stray = chord_sum_build(None, [Route(parse_label("1+zz:3"), parse_label("2-v3:3"), coeff="1")])
    assert pair(ys, cs[:2] + [stray]).is_zero()


def test_golden_tensor_terms_merge():
    ys, cs = example_y_sums(), example_chord_sums()
    out = pair(ys, cs)
    assert len(out.terms) == 1 and out.terms[0].coeff == 12
    assert out.meta["pairing"] == {"combinations": 144, "matched": 12, "disconnected": 0}


def test_duplicate_label_across_factors_rejected():
    ys, cs = theta_instance()
    with pytest.raises(SurgeryError, match="duplicate"):
        pair([ys[0], ys[0]], cs)


def test_disconnected_pairings_dropped():
    def star(i, side, tag):
        return [LegLabel(i, side, f"{tag}{k}", k) for k in (1, 2, 3)]

    stars = [star(1, "+", "p"), star(2, "-", "q"), star(3, "+", "r"), star(4, "-", "s")]
    ys = [y_sum_build([(1, tuple(s))]) for s in stars]
    cs = [chord_sum_build(None, [Route(stars[0][k], stars[1][k], coeff="1")]) for k in range(3)] + \
         [chord_sum_build(None, [Route(stars[2][k], stars[3][k], coeff="1")]) for k in range(3)]
    out = pair(ys, cs)
    assert out.is_zero()
    assert out.meta["pairing"]["disconnected"] == 1


# -- surgery formulas ----------------------------------------------------------------------

def test_zn_golden():
    assert str(surgery_Zn(example_y_sums(), example_chord_sums(), 1)) == GOLDEN


def test_zn_vanishes_above_2n():
    ys, cs = theta_instance()
    extra = y_sum_build([(1, (LegLabel(3, "+", "w", 1), LegLabel(3, "+", "w", 2), LegLabel(3, "+", "w", 3)))])
    assert surgery_Zn(ys + [extra], cs, 1).is_zero()


def test_zn_below_2n_is_an_error():
    ys, cs = theta_instance()
    with pytest.raises(SurgeryError, match="m >= 2n"):
        surgery_Zn(ys[:1], cs, 1)


def test_zn_empty_chords_give_zero():
    ys, _ = theta_instance()
    assert surgery_Zn(ys, [ChordSum(), ChordSum(), ChordSum()], 1).is_zero()


def test_q_golden_and_report():
    m = MonodromyData.of(block_sum(A0, A0, A0))
    r = surgery_Q(example_y_sums(), example_chord_sums(), small_delta(m), alexander_polynomial(m), 3)
    assert str(r.value) == GOLDEN
    assert r.report.acted == ()


def test_q_vanishes_for_three_surgeries():
    ys, cs = theta_instance()
    extra = y_sum_build([(1, (LegLabel(3, "+", "w", 1), LegLabel(3, "+", "w", 2), LegLabel(3, "+", "w", 3)))])
    assert surgery_Q(ys + [extra], cs, None, None).value.is_zero()


def test_q_rejects_mixed_sides():
    mixed = y_sum_build([(1, (LegLabel(1, "+", "u", 1), LegLabel(1, "-", "v", 2), LegLabel(1, "+", "w", 3)))])
    ys, cs = theta_instance()
    with pytest.raises(SurgeryError, match="mixing"):
        surgery_Q([mixed, ys[1]], cs, None, None)


def test_q_zero_chords_give_zero():
    ys, cs = theta_instance()
    zero = [chord_sum_build(None, [Route(*t[1], coeff="0")]) for ch in cs for t in ch.terms]
    assert surgery_Q(ys, zero, None, None).value.is_zero()


# -- randomized properties ---------------------------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(-3, 3))
def test_pair_is_multilinear(seed, scale):
    rng = random.Random(seed)
    ys, cs = random_instance(rng)
    ys_alt, _ = random_instance(rng, points=ys)
    combo = [ys[0].scale(scale) + ys_alt[0], ys[1]]
    lhs = pair(combo, cs)
    rhs = pair(ys, cs).scale(scale) + pair([ys_alt[0], ys[1]], cs)
    assert same_class(lhs, rhs)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pair_ignores_factor_order(seed):
    rng = random.Random(seed)
    ys, cs = random_instance(rng)
    shuffled = cs[:]
    rng.shuffle(shuffled)
    assert pair(ys, cs) == pair(ys[::-1], shuffled)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2))
def test_leg_transposition_negates(seed, which):
    rng = random.Random(seed)
    ys, cs = random_instance(rng, single_term=True)
    (coef, legs), = ys[0].terms
    i, j = [(0, 1), (1, 2), (0, 2)][which]
    swapped = list(legs)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    flipped = y_sum_build([(coef, tuple(swapped))])
    assert same_class(pair([flipped, ys[1]], cs), pair(ys, cs).scale(-1))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_label_mismatch_vanishes(seed):
    rng = random.Random(seed)
    ys, cs = random_instance(rng)
    renamed = [ChordSum(tuple((c, (LegLabel(x.i, x.side, x.point + "_", x.k), y)) for c, (x, y) in ch.terms))
               for ch in cs]
    assert pair(ys, renamed).is_zero()
