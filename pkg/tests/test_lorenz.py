from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coopshare.errors import DimensionError, DomainError, ZeroWeight
from coopshare.lorenz import (
    Verdict,
    WeightVector,
    build_curve,
    dominates,
    eval_curve,
    lex_compare_scaled,
    sorted_scaled,
)
from coopshare.lp import EQ, LinearProgram, constraint, solve_max
from strategies import pos_q, vectors_with_weights

F = Fraction
UNIT2 = WeightVector.unit(2)


def test_breakpoints_identity_order():
    c = build_curve((1, 2, 3), WeightVector.unit(3))
    assert c.breakpoints == ((0, 0), (1, 1), (2, 3), (3, 6))


def test_breakpoints_reversed():
    c = build_curve((3, 1), UNIT2)
    assert c.breakpoints == ((0, 0), (1, 1), (2, 4))
    assert c.permutation == (1, 0)


def test_breakpoints_weighted_all_ties():
    c = build_curve((F(5, 2), F(7, 2), 1), (5, 7, 2))
    assert c.breakpoints == ((0, 0), (5, F(5, 2)), (12, 6), (14, 7))
    assert c.permutation == (0, 1, 2)


def test_eval_examples():
    c = build_curve((1, 2, 3), WeightVector.unit(3))
    assert eval_curve(c, 0) == 0
    assert eval_curve(c, F(3, 2)) == 2
    assert eval_curve(c, 3) == 6
    with pytest.raises(DomainError):
        eval_curve(c, F(7, 2))
    with pytest.raises(DomainError):
        eval_curve(c, -1)


def test_dominates_examples():
    assert dominates((3, 3), (2, 4), UNIT2) is Verdict.DOMINATES
    assert dominates((2, 4), (3, 3), UNIT2) is Verdict.DOMINATED_BY
    assert dominates((1, 4), (1, 4), UNIT2) is Verdict.EQUAL
    assert dominates((1, 4), (2, 2), UNIT2) is Verdict.INCOMPARABLE


def test_lex_compare_examples():
    assert lex_compare_scaled((1, 2), (2, 1), UNIT2) == 0
    w = (5, 7, 2)
    assert lex_compare_scaled((F(5, 2), F(7, 2), 1), (3, 3, 1), w) == 1
    assert sorted_scaled((3, 3, 1), w) == (F(3, 7), F(1, 2), F(3, 5))
    assert lex_compare_scaled((0, 0, 0), (1, 2, 3), w) == -1


def test_weights_must_be_positive():
    with pytest.raises(ZeroWeight):
        WeightVector((1, 0))
    with pytest.raises(DomainError):
        WeightVector((1, -2))


def test_dimension_errors():
    with pytest.raises(DimensionError):
        build_curve((1, 2, 3), UNIT2)
    with pytest.raises(DimensionError):
        dominates((1, 2), (1, 2, 3), UNIT2)


def _knapsack_min(x, w, p):
    """min sum f_i x_i s.t. sum f_i w_i = p, 0 <= f_i <= 1 (greedy-free route)."""
    n = len(x)
    lp = LinearProgram(
        n,
        tuple(-F(v) for v in x),
        (constraint([F(v) for v in w], EQ, p),),
        lower=(0,) * n,
        upper=(1,) * n,
    )
    return -solve_max(lp).value


@given(vectors_with_weights(max_n=5), st.integers(0, 12))
def test_curve_is_fractional_knapsack_minimum(xyw, k):
    x, _, w = xyw
    c = build_curve(x, w)
    p = c.width * F(k, 12)
    assert eval_curve(c, p) == _knapsack_min(x, w, p)


@given(vectors_with_weights())
def test_total_conserved(xyw):
    x, _, w = xyw
    c = build_curve(x, w)
    assert eval_curve(c, c.width) == sum(x)
    assert c.width == sum(w)


@given(vectors_with_weights())
def test_slopes_non_decreasing(xyw):
    x, _, w = xyw
    bp = build_curve(x, w).breakpoints
    slopes = [(v1 - v0) / (p1 - p0) for (p0, v0), (p1, v1) in zip(bp, bp[1:])]
    assert slopes == sorted(slopes)


@given(vectors_with_weights(min_n=2), st.randoms(use_true_random=False))
def test_tie_break_does_not_move_curve(xyw, rnd):
    x, _, w = xyw
    # duplicate ratios are common with small rationals; any valid order gives the same curve
    c = build_curve(x, w)
    order = list(range(len(x)))
    rnd.shuffle(order)
    order.sort(key=lambda i: x[i] / w[i])
    p = v = F(0)
    for i in order:
        p += w[i]
        v += x[i]
        assert eval_curve(c, p) == v


@given(vectors_with_weights(), pos_q)
def test_antisymmetry_and_scale_covariance(xyw, lam):
    x, y, w = xyw
    a, b = dominates(x, y, w), dominates(y, x, w)
    flip = {
        Verdict.DOMINATES: Verdict.DOMINATED_BY,
        Verdict.DOMINATED_BY: Verdict.DOMINATES,
        Verdict.EQUAL: Verdict.EQUAL,
        Verdict.INCOMPARABLE: Verdict.INCOMPARABLE,
    }
    assert b is flip[a]
    if a is Verdict.EQUAL:
        assert sorted_scaled(x, w) == sorted_scaled(y, w)
    assert dominates([lam * v for v in x], [lam * v for v in y], w) is a


@given(vectors_with_weights())
def test_domination_matches_dense_grid(xyw):
    x, y, w = xyw
    cx, cy = build_curve(x, w), build_curve(y, w)
    width = cx.width
    grid = [width * F(k, 240) for k in range(241)]
    grid += [p for p, _ in cx.breakpoints + cy.breakpoints]
    diffs = [eval_curve(cx, p) - eval_curve(cy, p) for p in grid]
    verdict = dominates(x, y, w)
    if verdict is Verdict.DOMINATES:
        assert min(diffs) >= 0 < max(diffs)
    elif verdict is Verdict.DOMINATED_BY:
        assert max(diffs) <= 0 > min(diffs)
    elif verdict is Verdict.EQUAL:
        assert set(diffs) == {0}
    else:
        assert min(diffs) < 0 < max(diffs)


def test_curve_json():
    c = build_curve((F(1, 2), 1), UNIT2)
    assert c.to_json() == [["0", "0"], ["1", "1/2"], ["2", "3/2"]]
