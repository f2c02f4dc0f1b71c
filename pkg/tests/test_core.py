from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coopshare.core import (
    check_core,
    core_nonempty,
    is_imputation,
    max_core_payoff,
    sample_core,
)
from coopshare.errors import DimensionError, EmptyCore
from coopshare.game import TuGame, coalition, gen_convex
from coopshare.payments import esv, vickrey
from oracles import core_rows, core_vertices, vertex_max
from strategies import convex_games, games

F = Fraction


def test_example3_point_in_core(example3):
    v = check_core(example3, (F(5, 2), F(7, 2), 1))
    assert v.in_core and v.violated is None and v.budget_gap == 0


def test_esv_violates_cr_in_example2(example2):
    v = check_core(example2, esv(example2).payments)
    assert not v.in_core
    assert example2.coalition_labels(v.violated) == ("s1", "d2")
    assert (v.violated_payment, v.violated_value) == (F(9, 2), 5)


def test_zero_game(zero_game):
    assert check_core(zero_game, (0, 0, 0)).in_core


def test_budget_excess_is_reported(example3):
    v = check_core(example3, (5, 7, 2))
    assert not v.in_core and v.violated is None and v.budget_gap == 7


def test_dimension_mismatch(example3):
    with pytest.raises(DimensionError):
        check_core(example3, (1, 2))
    with pytest.raises(DimensionError):
        is_imputation(example3, (1, 2, 3, 4))


def test_imputations(example3):
    assert is_imputation(example3, (F(5, 2), F(5, 2), 2))
    assert is_imputation(example3, (7, 0, 0))
    assert not is_imputation(example3, (8, 0, 0))


def test_max_core_payoff_examples(example3):
    assert max_core_payoff(example3, 1) == 7
    assert max_core_payoff(example3, 2) == 2
    assert max_core_payoff(TuGame(1, (0, 4)), 0) == 4


def test_max_core_payoff_empty_core():
    with pytest.raises(EmptyCore):
        max_core_payoff(TuGame(2, (0, 1, 1, 1)), 0)


def test_core_nonempty_examples(zero_game):
    assert not core_nonempty(TuGame(2, (0, 1, 1, 1)))
    assert core_nonempty(zero_game)


@given(games(max_n=3))
def test_core_nonempty_matches_vertex_enumeration(g):
    assert core_nonempty(g) == bool(core_vertices(g))


@settings(max_examples=40)
@given(games(min_n=1, max_n=3), st.data())
def test_max_core_payoff_matches_vertices(g, data):
    i = data.draw(st.integers(0, g.n - 1))
    obj = [int(k == i) for k in range(g.n)]
    expected = vertex_max(g.n, obj, core_rows(g))
    if expected is None:
        with pytest.raises(EmptyCore):
            max_core_payoff(g, i)
    else:
        assert max_core_payoff(g, i) == expected


@given(convex_games(max_n=5))
def test_theorem_one_on_convex_games(g):
    vp = vickrey(g)
    singles = [g.values[1 << j] for j in range(g.n)]
    for i in range(g.n):
        best = max_core_payoff(g, i)
        assert best == vp[i]
        assert best <= g.total - (sum(singles) - singles[i])


@given(games(max_n=4), st.data())
def test_core_membership_implies_imputation(g, data):
    x = tuple(data.draw(st.lists(st.integers(-4, 8).map(F), min_size=g.n, max_size=g.n)))
    if check_core(g, x).in_core:
        assert is_imputation(g, x)


def test_sample_core_trivial(example3):
    assert sample_core(example3, 0, 1) == []
    with pytest.raises(EmptyCore):
        sample_core(TuGame(2, (0, 1, 1, 1)), 3, 0)


@pytest.mark.parametrize("seed", range(5))
def test_sample_core_example3(example3, seed):
    pts = sample_core(example3, 12, seed)
    assert len(pts) == 12 and len(set(pts)) == 12
    for p in pts:
        assert check_core(example3, p).in_core
        assert p[0] + p[1] >= 5
    assert pts == sample_core(example3, 12, seed)


def test_sample_core_single_point():
    # additive game: the core is the single point (1, 2)
    g = TuGame.from_coalitions(2, {(0,): 1, (1,): 2, (0, 1): 3})
    assert sample_core(g, 4, 0) == [(1, 2)] * 4


@settings(max_examples=25)
@given(convex_games(min_n=2, max_n=5), st.integers(0, 100))
def test_sample_core_points_valid(g, seed):
    pts = sample_core(g, 10, seed)
    for p in pts:
        assert check_core(g, p).in_core
    if len(set(pts)) < len(pts):
        assert len(set(pts)) == 1
