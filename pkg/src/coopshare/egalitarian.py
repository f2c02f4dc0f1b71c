"""Weighted egalitarian allocation by repeated extraction of the coalition
with the largest weighted average value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from coopshare.errors import DimensionError, NonConvexTieStructure
from coopshare.game import TuGame, derived_game, expand_mask, is_convex, members
from coopshare.lorenz import WeightVector, as_weights

Allocation = tuple[Fraction, ...]


@dataclass(frozen=True)
class EaRound:
    coalition: int  # mask over the original players
    average: Fraction
    payoffs: tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class EaTrace:
    rounds: tuple[EaRound, ...]
    final: Allocation
    hypotheses_met: bool  # game is convex, so the result is the unique w-Lorenz-maximal core point


def max_avg_coalition(game: TuGame, w) -> tuple[int, Fraction]:
    """Largest v(S)/w(S) over non-empty S, returned with the union of all maximizers."""
    w = as_weights(w)
    if game.n == 0:
        raise DimensionError("game has no players")
    if len(w) != game.n:
        raise DimensionError(f"{len(w)} weights for {game.n} players")
    wsum = [Fraction(0)] * (1 << game.n)
    best: Fraction | None = None
    union = 0
    for s in range(1, 1 << game.n):
        low = s & -s
        wsum[s] = wsum[s ^ low] + w[low.bit_length() - 1]
        avg = game.values[s] / wsum[s]
        if best is None or avg > best:
            best, union = avg, s
        elif avg == best:
            union |= s
    if game.values[union] / wsum[union] != best:
        raise NonConvexTieStructure(
            f"union {game.coalition_labels(union)} of maximal-average coalitions is not maximal"
        )
    return union, best


def wea(game: TuGame, w) -> EaTrace:
    w = as_weights(w)
    if len(w) != game.n:
        raise DimensionError(f"{len(w)} weights for {game.n} players")
    x = [Fraction(0)] * game.n
    rounds = []
    current = game
    survivors = list(range(game.n))
    while survivors:
        sub = WeightVector(tuple(w[i] for i in survivors))
        s, avg = max_avg_coalition(current, sub)
        picked = expand_mask(s, survivors)
        pays = []
        for p in members(picked):
            x[p] = w[p] * avg
            pays.append((p, x[p]))
        rounds.append(EaRound(picked, avg, tuple(pays)))
        if s == current.grand:
            break
        current = derived_game(current, s)
        survivors = [i for i in survivors if not picked >> i & 1]
    return EaTrace(tuple(rounds), tuple(x), is_convex(game))


def ea(game: TuGame) -> EaTrace:
    return wea(game, WeightVector.unit(game.n))
