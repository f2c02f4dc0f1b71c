"""Core membership, per-player core maxima, and core sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from coopshare.errors import DimensionError, EmptyCore
from coopshare.game import TuGame, popcount
from coopshare.lp import EQ, GE, LinearConstraint, LinearProgram, Status, feasible, solve_max

Allocation = tuple[Fraction, ...]


@dataclass(frozen=True)
class CoreVerdict:
    in_core: bool
    violated: int | None  # first coalition (mask order) paid less than its value
    budget_gap: Fraction  # sum(x) - v(N)
    violated_payment: Fraction | None = None
    violated_value: Fraction | None = None


def _check_dim(game: TuGame, x: Sequence) -> Allocation:
    if len(x) != game.n:
        raise DimensionError(f"allocation has {len(x)} entries for {game.n} players")
    return tuple(Fraction(v) for v in x)


def coalition_sums(x: Sequence[Fraction]) -> list[Fraction]:
    """x(S) for every mask S, by adding the lowest member to x(S - lowest)."""
    sums = [Fraction(0)] * (1 << len(x))
    for s in range(1, len(sums)):
        low = s & -s
        sums[s] = sums[s ^ low] + x[low.bit_length() - 1]
    return sums


def check_core(game: TuGame, x: Sequence) -> CoreVerdict:
    x = _check_dim(game, x)
    sums = coalition_sums(x)
    gap = sums[game.grand] - game.total
    for s in range(1, 1 << game.n):
        if sums[s] < game.values[s]:
            return CoreVerdict(False, s, gap, sums[s], game.values[s])
    return CoreVerdict(gap == 0, None, gap)


def is_imputation(game: TuGame, x: Sequence) -> bool:
    x = _check_dim(game, x)
    if sum(x, Fraction(0)) != game.total:
        return False
    return all(x[i] >= game.values[1 << i] for i in range(game.n))


def core_program(game: TuGame) -> LinearProgram:
    """Core as an LP over payoffs x: x(S) >= v(S) for proper S, x(N) = v(N).

    Singleton rows are carried as lower bounds x_i >= v({i}).
    """
    n = game.n
    rows = []
    for s in range(1, game.grand):
        if popcount(s) < 2:
            continue
        coeffs = tuple(Fraction(s >> i & 1) for i in range(n))
        rows.append(LinearConstraint(coeffs, GE, game.values[s]))
    rows.append(LinearConstraint((Fraction(1),) * n, EQ, game.total))
    lower = tuple(game.values[1 << i] for i in range(n))
    return LinearProgram(n, constraints=tuple(rows), lower=lower)


def core_nonempty(game: TuGame) -> bool:
    if game.n == 0:
        return True
    return feasible(core_program(game))


def max_core_payoff(game: TuGame, i: int) -> Fraction:
    if not 0 <= i < game.n:
        raise DimensionError(f"player {i} out of range")
    obj = [Fraction(0)] * game.n
    obj[i] = Fraction(1)
    res = solve_max(core_program(game).with_objective(obj))
    if res.status is Status.INFEASIBLE:
        raise EmptyCore("core is empty")
    # bounded: x_i <= v(N) - sum of the other singleton values
    return res.value


def sample_core(game: TuGame, count: int, seed: int) -> list[Allocation]:
    """Deterministic core points: LP vertices under random objectives, then midpoints.

    Points are pairwise distinct unless the core is a single point.
    """
    if count <= 0:
        return []
    prog = core_program(game)
    rng = random.Random(seed)
    points: list[Allocation] = []
    seen: set[Allocation] = set()
    attempts = max(2 * game.n, 4)
    for _ in range(min(count, attempts)):
        obj = [Fraction(rng.randint(-10, 10), rng.randint(1, 5)) for _ in range(game.n)]
        res = solve_max(prog.with_objective(obj))
        if res.status is Status.INFEASIBLE:
            raise EmptyCore("core is empty")
        if res.point not in seen:
            seen.add(res.point)
            points.append(res.point)
    if len(points) == 1:
        return points * count
    a = 0
    while len(points) < count:
        for b in range(a):
            if len(points) >= count:
                break
            mid = tuple((p + q) / 2 for p, q in zip(points[a], points[b]))
            if mid not in seen:
                seen.add(mid)
                points.append(mid)
        a += 1
    return points[:count]
