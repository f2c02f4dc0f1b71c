"""Vickrey payments and three ways of scaling them down to a budget.

ISV here is the core-constrained program: payments x_i = alpha_i * vp_i
must satisfy every coalitional-rationality row x(S) >= v(S) besides the
budget row. Without those rows the lexicographic optimum is just the
uniform ESV scaling (see ``literal_isv``), so the CR rows are what make
ISV a distinct, core-valued rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from coopshare.core import core_nonempty
from coopshare.errors import DomainError, EmptyCore, Infeasible, InfeasibleScaling
from coopshare.game import TuGame
from coopshare.lp import EQ, GE, LinearConstraint, LinearProgram, lex_max_min

Allocation = tuple[Fraction, ...]


@dataclass(frozen=True)
class ScalingResult:
    payments: Allocation
    alphas: tuple[Fraction, ...]
    budget: Fraction
    method: str
    threshold: Fraction | None = None


def vickrey(game: TuGame) -> Allocation:
    """vp_i = v(N) - v(N without i)."""
    full = game.grand
    return tuple(game.total - game.values[full & ~(1 << i)] for i in range(game.n))


def _budget(game: TuGame, budget) -> Fraction:
    return game.total if budget is None else Fraction(budget)


def esv(game: TuGame, budget=None) -> ScalingResult:
    """Scale every Vickrey payment by the same factor so they sum to the budget."""
    budget = _budget(game, budget)
    if budget < 0:
        raise DomainError(f"budget {budget} is negative")
    vp = vickrey(game)
    total = sum(vp, Fraction(0))
    if total == 0 and budget == 0:
        alpha = Fraction(1)
    elif budget > total or total <= 0:
        raise InfeasibleScaling(
            f"Vickrey payments sum to {total}; cannot reach budget {budget} with factor <= 1"
        )
    else:
        alpha = budget / total
    return ScalingResult(tuple(alpha * v for v in vp), (alpha,) * game.n, budget, "esv")


def threshold_vickrey(game: TuGame, budget=None) -> ScalingResult:
    """Pay max(0, vp_i - t) with the least t >= 0 that keeps the sum within budget."""
    budget = _budget(game, budget)
    if budget < 0:
        raise DomainError(f"budget {budget} is negative")
    vp = vickrey(game)

    def pay(t: Fraction) -> Allocation:
        return tuple(max(Fraction(0), v - t) for v in vp)

    t = Fraction(0)
    if sum(pay(t), Fraction(0)) > budget:
        # sum is S_k - k t on the segment where the k largest payments are active
        levels = sorted((v for v in vp if v > 0), reverse=True)
        acc = Fraction(0)
        for k, top in enumerate(levels, start=1):
            acc += top
            nxt = levels[k] if k < len(levels) else Fraction(0)
            cand = (acc - budget) / k
            if nxt <= cand <= top:
                t = cand
                break
    payments = pay(t)
    alphas = tuple(p / v if v > 0 else Fraction(1) for p, v in zip(payments, vp))
    return ScalingResult(payments, alphas, budget, "threshold", t)


def _scaled_result(
    game: TuGame, vp: Allocation, active: list[int], levels: tuple[Fraction, ...], budget, method
) -> ScalingResult:
    alphas = [Fraction(1)] * game.n
    for k, i in enumerate(active):
        alphas[i] = levels[k]
    payments = tuple(a * v for a, v in zip(alphas, vp))
    return ScalingResult(payments, tuple(alphas), budget, method)


def isv_program(game: TuGame, budget, vp: Allocation, active: list[int]) -> LinearProgram:
    """LP over alpha (one per active player) with budget and CR rows.

    CR rows are merged by their active projection, keeping the largest
    right-hand side. Raises InfeasibleScaling when a coalition with no
    active member is owed a positive amount.
    """
    pos = {i: k for k, i in enumerate(active)}
    active_mask = sum(1 << i for i in active)
    strongest: dict[int, Fraction] = {}
    for s in range(1, game.grand):
        proj = s & active_mask
        val = game.values[s]
        if proj == 0:
            if val > 0:
                raise InfeasibleScaling(
                    f"coalition {game.coalition_labels(s)} is owed {val} but no member is paid"
                )
            continue
        if proj not in strongest or val > strongest[proj]:
            strongest[proj] = val
    m = len(active)
    rows = []
    for proj in sorted(strongest):
        coeffs = [Fraction(0)] * m
        for i in active:
            if proj >> i & 1:
                coeffs[pos[i]] = vp[i]
        rows.append(LinearConstraint(tuple(coeffs), GE, strongest[proj]))
    rows.append(LinearConstraint(tuple(vp[i] for i in active), EQ, budget))
    return LinearProgram(m, constraints=tuple(rows), lower=(0,) * m, upper=(1,) * m)


def isv(game: TuGame, budget=None) -> ScalingResult:
    """Individually scaled Vickrey payments, lexicographically maximal in sorted alpha.

    Players with vp_i = 0 get payment 0 and alpha_i = 1 and take no part in
    the lexicographic objective.
    """
    budget = _budget(game, budget)
    if not core_nonempty(game):
        raise EmptyCore("ISV needs a non-empty core")
    vp = vickrey(game)
    active = [i for i in range(game.n) if vp[i] != 0]
    if not active:
        if budget != 0:
            raise InfeasibleScaling(f"all Vickrey payments are 0; budget {budget} unreachable")
        return _scaled_result(game, vp, active, (), budget, "isv")
    prog = isv_program(game, budget, vp, active)
    try:
        res = lex_max_min(prog, range(len(active)))
    except Infeasible as exc:
        raise InfeasibleScaling(f"no alpha in [0,1]^n meets budget {budget} and CR") from exc
    return _scaled_result(game, vp, active, res.target_vector(range(len(active))), budget, "isv")


def literal_isv(game: TuGame, budget=None) -> ScalingResult:
    """The budget-only program: lex-max sorted alpha s.t. sum alpha_i vp_i = budget.

    Kept to document that, without CR rows, the optimum is uniform scaling.
    """
    budget = _budget(game, budget)
    vp = vickrey(game)
    active = [i for i in range(game.n) if vp[i] != 0]
    if not active:
        if budget != 0:
            raise InfeasibleScaling(f"all Vickrey payments are 0; budget {budget} unreachable")
        return _scaled_result(game, vp, active, (), budget, "isv-literal")
    m = len(active)
    prog = LinearProgram(
        m,
        constraints=(LinearConstraint(tuple(vp[i] for i in active), EQ, budget),),
        lower=(0,) * m,
        upper=(1,) * m,
    )
    try:
        res = lex_max_min(prog, range(m))
    except Infeasible as exc:
        raise InfeasibleScaling(f"no alpha in [0,1]^n meets budget {budget}") from exc
    return _scaled_result(game, vp, active, res.target_vector(range(m)), budget, "isv-literal")
