"""Executable checks: ISV = Vickrey-weighted EA on convex games, plus the
supporting facts about core maxima, Lorenz dominance and lexicographic order.

Every verdict is decided with exact rational comparisons.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from coopshare.core import check_core, core_nonempty, core_program, max_core_payoff, sample_core
from coopshare.egalitarian import ea, wea
from coopshare.errors import CoopShareError
from coopshare.game import ExchangeInstance, TuGame, from_exchange, gen_convex, is_convex
from coopshare.io import game_to_json
from coopshare.lorenz import Verdict, WeightVector, as_weights, dominates, lex_compare_scaled
from coopshare.lp import lex_max_min
from coopshare.payments import esv, isv, literal_isv, vickrey
from coopshare.rational import format_rational


class Outcome(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckEntry:
    name: str
    game_id: str
    verdict: Outcome
    witness: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "game": self.game_id, "verdict": self.verdict.value}
        if self.witness:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    seed: int
    checks: list[CheckEntry] = field(default_factory=list)

    def count(self, verdict: Outcome) -> int:
        return sum(1 for c in self.checks if c.verdict is verdict)

    @property
    def failures(self) -> list[CheckEntry]:
        return [c for c in self.checks if c.verdict is Outcome.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "summary": {o.value: self.count(o) for o in Outcome},
            "checks": [c.to_json() for c in self.checks],
        }


def _vec(x: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in x]


def _fail(name: str, game_id: str, game: TuGame, note: str, **vectors) -> CheckEntry:
    witness = {"game": game_to_json(game)}
    witness.update({k: _vec(v) for k, v in vectors.items()})
    return CheckEntry(name, game_id, Outcome.FAIL, witness, note)


def _theorem_hypotheses(game: TuGame) -> str | None:
    """Why the equivalence theorem does not apply to ``game``, or None."""
    if not is_convex(game):
        return "game is not convex"
    if not core_nonempty(game):
        return "core is empty"
    if any(v <= 0 for v in vickrey(game)):
        return "some Vickrey payment is 0, so Vickrey weights are not strictly positive"
    return None


# -- game-level checks -------------------------------------------------------


def verify_isv_wea(game: TuGame, game_id: str = "game") -> CheckEntry:
    """ISV at budget v(N) equals the EA weighted by the Vickrey payments."""
    name = "isv_equals_vickrey_wea"
    why = _theorem_hypotheses(game)
    if why:
        return CheckEntry(name, game_id, Outcome.SKIPPED, note=why)
    x = isv(game).payments
    y = wea(game, vickrey(game)).final
    if x == y:
        return CheckEntry(name, game_id, Outcome.PASS, {"payments": _vec(x)})
    return _fail(name, game_id, game, "ISV and Vickrey-weighted EA differ", isv=x, wea=y)


def verify_vickrey_is_core_max(game: TuGame, game_id: str = "game") -> CheckEntry:
    """vp_i is the largest payoff player i gets anywhere in the core."""
    name = "vickrey_is_core_max"
    if not core_nonempty(game):
        return CheckEntry(name, game_id, Outcome.SKIPPED, note="core is empty")
    vp = vickrey(game)
    best = tuple(max_core_payoff(game, i) for i in range(game.n))
    if vp == best:
        return CheckEntry(name, game_id, Outcome.PASS, {"vickrey": _vec(vp)})
    if not is_convex(game):
        # only established for convex games here; record the mismatch without failing
        return CheckEntry(
            name,
            game_id,
            Outcome.SKIPPED,
            {"vickrey": _vec(vp), "core_max": _vec(best)},
            "non-convex game: Vickrey payment differs from core maximum",
        )
    return _fail(name, game_id, game, "Vickrey payment differs from core maximum", vickrey=vp, core_max=best)


def verify_ea_lexmax(game: TuGame, game_id: str = "game") -> CheckEntry:
    """Unit-weight EA equals the leximin point of the core."""
    name = "ea_is_core_lexmax"
    if not is_convex(game):
        return CheckEntry(name, game_id, Outcome.SKIPPED, note="game is not convex")
    x = ea(game).final
    if game.n == 0:
        return CheckEntry(name, game_id, Outcome.PASS)
    lexmax = lex_max_min(core_program(game), range(game.n)).point
    if x == lexmax:
        return CheckEntry(name, game_id, Outcome.PASS, {"payments": _vec(x)})
    return _fail(name, game_id, game, "EA differs from core leximin", ea=x, lexmax=lexmax)


def verify_isv_unique(game: TuGame, game_id: str = "game") -> CheckEntry:
    """Independent paths (ISV, reversed-order ISV, reversed-order weighted EA) agree."""
    name = "isv_unique"
    why = _theorem_hypotheses(game)
    if why:
        return CheckEntry(name, game_id, Outcome.SKIPPED, note=why)
    perm = list(reversed(range(game.n)))
    rev = game.permuted(perm)

    def back(z: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * game.n
        for k, old in enumerate(perm):
            out[old] = z[k]
        return tuple(out)

    a = isv(game).payments
    b = back(isv(rev).payments)
    c = back(wea(rev, vickrey(rev)).final)
    if a == b == c:
        return CheckEntry(name, game_id, Outcome.PASS)
    return _fail(name, game_id, game, "solver paths disagree", isv=a, isv_reversed=b, wea_reversed=c)


def verify_literal_isv(game: TuGame, game_id: str = "game") -> CheckEntry:
    """Without CR rows, the lexicographic program collapses to uniform scaling."""
    name = "literal_isv_equals_esv"
    try:
        e = esv(game)
    except CoopShareError as exc:
        return CheckEntry(name, game_id, Outcome.SKIPPED, note=str(exc))
    lit = literal_isv(game)
    vp = vickrey(game)
    pos = [i for i in range(game.n) if vp[i] > 0]
    if all(lit.payments[i] == e.payments[i] for i in pos):
        return CheckEntry(name, game_id, Outcome.PASS, {"alpha": format_rational(e.alphas[0])})
    return _fail(name, game_id, game, "literal ISV differs from ESV", literal=lit.payments, esv=e.payments)


def verify_wea_core_lorenz(
    game: TuGame, game_id: str = "game", samples: int = 20, seed: int = 0
) -> list[CheckEntry]:
    """WEA lies in the core and w-Lorenz-dominates or equals sampled core points.

    Run with unit weights and, when all are positive, Vickrey weights.
    """
    name = "wea_core_lorenz"
    if not is_convex(game):
        return [CheckEntry(name, game_id, Outcome.SKIPPED, note="game is not convex")]
    points = sample_core(game, samples, seed)
    weightings = [("unit", WeightVector.unit(game.n))]
    vp = vickrey(game)
    if all(v > 0 for v in vp):
        weightings.append(("vickrey", WeightVector(vp)))
    out = []
    for label, w in weightings:
        check = f"{name}[{label}]"
        y = wea(game, w).final
        verdict = check_core(game, y)
        if not verdict.in_core:
            out.append(_fail(check, game_id, game, "WEA is not in the core", wea=y))
            continue
        bad = [p for p in points if dominates(y, p, w) in (Verdict.DOMINATED_BY, Verdict.INCOMPARABLE)]
        if bad:
            out.append(_fail(check, game_id, game, "core point not Lorenz-below WEA", wea=y, point=bad[0]))
        else:
            out.append(CheckEntry(check, game_id, Outcome.PASS, {"samples": str(len(points))}))
    return out


# -- lemma checks on vector pairs ------------------------------------------------


@dataclass(frozen=True)
class LemmaOutcome:
    verdict: Outcome
    index: int | None = None


def check_lemma_strict_index(x: Sequence, y: Sequence, w) -> LemmaOutcome:
    """If y w-Lorenz-dominates x, return some j with y_j > x_j."""
    w = as_weights(w)
    if dominates(y, x, w) is not Verdict.DOMINATES:
        return LemmaOutcome(Outcome.SKIPPED)
    for j, (a, b) in enumerate(zip(x, y)):
        if Fraction(b) > Fraction(a):
            return LemmaOutcome(Outcome.PASS, j)
    return LemmaOutcome(Outcome.FAIL)


def check_lemma_min_index(x: Sequence, y: Sequence, w) -> LemmaOutcome:
    """If y w-Lorenz-dominates x, return j with y_j > x_j and
    y_i/w_i >= min(x_i/w_i, x_j/w_j) for every i.
    """
    w = as_weights(w)
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    if dominates(y, x, w) is not Verdict.DOMINATES:
        return LemmaOutcome(Outcome.SKIPPED)
    rx = [x[i] / w[i] for i in range(len(x))]
    ry = [y[i] / w[i] for i in range(len(y))]
    for j in range(len(x)):
        if y[j] > x[j] and all(ry[i] >= min(rx[i], rx[j]) for i in range(len(x))):
            return LemmaOutcome(Outcome.PASS, j)
    return LemmaOutcome(Outcome.FAIL)


def midpoint_hypothesis(x: Sequence, y: Sequence, j: int) -> bool:
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    return y[j] > x[j] and all(y[i] >= min(x[i], x[j]) for i in range(len(x)))


def check_midpoint_lex(x: Sequence, y: Sequence, j: int) -> Outcome:
    """Under y_j > x_j and y_i >= min(x_i, x_j), sorted((x+y)/2) beats sorted(x)."""
    if len(x) != len(y) or not 0 <= j < len(x) or not midpoint_hypothesis(x, y, j):
        return Outcome.SKIPPED
    z = [(Fraction(a) + Fraction(b)) / 2 for a, b in zip(x, y)]
    unit = WeightVector.unit(len(x))
    return Outcome.PASS if lex_compare_scaled(z, x, unit) > 0 else Outcome.FAIL


# -- fuzzers ------------------------------------------------------------------


def _rand_q(rng: random.Random, lo: int = -20, hi: int = 20) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def dominating_pair(rng: random.Random, n: int, weighted: bool = True):
    """(x, y, w) with y strictly w-Lorenz-dominating x.

    y comes from x by transfers from a higher to a lower x_i/w_i entry that
    do not overshoot the ratio gap, plus occasional plain increases.
    """
    while True:
        w = WeightVector(
            tuple(Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n))
            if weighted
            else (Fraction(1),) * n
        )
        x = tuple(_rand_q(rng) for _ in range(n))
        y = list(x)
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.2:
                y[rng.randrange(n)] += Fraction(rng.randint(1, 6), rng.randint(1, 3))
                continue
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if y[i] / w[i] < y[j] / w[j]:
                i, j = j, i
            gap = (y[i] * w[j] - y[j] * w[i]) / (w[i] + w[j])
            if gap <= 0:
                continue
            delta = gap * Fraction(rng.randint(1, 4), 4)
            y[i] -= delta
            y[j] += delta
        y = tuple(y)
        if dominates(y, x, w) is Verdict.DOMINATES:
            return x, y, w


def midpoint_pair(rng: random.Random, n: int):
    """(x, y, j) satisfying y_j > x_j and y_i >= min(x_i, x_j)."""
    x = tuple(_rand_q(rng) for _ in range(n))
    j = rng.randrange(n)
    y = []
    for i in range(n):
        if i == j:
            y.append(x[j] + Fraction(rng.randint(1, 8), rng.randint(1, 4)))
        else:
            floor = min(x[i], x[j])
            bump = Fraction(0) if rng.random() < 0.3 else Fraction(rng.randint(0, 30), rng.randint(1, 4))
            y.append(floor + bump)
    return x, tuple(y), j


def _lemma_entry(name: str, pairs: int, check: Callable[[int], tuple[Outcome, dict]]) -> CheckEntry:
    passed = 0
    for k in range(pairs):
        verdict, witness = check(k)
        if verdict is Outcome.FAIL:
            return CheckEntry(name, "fuzz", Outcome.FAIL, witness, f"failed on pair {k}")
        passed += verdict is Outcome.PASS
    return CheckEntry(name, "fuzz", Outcome.PASS, {"pairs": str(pairs), "passed": str(passed)})


def lemma_checks(pairs: int, seed: int) -> list[CheckEntry]:
    if pairs <= 0:
        return []
    out = []
    for name, fn in (("lemma_strict_index", check_lemma_strict_index), ("lemma_min_index", check_lemma_min_index)):
        rng = random.Random(f"{seed}:{name}")

        def run(k, fn=fn, rng=rng):
            x, y, w = dominating_pair(rng, rng.randint(2, 6), weighted=k % 2 == 0)
            res = fn(x, y, w)
            return res.verdict, {"x": _vec(x), "y": _vec(y), "w": _vec(w.entries)}

        out.append(_lemma_entry(name, pairs, run))

    rng = random.Random(f"{seed}:midpoint")

    def run_mid(k):
        x, y, j = midpoint_pair(rng, rng.randint(2, 6))
        return check_midpoint_lex(x, y, j), {"x": _vec(x), "y": _vec(y), "j": str(j)}

    out.append(_lemma_entry("lemma_midpoint_lex", pairs, run_mid))
    return out


# -- worked examples ---------------------------------------------------------------

EXAMPLE_1 = ExchangeInstance((("s1", 10),), (("d1", 12), ("d2", 15)))
EXAMPLE_2 = ExchangeInstance((("s1", 10), ("s2", 12)), (("d1", 12), ("d2", 15), ("d3", 13)))
EXAMPLE_3 = TuGame.from_coalitions(3, {(0, 1): 5, (1, 2): 2, (0, 1, 2): 7})


def example_checks() -> list[CheckEntry]:
    out = []
    g1 = from_exchange(EXAMPLE_1)
    vp = vickrey(g1)
    total_vp = sum(vp, Fraction(0))
    out.append(
        CheckEntry(
            "vickrey_budget_violation",
            "example-1",
            Outcome.PASS if total_vp > g1.total else Outcome.FAIL,
            {"vickrey": _vec(vp), "sum": format_rational(total_vp), "profit": format_rational(g1.total)},
        )
    )

    g2 = from_exchange(EXAMPLE_2)
    e = esv(g2)
    verdict = check_core(g2, e.payments)
    witness = {"alpha": format_rational(e.alphas[0]), "payments": _vec(e.payments)}
    if verdict.violated is not None:
        witness.update(
            coalition=list(g2.coalition_labels(verdict.violated)),
            paid=format_rational(verdict.violated_payment),
            value=format_rational(verdict.violated_value),
            gap=format_rational(verdict.violated_value - verdict.violated_payment),
        )
    reproduced = (
        e.alphas[0] == Fraction(3, 4)
        and verdict.violated is not None
        and g2.coalition_labels(verdict.violated) == ("s1", "d2")
    )
    out.append(CheckEntry("esv_cr_violation", "example-2", Outcome.PASS if reproduced else Outcome.FAIL, witness))

    for gid, g in (("example-2", g2), ("example-3", EXAMPLE_3)):
        out.append(verify_isv_wea(g, gid))
        out.append(verify_vickrey_is_core_max(g, gid))
        out.append(verify_ea_lexmax(g, gid))
    return out


# -- suite ----------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 200
    sizes: tuple[int, ...] = (3, 4, 5, 6, 7)
    seed: int = 0
    terms: int | None = None
    lemma_pairs: int = 1000
    core_samples: int = 20
    lexmax_max_players: int = 6
    include_examples: bool = True


def corpus(spec: CorpusSpec) -> list[tuple[str, TuGame]]:
    rng = random.Random(spec.seed)
    games = []
    for k in range(spec.count):
        n = spec.sizes[k % len(spec.sizes)]
        games.append((f"convex-{k:04d}-n{n}", gen_convex(n, rng.randrange(2**32), spec.terms)))
    return games


def game_checks(game_id: str, game: TuGame, spec: CorpusSpec) -> list[CheckEntry]:
    out = [
        verify_isv_wea(game, game_id),
        verify_vickrey_is_core_max(game, game_id),
        verify_isv_unique(game, game_id),
        verify_literal_isv(game, game_id),
    ]
    if game.n <= spec.lexmax_max_players:
        out.append(verify_ea_lexmax(game, game_id))
    out.extend(verify_wea_core_lorenz(game, game_id, spec.core_samples, spec.seed))
    return out


def run_suite(spec: CorpusSpec = CorpusSpec()) -> VerificationReport:
    report = VerificationReport(spec.seed)
    if spec.include_examples:
        report.checks.extend(example_checks())
    for game_id, game in corpus(spec):
        report.checks.extend(game_checks(game_id, game, spec))
    report.checks.extend(lemma_checks(spec.lemma_pairs, spec.seed))
    report.checks.sort(key=lambda c: (c.game_id, c.name))
    return report
