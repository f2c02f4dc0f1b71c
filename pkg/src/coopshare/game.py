"""TU-games with exact rational values stored in a bitmask-indexed table.

Player ``i`` is bit ``1 << i``; a coalition is an ``int`` mask.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from coopshare.errors import DimensionError, InvalidCoalition, MalformedInput, TooLarge

MAX_PLAYERS = 20
MAX_GEN_PLAYERS = 12


def coalition(*players: int) -> int:
    mask = 0
    for p in players:
        mask |= 1 << p
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


@dataclass(frozen=True)
class TuGame:
    n: int
    values: tuple[Fraction, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.n <= MAX_PLAYERS:
            raise TooLarge(f"{self.n} players exceeds the cap of {MAX_PLAYERS}")
        values = tuple(Fraction(v) for v in self.values)
        if len(values) != 1 << self.n:
            raise DimensionError(f"expected {1 << self.n} values, got {len(values)}")
        if values[0] != 0:
            raise MalformedInput("value of the empty coalition must be 0")
        labels = tuple(self.labels) or default_labels(self.n)
        if len(labels) != self.n:
            raise DimensionError("labels must have one entry per player")
        if len(set(labels)) != len(labels):
            raise MalformedInput("player labels must be unique")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_function(
        cls, n: int, f: Callable[[tuple[int, ...]], object], labels: Sequence[str] = ()
    ) -> TuGame:
        if n > MAX_PLAYERS:
            raise TooLarge(f"{n} players exceeds the cap of {MAX_PLAYERS}")
        vals = [Fraction(0)] + [Fraction(f(members(m))) for m in range(1, 1 << n)]
        return cls(n, tuple(vals), tuple(labels))

    @classmethod
    def from_coalitions(
        cls, n: int, table: Mapping[Iterable[int], object], labels: Sequence[str] = ()
    ) -> TuGame:
        """Build from ``{players: value}``; unlisted coalitions are worth 0."""
        if n > MAX_PLAYERS:
            raise TooLarge(f"{n} players exceeds the cap of {MAX_PLAYERS}")
        vals = [Fraction(0)] * (1 << n)
        for players, v in table.items():
            mask = coalition(*players)
            if mask >= 1 << n:
                raise InvalidCoalition(f"coalition {tuple(players)} has players outside 0..{n - 1}")
            vals[mask] = Fraction(v)
        return cls(n, tuple(vals), tuple(labels))

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @property
    def total(self) -> Fraction:
        return self.values[self.grand]

    def value(self, s: int) -> Fraction:
        if not 0 <= s < 1 << self.n:
            raise InvalidCoalition(f"mask {s} out of range for {self.n} players")
        return self.values[s]

    def coalition_labels(self, s: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in members(s))

    def permuted(self, perm: Sequence[int]) -> TuGame:
        """Relabel so that new player ``k`` is old player ``perm[k]``."""
        if sorted(perm) != list(range(self.n)):
            raise DimensionError("perm must be a permutation of the players")
        vals = [Fraction(0)] * (1 << self.n)
        for m in range(1 << self.n):
            old = 0
            for k in range(self.n):
                if m >> k & 1:
                    old |= 1 << perm[k]
            vals[m] = self.values[old]
        return TuGame(self.n, tuple(vals), tuple(self.labels[p] for p in perm))


def value(game: TuGame, s: int) -> Fraction:
    return game.value(s)


def convexity_violation(game: TuGame) -> tuple[int, int] | None:
    """First pair (S, T) with v(S|T) + v(S&T) < v(S) + v(T), or None.

    Uses the local form of supermodularity: it suffices to check
    S = R+i, T = R+j for all R and i, j outside R.
    """
    v = game.values
    n = game.n
    for r in range(1 << n):
        outside = [i for i in range(n) if not r >> i & 1]
        for a, i in enumerate(outside):
            ri = r | 1 << i
            for j in outside[a + 1 :]:
                rj = r | 1 << j
                if v[ri | rj] + v[r] < v[ri] + v[rj]:
                    return ri, rj
    return None


def is_convex(game: TuGame) -> bool:
    return convexity_violation(game) is None


def is_superadditive(game: TuGame) -> bool:
    v = game.values
    full = game.grand
    for s in range(1, full + 1):
        rest = full & ~s
        t = rest
        while t:
            if t > s and v[s | t] < v[s] + v[t]:
                return False
            t = (t - 1) & rest
    return True


def derived_game(game: TuGame, removed: int) -> TuGame:
    """Game on the surviving players: v'(S) = v(S + removed) - v(removed).

    Survivors keep their relative order: new player k is the k-th smallest
    surviving index of ``game``.
    """
    if removed == 0:
        raise InvalidCoalition("removed coalition must be non-empty")
    if not 0 < removed < 1 << game.n:
        raise InvalidCoalition(f"mask {removed} out of range for {game.n} players")
    survivors = [i for i in range(game.n) if not removed >> i & 1]
    m = len(survivors)
    base = game.values[removed]
    orig = [0] * (1 << m)
    vals = [Fraction(0)] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        orig[s] = orig[s ^ low] | 1 << survivors[low.bit_length() - 1]
        vals[s] = game.values[orig[s] | removed] - base
    return TuGame(m, tuple(vals), tuple(game.labels[i] for i in survivors))


def expand_mask(mask: int, survivors: Sequence[int]) -> int:
    """Map a mask over ``survivors`` back to the indices they came from."""
    out = 0
    for k in members(mask):
        out |= 1 << survivors[k]
    return out


@dataclass(frozen=True)
class ExchangeInstance:
    """Single-item exchange: each supply bid sells one unit, each demand bid buys one."""

    supplies: tuple[tuple[str, Fraction], ...]
    demands: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        sup = tuple((str(lbl), Fraction(p)) for lbl, p in self.supplies)
        dem = tuple((str(lbl), Fraction(p)) for lbl, p in self.demands)
        labels = [lbl for lbl, _ in sup + dem]
        if len(set(labels)) != len(labels):
            raise MalformedInput("bid labels must be unique across supplies and demands")
        object.__setattr__(self, "supplies", sup)
        object.__setattr__(self, "demands", dem)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.supplies + self.demands)


def from_exchange(x: ExchangeInstance) -> TuGame:
    """v(S) = best total profit of a matching of supply to demand bids inside S.

    A supply at price s and a demand at price d may trade for profit d - s
    only when d >= s. Evaluated for every coalition by a DP over the lowest
    member: it either stays unmatched or trades with one partner in S.
    """
    ns = len(x.supplies)
    n = ns + len(x.demands)
    if n > MAX_PLAYERS:
        raise TooLarge(f"{n} bids exceeds the cap of {MAX_PLAYERS}")
    prices = [p for _, p in x.supplies] + [p for _, p in x.demands]
    partners: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for i in range(ns):
        for j in range(ns, n):
            profit = prices[j] - prices[i]
            if profit >= 0:
                partners[i].append((j, profit))
                partners[j].append((i, profit))
    vals = [Fraction(0)] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        p = low.bit_length() - 1
        rest = s ^ low
        best = vals[rest]
        for q, profit in partners[p]:
            if rest >> q & 1:
                cand = profit + vals[rest ^ (1 << q)]
                if cand > best:
                    best = cand
        vals[s] = best
    return TuGame(n, tuple(vals), x.labels)


def unanimity_sum(n: int, terms: Iterable[tuple[int, Fraction]], labels: Sequence[str] = ()) -> TuGame:
    """v = sum_k c_k u_{T_k}, with u_T(S) = 1 iff T is a subset of S."""
    terms = [(t, Fraction(c)) for t, c in terms]
    vals = [Fraction(0)] * (1 << n)
    for s in range(1, 1 << n):
        acc = Fraction(0)
        for t, c in terms:
            if t & s == t:
                acc += c
        vals[s] = acc
    return TuGame(n, tuple(vals), tuple(labels))


def gen_convex(n: int, seed: int, terms: int | None = None) -> TuGame:
    """Random convex game: a non-negative combination of unanimity games.

    Supports have at most max(2, ceil(n/2)) players; large supports make the
    Vickrey payments near-proportional and the game uninteresting.
    ``terms`` defaults to ``2 * n``. Deterministic in ``seed``.
    """
    if not 1 <= n <= MAX_GEN_PLAYERS:
        raise TooLarge(f"generator supports 1..{MAX_GEN_PLAYERS} players, got {n}")
    if terms is None:
        terms = 2 * n
    rng = random.Random(seed)
    largest = min(n, max(2, (n + 1) // 2))
    chosen = []
    for _ in range(terms):
        size = rng.randint(1, largest)
        t = coalition(*rng.sample(range(n), size))
        c = Fraction(rng.randint(0, 12), rng.randint(1, 4))
        chosen.append((t, c))
    return unanimity_sum(n, chosen, tuple(f"p{i + 1}" for i in range(n)))
