"""Weighted Lorenz curves and the orderings built on them."""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from coopshare.errors import DimensionError, DomainError, ZeroWeight


@dataclass(frozen=True)
class WeightVector:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(w) for w in self.entries)
        for i, w in enumerate(entries):
            if w <= 0:
                raise ZeroWeight(f"weight {i} is {w}; weights must be strictly positive")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def unit(cls, n: int) -> WeightVector:
        return cls((Fraction(1),) * n)

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(tuple(w))


@dataclass(frozen=True)
class LorenzCurve:
    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    permutation: tuple[int, ...]

    @property
    def width(self) -> Fraction:
        return self.breakpoints[-1][0]

    def to_json(self) -> list[list[str]]:
        return [[str(p), str(v)] for p, v in self.breakpoints]


class Verdict(enum.Enum):
    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _vectors(x, w) -> tuple[tuple[Fraction, ...], WeightVector]:
    w = as_weights(w)
    x = tuple(Fraction(v) for v in x)
    if len(x) != len(w):
        raise DimensionError(f"vector has {len(x)} entries, weights have {len(w)}")
    return x, w


def scaled_order(x: Sequence[Fraction], w: WeightVector) -> list[int]:
    """Indices by ascending x_i / w_i; ties by ascending index."""
    return sorted(range(len(x)), key=lambda i: (x[i] / w[i], i))


def build_curve(x: Sequence, w) -> LorenzCurve:
    x, w = _vectors(x, w)
    order = scaled_order(x, w)
    p = v = Fraction(0)
    points = [(p, v)]
    for i in order:
        p += w[i]
        v += x[i]
        points.append((p, v))
    return LorenzCurve(tuple(points), tuple(order))


def eval_curve(c: LorenzCurve, p) -> Fraction:
    p = Fraction(p)
    if p < 0 or p > c.width:
        raise DomainError(f"{p} lies outside [0, {c.width}]")
    xs = [q for q, _ in c.breakpoints]
    k = bisect.bisect_left(xs, p)
    if xs[k] == p:
        return c.breakpoints[k][1]
    (p0, v0), (p1, v1) = c.breakpoints[k - 1], c.breakpoints[k]
    return v0 + (p - p0) * (v1 - v0) / (p1 - p0)


def dominates(x: Sequence, y: Sequence, w) -> Verdict:
    """Compare the w-Lorenz curves of x and y.

    Both curves are linear between their own breakpoints, so comparing at
    the union of breakpoints decides the ordering everywhere.
    """
    x, w = _vectors(x, w)
    y, _ = _vectors(y, w)
    cx, cy = build_curve(x, w), build_curve(y, w)
    grid = sorted({p for p, _ in cx.breakpoints} | {p for p, _ in cy.breakpoints})
    above = below = False
    for p in grid:
        lx, ly = eval_curve(cx, p), eval_curve(cy, p)
        if lx > ly:
            above = True
        elif lx < ly:
            below = True
    if above and below:
        return Verdict.INCOMPARABLE
    if above:
        return Verdict.DOMINATES
    if below:
        return Verdict.DOMINATED_BY
    return Verdict.EQUAL


def sorted_scaled(x: Sequence, w) -> tuple[Fraction, ...]:
    x, w = _vectors(x, w)
    return tuple(sorted(x[i] / w[i] for i in range(len(x))))


def lex_compare_scaled(x: Sequence, y: Sequence, w) -> int:
    """Sign of sorted(x/w) - sorted(y/w) in dictionary order: -1, 0 or 1."""
    sx = sorted_scaled(x, w)
    sy = sorted_scaled(y, w)
    if len(sx) != len(sy):
        raise DimensionError("vectors differ in length")
    return (sx > sy) - (sx < sy)
