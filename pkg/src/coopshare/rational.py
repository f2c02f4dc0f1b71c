"""Strict text form for exact rationals: optional sign, integer, optional ``/q``."""

from __future__ import annotations

import re
from fractions import Fraction

from coopshare.errors import MalformedInput

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"not a rational: {text!r}")
    m = _RATIONAL.match(text.strip())
    if m is None:
        raise MalformedInput(f"not a rational: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise MalformedInput(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction | int) -> str:
    return str(Fraction(q))


def to_fraction_vector(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)
