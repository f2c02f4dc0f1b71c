"""JSON file formats. All numbers travel as exact rational strings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from coopshare.egalitarian import EaTrace
from coopshare.errors import MalformedInput
from coopshare.game import MAX_PLAYERS, ExchangeInstance, TuGame, members
from coopshare.lorenz import WeightVector
from coopshare.payments import ScalingResult
from coopshare.rational import format_rational, parse_rational


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise MalformedInput(f"{path}: cannot read ({exc.strerror})") from exc


def _field(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise MalformedInput(f"{where}: missing field {key!r}")
    return data[key]


def _rational(text: Any, where: str) -> Fraction:
    try:
        return parse_rational(text)
    except MalformedInput as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def coalition_key(game: TuGame, s: int) -> str:
    return ",".join(sorted(game.labels[i] for i in members(s)))


def game_to_json(game: TuGame) -> dict:
    values = {
        coalition_key(game, s): format_rational(game.values[s])
        for s in range(1, 1 << game.n)
        if game.values[s] != 0
    }
    return {"players": list(game.labels), "values": values}


def game_from_json(data: Any, where: str = "game") -> TuGame:
    players = _field(data, "players", where)
    if not isinstance(players, list) or not all(isinstance(p, str) and p for p in players):
        raise MalformedInput(f"{where}.players: expected a list of non-empty names")
    if any("," in p for p in players):
        raise MalformedInput(f"{where}.players: names may not contain ','")
    if len(set(players)) != len(players):
        raise MalformedInput(f"{where}.players: duplicate names")
    if len(players) > MAX_PLAYERS:
        raise MalformedInput(f"{where}.players: {len(players)} exceeds the cap of {MAX_PLAYERS}")
    index = {p: i for i, p in enumerate(players)}
    raw = _field(data, "values", where)
    if not isinstance(raw, dict):
        raise MalformedInput(f"{where}.values: expected an object")
    vals = [Fraction(0)] * (1 << len(players))
    seen: set[int] = set()
    for key, text in raw.items():
        names = [k.strip() for k in key.split(",")] if key.strip() else []
        if not names:
            raise MalformedInput(f"{where}.values: the empty coalition is implied 0 and may not be listed")
        mask = 0
        for name in names:
            if name not in index:
                raise MalformedInput(f"{where}.values[{key!r}]: unknown player {name!r}")
            if mask >> index[name] & 1:
                raise MalformedInput(f"{where}.values[{key!r}]: player {name!r} repeated")
            mask |= 1 << index[name]
        if mask in seen:
            raise MalformedInput(f"{where}.values[{key!r}]: coalition listed twice")
        seen.add(mask)
        vals[mask] = _rational(text, f"{where}.values[{key!r}]")
    return TuGame(len(players), tuple(vals), tuple(players))


def exchange_to_json(x: ExchangeInstance) -> dict:
    return {
        "supplies": [{"label": lbl, "price": format_rational(p)} for lbl, p in x.supplies],
        "demands": [{"label": lbl, "price": format_rational(p)} for lbl, p in x.demands],
    }


def exchange_from_json(data: Any, where: str = "exchange") -> ExchangeInstance:
    sides = []
    for side in ("supplies", "demands"):
        bids = _field(data, side, where)
        if not isinstance(bids, list):
            raise MalformedInput(f"{where}.{side}: expected a list")
        parsed = []
        for k, bid in enumerate(bids):
            at = f"{where}.{side}[{k}]"
            label = _field(bid, "label", at)
            if not isinstance(label, str) or not label or "," in label:
                raise MalformedInput(f"{at}.label: expected a non-empty name without ','")
            parsed.append((label, _rational(_field(bid, "price", at), f"{at}.price")))
        sides.append(tuple(parsed))
    return ExchangeInstance(*sides)


def allocation_to_json(x: Sequence[Fraction]) -> dict:
    return {"payoffs": [format_rational(v) for v in x]}


def allocation_from_json(data: Any, where: str = "allocation") -> tuple[Fraction, ...]:
    payoffs = _field(data, "payoffs", where)
    if not isinstance(payoffs, list):
        raise MalformedInput(f"{where}.payoffs: expected a list")
    return tuple(_rational(v, f"{where}.payoffs[{k}]") for k, v in enumerate(payoffs))


def weights_from_json(data: Any, where: str = "weights") -> WeightVector:
    raw = _field(data, "weights", where)
    if not isinstance(raw, list):
        raise MalformedInput(f"{where}.weights: expected a list")
    vals = tuple(_rational(v, f"{where}.weights[{k}]") for k, v in enumerate(raw))
    for k, v in enumerate(vals):
        if v <= 0:
            raise MalformedInput(f"{where}.weights[{k}]: weights must be strictly positive")
    return WeightVector(vals)


def scaling_to_json(result: ScalingResult, labels: Sequence[str]) -> dict:
    out = {
        "players": list(labels),
        "payments": [format_rational(v) for v in result.payments],
        "alphas": [format_rational(v) for v in result.alphas],
        "budget": format_rational(result.budget),
        "method": result.method,
    }
    if result.threshold is not None:
        out["threshold"] = format_rational(result.threshold)
    return out


def trace_to_json(trace: EaTrace, labels: Sequence[str]) -> dict:
    return {
        "players": list(labels),
        "rounds": [
            {
                "coalition": [labels[i] for i in members(r.coalition)],
                "average": format_rational(r.average),
                "payoffs": {labels[i]: format_rational(v) for i, v in r.payoffs},
            }
            for r in trace.rounds
        ],
        "final": [format_rational(v) for v in trace.final],
        "hypotheses_met": trace.hypotheses_met,
    }


def read_game(path: str | Path) -> TuGame:
    return game_from_json(load_json(path), str(path))


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
