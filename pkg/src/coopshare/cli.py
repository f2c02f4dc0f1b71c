"""coopshare command line.

Exit status: 0 on success, 1 when a check or verification fails (or a
solver cannot produce the requested allocation), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Sequence

from coopshare import core, egalitarian, payments
from coopshare.errors import CoopShareError, DimensionError, MalformedInput
from coopshare.game import MAX_GEN_PLAYERS, convexity_violation, from_exchange, gen_convex, is_superadditive
from coopshare.io import (
    allocation_from_json,
    dumps,
    exchange_from_json,
    game_to_json,
    load_json,
    read_game,
    scaling_to_json,
    trace_to_json,
    weights_from_json,
)
from coopshare.lorenz import WeightVector, build_curve, dominates
from coopshare.rational import format_rational, parse_rational
from coopshare.verification import CorpusSpec, run_suite

METHODS = ("vickrey", "esv", "isv", "threshold", "ea", "wea")


class _Failure(Exception):
    """A well-formed request whose answer is negative (exit 1)."""


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _seed(args) -> int:
    env = os.environ.get("COOPSHARE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise MalformedInput(f"COOPSHARE_SEED: not an integer: {env!r}") from None
    return args.seed


def _budget(text: str, game) -> Fraction:
    if text == "auto":
        return game.total
    try:
        return parse_rational(text)
    except MalformedInput as exc:
        raise MalformedInput(f"--budget: {exc}") from None


def _weights(spec: str, game) -> WeightVector:
    if spec == "unit":
        return WeightVector.unit(game.n)
    if spec == "vickrey":
        vp = payments.vickrey(game)
        if any(v <= 0 for v in vp):
            raise _Failure("Vickrey weights need every Vickrey payment to be positive")
        return WeightVector(vp)
    w = weights_from_json(load_json(spec), spec)
    if len(w) != game.n:
        raise MalformedInput(f"{spec}: {len(w)} weights for {game.n} players")
    return w


def cmd_compute(args) -> int:
    game = read_game(args.game)
    labels = game.labels
    if args.method in ("ea", "wea"):
        w = WeightVector.unit(game.n) if args.method == "ea" else _weights(args.weights, game)
        trace = egalitarian.wea(game, w)
        if args.json:
            out = trace_to_json(trace, labels)
            out["method"] = args.method
            _emit(args, dumps(out))
        else:
            text = ""
            for k, r in enumerate(trace.rounds, start=1):
                names = ",".join(labels[i] for i, _ in r.payoffs)
                text += f"round {k}: {{{names}}} average {format_rational(r.average)}\n"
            if not trace.hypotheses_met:
                text += "note: game is not convex; result carries no core or uniqueness guarantee\n"
            rows = [(lbl, format_rational(v), format_rational(w[i])) for i, (lbl, v) in enumerate(zip(labels, trace.final))]
            _emit(args, text + _table(("player", "payment", "weight"), rows))
        return 0

    budget = _budget(args.budget, game)
    if args.method == "vickrey":
        vp = payments.vickrey(game)
        result = payments.ScalingResult(vp, (Fraction(1),) * game.n, sum(vp, Fraction(0)), "vickrey")
    else:
        fn = {"esv": payments.esv, "isv": payments.isv, "threshold": payments.threshold_vickrey}[args.method]
        result = fn(game, budget)
    if args.json:
        _emit(args, dumps(scaling_to_json(result, labels)))
    else:
        rows = [
            (lbl, format_rational(p), format_rational(a))
            for lbl, p, a in zip(labels, result.payments, result.alphas)
        ]
        head = f"method {result.method}, budget {format_rational(result.budget)}"
        if result.threshold is not None:
            head += f", threshold {format_rational(result.threshold)}"
        _emit(args, head + "\n" + _table(("player", "payment", "alpha"), rows))
    return 0


def cmd_check(args) -> int:
    game = read_game(args.game)
    if args.convex:
        witness = convexity_violation(game)
        out = {"check": "convex", "ok": witness is None}
        if witness is not None:
            s, t = witness
            out["witness"] = [list(game.coalition_labels(s)), list(game.coalition_labels(t))]
        text = "convex\n" if witness is None else (
            "not convex: v(S|T) + v(S&T) < v(S) + v(T) for S={%s}, T={%s}\n"
            % (",".join(out["witness"][0]), ",".join(out["witness"][1]))
        )
        ok = witness is None
    elif args.superadditive:
        ok = is_superadditive(game)
        out = {"check": "superadditive", "ok": ok}
        text = "superadditive\n" if ok else "not superadditive\n"
    else:
        path = args.core or args.imputation
        x = allocation_from_json(load_json(path), path)
        if len(x) != game.n:
            raise MalformedInput(f"{path}: {len(x)} payoffs for {game.n} players")
        if args.core:
            v = core.check_core(game, x)
            ok = v.in_core
            out = {"check": "core", "ok": ok, "budget_gap": format_rational(v.budget_gap)}
            if v.violated is not None:
                names = game.coalition_labels(v.violated)
                out.update(
                    violated=list(names),
                    paid=format_rational(v.violated_payment),
                    value=format_rational(v.violated_value),
                )
                text = "not in core: coalition {%s} is paid %s < %s\n" % (
                    ",".join(names),
                    out["paid"],
                    out["value"],
                )
            elif not ok:
                text = f"not in core: payments exceed v(N) by {out['budget_gap']}\n"
            else:
                text = "in core\n"
        else:
            ok = core.is_imputation(game, x)
            out = {"check": "imputation", "ok": ok}
            text = "imputation\n" if ok else "not an imputation\n"
    _emit(args, dumps(out) if args.json else text)
    return 0 if ok else 1


def cmd_lorenz(args) -> int:
    if args.curve:
        x = allocation_from_json(load_json(args.curve), args.curve)
        w = WeightVector.unit(len(x)) if args.weights == "unit" else weights_from_json(load_json(args.weights), args.weights)
        if len(w) != len(x):
            raise MalformedInput(f"{args.weights}: {len(w)} weights for {len(x)} payoffs")
        c = build_curve(x, w)
        if args.json:
            _emit(args, dumps(c.to_json()))
        else:
            _emit(args, _table(("weight", "value"), [tuple(p) for p in c.to_json()]))
        return 0
    a_path, b_path = args.dominates
    a = allocation_from_json(load_json(a_path), a_path)
    b = allocation_from_json(load_json(b_path), b_path)
    if len(a) != len(b):
        raise MalformedInput(f"{a_path} and {b_path} differ in length")
    w = WeightVector.unit(len(a)) if args.weights == "unit" else weights_from_json(load_json(args.weights), args.weights)
    if len(w) != len(a):
        raise MalformedInput(f"{args.weights}: {len(w)} weights for {len(a)} payoffs")
    verdict = dominates(a, b, w)
    _emit(args, dumps({"verdict": verdict.value}) if args.json else f"{verdict.value}\n")
    return 0


def cmd_exchange(args) -> int:
    x = exchange_from_json(load_json(args.bids), args.bids)
    _emit(args, dumps(game_to_json(from_exchange(x))))
    return 0


def cmd_gen(args) -> int:
    if not args.convex:
        raise MalformedInput("gen: only --convex games are supported")
    if not 1 <= args.players <= MAX_GEN_PLAYERS:
        raise MalformedInput(f"--players: must lie in 1..{MAX_GEN_PLAYERS}")
    _emit(args, dumps(game_to_json(gen_convex(args.players, _seed(args), args.terms))))
    return 0


def _sizes(text: str) -> tuple[int, ...]:
    try:
        if "-" in text:
            lo, hi = (int(t) for t in text.split("-"))
            sizes = tuple(range(lo, hi + 1))
        else:
            sizes = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise MalformedInput(f"--sizes: expected 'a-b' or 'a,b,...', got {text!r}") from None
    if not sizes or not all(1 <= s <= MAX_GEN_PLAYERS for s in sizes):
        raise MalformedInput(f"--sizes: player counts must lie in 1..{MAX_GEN_PLAYERS}")
    return sizes


def cmd_verify(args) -> int:
    spec = CorpusSpec(
        count=args.count,
        sizes=_sizes(args.sizes),
        seed=_seed(args),
        lemma_pairs=args.lemma_pairs,
        core_samples=args.samples,
        include_examples=not args.no_examples,
    )
    report = run_suite(spec)
    if args.json:
        _emit(args, dumps(report.to_json()))
    else:
        summary = report.to_json()["summary"]
        lines = [f"seed {report.seed}: " + ", ".join(f"{k} {v}" for k, v in summary.items())]
        for c in report.failures:
            lines.append(f"FAIL {c.game_id} {c.name}: {c.note}")
            lines.append("  " + dumps(c.witness).replace("\n", "\n  ").rstrip())
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coopshare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if output:
            p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("compute", help="compute an allocation for a game file")
    p.add_argument("game")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--weights", default="unit", help="unit | vickrey | weights JSON file (wea only)")
    p.add_argument("--budget", default="auto", help="auto (= v(N)) or a rational such as 6 or 9/2")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="check an allocation or a game property")
    p.add_argument("game")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--core", metavar="ALLOCATION")
    g.add_argument("--imputation", metavar="ALLOCATION")
    g.add_argument("--convex", action="store_true")
    g.add_argument("--superadditive", action="store_true")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lorenz", help="compare or export weighted Lorenz curves")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dominates", nargs=2, metavar=("A", "B"))
    g.add_argument("--curve", metavar="ALLOCATION")
    p.add_argument("--weights", default="unit", help="unit | weights JSON file")
    common(p)
    p.set_defaults(func=cmd_lorenz)

    p = sub.add_parser("exchange", help="turn an exchange bid file into a game file")
    p.add_argument("bids")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exchange)

    p = sub.add_parser("gen", help="generate a random game file")
    p.add_argument("--convex", action="store_true", required=True)
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the exact verification suite")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--sizes", default="3-7")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lemma-pairs", type=int, default=1000)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--no-examples", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (_Failure, CoopShareError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
