"""Run the verification suite over a random convex corpus and summarize by check."""

import argparse
import json
import time
from collections import Counter

from coopshare.verification import CorpusSpec, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=240)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--lemma-pairs", type=int, default=1000)
    ap.add_argument("--report", help="also write the full JSON report here")
    args = ap.parse_args()

    start = time.perf_counter()
    report = run_suite(CorpusSpec(count=args.count, seed=args.seed, lemma_pairs=args.lemma_pairs))
    elapsed = time.perf_counter() - start

    per_check = Counter((c.name, c.verdict.value) for c in report.checks)
    names = sorted({name for name, _ in per_check})
    print(f"{'check':<28}{'pass':>6}{'fail':>6}{'skip':>6}")
    for name in names:
        print(f"{name:<28}" + "".join(f"{per_check[name, v]:>6}" for v in ("pass", "fail", "skipped")))
    print(f"{len(report.checks)} checks in {elapsed:.1f}s; {'ok' if report.ok else 'FAILURES'}")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)


if __name__ == "__main__":
    main()
