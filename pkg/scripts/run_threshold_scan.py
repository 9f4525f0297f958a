"""Sample collections at the cycle threshold and tally verdicts per family."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from transversal.harness import threshold_scan


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=list(range(3, 11)))
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results/threshold_scan.json"))
    args = parser.parse_args()

    reports = [threshold_scan(n, args.seed, args.count, args.workers) for n in args.n]
    for r in reports:
        print(f"n={r.parameters['n']} verdicts={r.summary['verdicts']} "
              f"anomalies={len(r.anomalies)} failures={len(r.failures)} {r.elapsed_ms} ms")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    main()
