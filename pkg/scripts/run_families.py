"""Certify every extremal family and check its even-t control group."""

from __future__ import annotations

import argparse
from pathlib import Path

from transversal.harness import verify_families


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=list(range(5, 11)))
    parser.add_argument("--target", choices=["cycle", "path", "both"], default="both")
    parser.add_argument("--out", type=Path, default=Path("results/families.json"))
    args = parser.parse_args()

    report = verify_families(args.n, args.target)
    for entry in report.summary["families"]:
        print(entry)
    print(f"checked={report.checked} failures={len(report.failures)} {report.elapsed_ms} ms")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(report.to_json() + "\n")


if __name__ == "__main__":
    main()
