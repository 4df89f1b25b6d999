#!/usr/bin/env python3
"""Run every suite and write one JSON and one markdown report per suite."""

import argparse
import sys
from pathlib import Path

from g2verify.checks import SUITES, SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports")
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in SUITES:
        rep = run_suite(SuiteConfig(name=name, points=args.points, seed=args.seed))
        (out / f"{name}.json").write_text(rep.to_json())
        (out / f"{name}.md").write_text(rep.to_markdown())
        bad = [r.check_id for r in rep.runs if not r.passed]
        print(f"{name:12s} {len(rep.runs):3d} checks, failing: {bad or 'none'}")
        failed += bad
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
