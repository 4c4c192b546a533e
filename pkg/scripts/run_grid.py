"""Run the identity grid and write a JSON report with per-identity totals.

    python3 scripts/run_grid.py --prec 128 --out grid_report.json
"""

import argparse
import json
import time
from collections import Counter

from carlitz_periods.verify import SuiteConfig, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prec", type=int, default=128)
    ap.add_argument("--slack", type=int, default=8)
    ap.add_argument("--samples", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3], help="prime q values")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    config = SuiteConfig(
        fields=tuple((q, 1) for q in args.q),
        prec=args.prec,
        slack=args.slack,
        z_samples=args.samples,
        seed=args.seed,
    )
    start = time.perf_counter()
    reports = run_suite(config)
    elapsed = time.perf_counter() - start

    total, passed = Counter(), Counter()
    for r in reports:
        total[r.identity] += 1
        passed[r.identity] += r.passed
    for ident in total:
        print(f"{ident:<26} {passed[ident]:>5}/{total[ident]:<5}")
    print(f"{sum(passed.values())}/{len(reports)} passed in {elapsed:.1f}s")

    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"elapsed": elapsed, "reports": [r.to_json() for r in reports]}, fh, indent=1)


if __name__ == "__main__":
    main()
