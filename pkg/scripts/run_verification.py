#!/usr/bin/env python3
"""Run every named verification suite and print a one-line summary each.

Usage: python scripts/run_verification.py [--seed N] [--fast]
"""

import argparse
import time

from obslab.suites import SUITES


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fast", action="store_true", help="smaller sample counts")
    args = ap.parse_args()
    knobs = {
        "obstructions": {"t_max": 3, "seed": args.seed, "subdivision_samples": 2 if args.fast else 5},
        "class-containment": {"n_max": 6 if args.fast else 7},
        "contraption": {"samples": 50 if args.fast else 200, "seed": args.seed},
        "crystallized": {"samples": 50 if args.fast else 200, "seed": args.seed},
        "extractors": {"samples": 30 if args.fast else 100, "seed": args.seed},
        "ramsey": {"c": 3, "s": 2, "seed": args.seed, "samples": 100 if args.fast else 300},
    }
    all_ok = True
    for name in sorted(SUITES):
        t0 = time.perf_counter()
        records = SUITES[name](**knobs[name])
        bad = [r for r in records if not r["ok"]]
        all_ok = all_ok and not bad
        status = "ok" if not bad else f"{len(bad)} FAILURES"
        print(f"{name:20s} {len(records):4d} instances  {status:12s} {time.perf_counter() - t0:6.1f}s")
        for r in bad[:5]:
            print(f"  failed: {r}")
    return 0 if all_ok else 2


if __name__ == "__main__":
    raise SystemExit(main())
