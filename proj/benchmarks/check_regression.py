#!/usr/bin/env python3
"""Compare a google-benchmark JSON run against baseline.json.

Prints a line per benchmark and warns when throughput drops by more than the
given factor. Always exits 0 unless --strict is passed.
"""
import argparse
import json
import pathlib
import sys


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("run", help="output of sis_bench --benchmark_format=json")
    ap.add_argument("--baseline", default=str(pathlib.Path(__file__).with_name("baseline.json")))
    ap.add_argument("--factor", type=float, default=2.0)
    ap.add_argument("--strict", action="store_true", help="exit 1 on regression")
    args = ap.parse_args()

    baseline = json.loads(pathlib.Path(args.baseline).read_text())["benchmarks"]
    run = {b["name"]: b.get("items_per_second") for b in json.loads(pathlib.Path(args.run).read_text())["benchmarks"]}

    regressed = False
    for name, base in sorted(baseline.items()):
        now = run.get(name)
        if now is None:
            print(f"SKIP {name}: not in run")
            continue
        slow = base / now
        status = "WARN" if slow > args.factor else "ok  "
        regressed |= slow > args.factor
        print(f"{status} {name}: {now:.4g}/s vs baseline {base:.4g}/s ({slow:.2f}x slower)")
    return 1 if (regressed and args.strict) else 0


if __name__ == "__main__":
    sys.exit(main())
