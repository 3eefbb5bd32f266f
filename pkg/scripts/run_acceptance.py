"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py [--quick] [--only 1,3,14] [--json out.json]

PLURIKIT_THREADS > 1 runs criteria in parallel processes.
"""

import argparse
import json
import sys

from plurikit.acceptance import run_all


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--only", type=lambda s: {int(x) for x in s.split(",")})
    ap.add_argument("--json")
    args = ap.parse_args()
    results = run_all(quick=args.quick, only=args.only)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria pass")
    if args.json:
        with open(args.json, "w") as f:
            json.dump([r.to_json() for r in results], f, indent=1)
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
