"""Run the full verification battery and write the JSON report plus a per-check summary.

    python3 scripts/run_paper_suite.py --output report.json
"""

import argparse
import collections
import json
import sys

from artifact.cli import RunConfig, run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--output", default="paper_suite_report.json")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    report, code = run_verify(RunConfig("verify", target="all", suite="paper", seed=args.seed))
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2, default=str)
    tally = collections.defaultdict(collections.Counter)
    for v in report["verdicts"]:
        tally[v["check"].split(":")[0] if v["check"].startswith("mutation:") else v["check"]][v["status"]] += 1
    for check, counts in sorted(tally.items()):
        print(f"{check:20s} " + " ".join(f"{s}={c}" for s, c in sorted(counts.items())))
    print("summary:", report["summary"], "exit", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
