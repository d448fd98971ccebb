"""Time every registered check over a range of n and print the slowest cases.

    python3 scripts/bench.py --n 4..8 --top 15
"""

import argparse

from artifact.cli import RunConfig, parse_range, run_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="4..8")
    ap.add_argument("--check", default="all")
    ap.add_argument("--top", type=int, default=10)
    args = ap.parse_args()
    rows = run_bench(RunConfig("bench", target=args.check, ns=parse_range(args.n)))["timings"]
    rows.sort(key=lambda r: -r["seconds"])
    print(f"{len(rows)} cases, {sum(r['seconds'] for r in rows):.2f}s total")
    for r in rows[:args.top]:
        params = {k: v for k, v in r["params"].items() if k != "point"}
        print(f"{r['seconds']:8.3f}s  {r['status']:9s} {r['check']:18s} {params}")


if __name__ == "__main__":
    main()
