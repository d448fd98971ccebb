"""Tabulate dim HH^j(E_{1,n}) by weight over several fields, with cochain sizes and timings.

    python3 scripts/hochschild_table.py --n 2..5 --fields Q,Fp:2,Fp:101
"""

import argparse
import time

from artifact.cli import parse_range
from artifact.einf_algebra import build_e, hochschild
from artifact.verify import parse_field


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2..5")
    ap.add_argument("--fields", default="Q,Fp:101")
    ap.add_argument("--r", default="1..6")
    args = ap.parse_args()
    print("field     n  j  r  dim  cochain dims                 secs")
    for name in args.fields.split(","):
        F = parse_field(name)
        for n in parse_range(args.n):
            E = build_e(n, F)
            for j in (1, 2):
                for r in parse_range(args.r):
                    t0 = time.perf_counter()
                    res = hochschild(n, j, r, F, E)
                    dims = "/".join(map(str, res.cochain_dims))
                    print(f"{F.name:8s} {n:2d} {j:2d} {r:2d} {res.dimension:4d}  {dims:28s} "
                          f"{time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
