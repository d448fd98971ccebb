"""Command line front-end: emit equation systems, run checks, compute Hochschild dimensions."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Sequence

from .exact_math import Field
from . import polyring as P
from . import verify as V

EMIT_TARGETS = ("un-full", "un-reduced", "curve", "curve-homog", "plucker", "e-algebra")
FORMATS = ("json", "ideal-text", "cas-text")
PAPER_NS = tuple(range(1, 10))

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    target: str | None = None
    ns: tuple[int, ...] = ()
    field: str = "Q"
    seed: int = 0
    output: str | None = None
    format: str = "json"
    suite: str | None = None
    mutate: bool = False
    timing: bool = True
    degree_cap: int | None = None
    extra: dict = dc_field(default_factory=dict)

    def report_header(self) -> dict:
        d = asdict(self)
        d["ns"] = list(self.ns)
        d.pop("output")
        d.pop("timing")
        return d


def parse_range(text: str) -> tuple[int, ...]:
    """'6' -> (6,), '5..7' -> (5, 6, 7), '4,6' -> (4, 6)."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError("empty range")
    return tuple(out)


def _field(text: str) -> Field:
    try:
        return V.parse_field(text)
    except (ValueError, KeyError) as e:
        raise UsageError(f"bad field {text!r}: {e}") from None


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=str, ensure_ascii=False) + "\n"


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ emit


def _single_n(cfg: RunConfig, default: int | None = None) -> int:
    if not cfg.ns:
        if default is None:
            raise UsageError(f"{cfg.target} needs --n")
        return default
    if len(cfg.ns) != 1:
        raise UsageError("emit takes a single --n")
    return cfg.ns[0]


def emit(cfg: RunConfig) -> str:
    from . import moduli as M
    F = _field(cfg.field)
    t = cfg.target
    if t == "e-algebra":
        from . import ncrewrite as NC
        from .einf_algebra import build_e
        n = _single_n(cfg)
        if n < 2:
            raise UsageError("e-algebra needs n >= 2")
        if cfg.format != "json":
            return NC.quiver_to_text(NC.e_quiver(n), NC.e_relations(n, F), F)
        E = build_e(n, F)
        doc = {
            "n": n, "field": F.name,
            "basis": [{"name": E.names[i], "source": E.source[i], "target": E.target[i], "degree": E.degree[i]}
                      for i in range(E.dim)],
            "products": {f"{E.names[x]}*{E.names[y]}": E.format(v) for (x, y), v in sorted(E.table.items())},
        }
        return _dump(doc)
    try:
        if t == "un-full":
            ideal = M.u_n_full(_single_n(cfg), F)
        elif t == "un-reduced":
            n = _single_n(cfg)
            ideal = M.u_n_reduced(n, F) if n >= 4 else M.u_n_presentation(n, F)
        elif t in ("curve", "curve-homog"):
            ideal = M.curve_over_un(_single_n(cfg), F, homogenized=(t == "curve-homog")).ideal
        elif t == "plucker":
            from .grassmannian import plucker_ideal
            ideal = plucker_ideal(F)
        else:
            raise UsageError(f"unknown emit target {t!r}; choose from {', '.join(EMIT_TARGETS)}")
    except ValueError as e:
        raise UsageError(str(e)) from None
    if cfg.format == "json":
        return P.ideal_to_json(ideal).rstrip("\n") + "\n"
    if cfg.format == "ideal-text":
        return P.ideal_to_text(ideal).rstrip("\n") + "\n"
    return P.ideal_to_cas(ideal).rstrip("\n") + "\n"


# ------------------------------------------------------------------ verify


def _run_case(name: str, kwargs: dict) -> dict:
    spec = V.registry()[name]
    try:
        v = spec.run(**kwargs)
    except Exception as e:  # a crash is a failure of that case, not of the run
        v = V.Verdict(name, {k: str(val) for k, val in kwargs.items()}, "fail", {"error": repr(e)})
    return v.to_dict()


def _run_mutation(name: str) -> dict:
    t0 = time.perf_counter()
    inner = _run_case(name, dict(V.registry()[name].mutation))
    status = "pass" if inner["status"] == "fail" else "fail"
    return asdict(V.Verdict(f"mutation:{name}", {"check": name}, status, {"mutated_status": inner["status"]},
                            round((time.perf_counter() - t0) * 1000, 3)))


def plan(cfg: RunConfig) -> list[tuple[str, dict]]:
    reg = V.registry()
    if cfg.target in (None, "all") or cfg.suite == "paper":
        names = list(reg)
    elif cfg.target in reg:
        names = [cfg.target]
    else:
        raise UsageError(f"unknown check {cfg.target!r}; known: {', '.join(reg)}")
    ns = cfg.ns or (PAPER_NS if cfg.suite == "paper" else (5,))
    jobs = []
    for name in names:
        spec = reg[name]
        if cfg.mutate:
            jobs.append((name, dict(spec.mutation)))
            continue
        for case in spec.cases(ns, cfg.seed):
            case = dict(case)
            if cfg.field != "Q" and spec.accepts_field and "field" not in case:
                case["field"] = _field(cfg.field)
            if cfg.degree_cap is not None and name == "diamond-symbolic":
                case["degree_cap"] = cfg.degree_cap
            if "D" in cfg.extra and name == "hilbert-series":
                case["D"] = cfg.extra["D"]
            jobs.append((name, case))
    return jobs


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MODULI_THREADS", "1")))
    except ValueError:
        raise UsageError("MODULI_THREADS must be an integer") from None


def run_verify(cfg: RunConfig) -> tuple[dict, int]:
    jobs = plan(cfg)
    mut = list(V.registry()) if cfg.suite == "paper" else []
    nw = _workers()
    if nw > 1:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            futs = [pool.submit(_run_case, n, kw) for n, kw in jobs]
            mfuts = [pool.submit(_run_mutation, n) for n in mut]
            verdicts = [f.result() for f in futs] + [f.result() for f in mfuts]
    else:
        verdicts = [_run_case(n, kw) for n, kw in jobs] + [_run_mutation(n) for n in mut]
    if not cfg.timing:
        for v in verdicts:
            v.pop("millis", None)
    summary = {s: sum(1 for v in verdicts if v["status"] == s) for s in V.STATUSES}
    report = {"config": cfg.report_header(), "summary": summary, "verdicts": verdicts}
    if summary["fail"]:
        code = EXIT_FAIL
    elif summary["truncated"]:
        code = EXIT_TRUNCATED
    else:
        code = EXIT_PASS
    return report, code


# ------------------------------------------------------------------ hochschild and bench


def run_hochschild(cfg: RunConfig) -> dict:
    from .einf_algebra import build_e, hochschild
    F = _field(cfg.field)
    rs = cfg.extra.get("r") or tuple(range(1, 7))
    js = cfg.extra.get("j") or (1, 2)
    rows = []
    for n in cfg.ns or (5,):
        if n < 2:
            raise UsageError("hochschild needs n >= 2")
        E = build_e(n, F)
        for j in js:
            for r in rs:
                if not 1 <= r <= 6 or j not in (1, 2):
                    raise UsageError("need j in {1,2} and 1 <= r <= 6")
                res = hochschild(n, j, r, F, E)
                rows.append({"n": n, "j": j, "r": r, "dim": res.dimension,
                             "cochain_dims": list(res.cochain_dims), "ranks": list(res.ranks)})
    return {"field": F.name, "results": rows}


def run_bench(cfg: RunConfig) -> dict:
    rows = []
    for name, kw in plan(cfg):
        t0 = time.perf_counter()
        v = _run_case(name, kw)
        rows.append({"check": name, "params": v["params"], "status": v["status"],
                     "seconds": round(time.perf_counter() - t0, 4)})
    return {"config": cfg.report_header(), "timings": rows}


# ------------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, n_help="n value or range such as 5..7"):
        sp.add_argument("--n", help=n_help)
        sp.add_argument("--field", default="Q", help="Q or Fp:<prime>")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    e = sub.add_parser("emit", help="write an equation system")
    e.add_argument("target", choices=EMIT_TARGETS)
    common(e)
    e.add_argument("--format", choices=FORMATS, default="ideal-text")

    v = sub.add_parser("verify", help="run checks and write a JSON report")
    v.add_argument("check", nargs="?", default="all", help="check name or 'all'")
    common(v)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--D", type=int, help="degree bound for hilbert-series")
    v.add_argument("--degree-cap", type=int, help="Buchberger degree cap for diamond-symbolic")
    v.add_argument("--suite", choices=("paper",))
    v.add_argument("--mutate", action="store_true", help="run the built-in mutated cases instead")
    v.add_argument("--no-timing", action="store_true", help="omit timing fields")

    h = sub.add_parser("hochschild", help="dimensions of HH^j(E_{1,n}) by weight")
    common(h)
    h.add_argument("--j", help="1, 2 or 1,2")
    h.add_argument("--r", help="weight or range, within 1..6")

    b = sub.add_parser("bench", help="time the checks")
    b.add_argument("check", nargs="?", default="all")
    common(b)
    b.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(args.subcommand, field=args.field, output=args.output)
    if args.n:
        cfg.ns = parse_range(args.n)
    if args.subcommand == "emit":
        cfg.target, cfg.format = args.target, args.format
    elif args.subcommand in ("verify", "bench"):
        cfg.target, cfg.seed = args.check, args.seed
    if args.subcommand == "verify":
        cfg.suite, cfg.mutate, cfg.timing = args.suite, args.mutate, not args.no_timing
        cfg.degree_cap = args.degree_cap
        if args.D is not None:
            cfg.extra["D"] = args.D
    if args.subcommand == "hochschild":
        if args.j:
            cfg.extra["j"] = parse_range(args.j)
        if args.r:
            cfg.extra["r"] = parse_range(args.r)
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = config_from_args(args)
        if cfg.subcommand == "emit":
            _write(emit(cfg), cfg.output)
            return EXIT_PASS
        if cfg.subcommand == "verify":
            report, code = run_verify(cfg)
            _write(_dump(report), cfg.output)
            return code
        if cfg.subcommand == "hochschild":
            _write(_dump(run_hochschild(cfg)), cfg.output)
            return EXIT_PASS
        _write(_dump(run_bench(cfg)), cfg.output)
        return EXIT_PASS
    except UsageError as e:
        print(f"artifact: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
