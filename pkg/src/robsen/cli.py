"""Command-line front end and benchmark harness.

Subcommands: check, decompose, place, robust-sensor, robust-link, gadget,
gen, bench.  Robust runs emit a versioned JSON run report with operation
counters; bench emits CSV rows for scaling studies.  Exit codes: 0 on
success, 1 when no robust solution exists (uncoverable), 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from fractions import Fraction
from pathlib import Path

from robsen.counters import Counters
from robsen.digraph import DigraphError, StateDigraph, parse_edge_list, scc_decompose, serialize
from robsen.lrobust import LinkCertificate, lrobust_solution
from robsen.netgen import GenSpec, generate
from robsen.oracle import link_gadget, sensor_gadget
from robsen.pnc import is_feasible, min_pnc, minimal_feasible, split_solution
from robsen.srobust import SensorCertificate, UncoverableError, srobust_solution

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_UNCOVERABLE = 1
EXIT_USAGE = 2


class CliError(Exception):
    pass


def _load_digraph(path: str) -> StateDigraph:
    try:
        return parse_edge_list(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except DigraphError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _parse_vertices(text: str) -> frozenset[int]:
    try:
        return frozenset(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise CliError(f"bad vertex list {text!r}") from None


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _cover_json(inst) -> dict:
    return {
        "universe": sorted(inst.universe),
        "sets": {str(j): sorted(inst.sets[j]) for j in sorted(inst.sets)},
        "costs": {str(j): _frac(inst.costs[j]) for j in sorted(inst.costs)},
    }


def _sensor_cert_json(cert: SensorCertificate) -> dict:
    return {
        "seed": {"tips": sorted(cert.seed.tips_part), "sink_picks": sorted(cert.seed.sink_part)},
        "omega": {str(i): [sorted(s) for s in cert.family.per_index[i]]
                  for i in sorted(cert.family.per_index)},
        "cover": _cover_json(cert.instance),
        "chosen": list(cert.chosen),
        "added": sorted(cert.added),
        "solution": sorted(cert.solution),
        "mode": cert.mode,
    }


def _link_cert_json(cert: LinkCertificate) -> dict:
    return {
        "seed": {"tips": sorted(cert.seed.tips_part), "sink_picks": sorted(cert.seed.sink_part)},
        "sensitive_links": [[l.link[0], l.link[1], l.case.value] for l in cert.links],
        "theta": {str(i): [sorted(s) for s in cert.family.per_link[i]]
                  for i in sorted(cert.family.per_link)},
        "cover": _cover_json(cert.instance),
        "chosen": list(cert.chosen),
        "added": sorted(cert.added),
        "solution": sorted(cert.solution),
        "mode": cert.mode,
        "undirected": cert.undirected,
    }


def _report(args, kind: str, payload: dict, counters: Counters, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": kind,
        "input": getattr(args, "file", None),
        "paper_example": bool(getattr(args, "paper_example", False)),
        "certificate": payload,
        "counters": counters.snapshot(),
        "wall_time_ms": round(1000 * (time.monotonic() - started), 3),
    }


def cmd_check(args) -> int:
    g = _load_digraph(args.file)
    sensors = _parse_vertices(args.sensors)
    ok = is_feasible(g, sensors)
    print("feasible" if ok else "infeasible")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _load_digraph(args.file)
    d = min_pnc(g)
    out = {
        "paths": [list(p) for p in d.paths],
        "cycles": [list(c) for c in d.cycles],
        "tips": sorted(d.tips),
    }
    print(json.dumps(out, indent=None if args.compact else 2))
    return EXIT_OK


def cmd_place(args) -> int:
    g = _load_digraph(args.file)
    f = minimal_feasible(g)
    print("F = {%s}" % ", ".join(map(str, sorted(f.all))))
    if args.verbose:
        print("  tips:", sorted(f.tips_part), " sink picks:", sorted(f.sink_part))
    return EXIT_OK


def _seed_from_args(g: StateDigraph, args):
    if getattr(args, "seed_tips", None):
        return split_solution(g, _parse_vertices(args.seed_tips))
    return None


def cmd_robust_sensor(args) -> int:
    g = _load_digraph(args.file)
    counters = Counters()
    started = time.monotonic()
    mode = "exact" if args.exact else "greedy"
    try:
        cert = srobust_solution(g, mode=mode, seed=_seed_from_args(g, args), counters=counters)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    except UncoverableError as exc:
        _emit_error(args, "uncoverable", str(exc))
        return EXIT_UNCOVERABLE
    print(json.dumps(_report(args, "robust-sensor", _sensor_cert_json(cert), counters, started),
                     indent=None if args.compact else 2))
    return EXIT_OK


def cmd_robust_link(args) -> int:
    g = _load_digraph(args.file)
    counters = Counters()
    started = time.monotonic()
    mode = "exact" if args.exact else "greedy"
    try:
        cert = lrobust_solution(g, mode=mode, undirected=args.undirected,
                                seed=_seed_from_args(g, args), counters=counters)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    except UncoverableError as exc:
        _emit_error(args, "uncoverable", str(exc))
        return EXIT_UNCOVERABLE
    print(json.dumps(_report(args, "robust-link", _link_cert_json(cert), counters, started),
                     indent=None if args.compact else 2))
    return EXIT_OK


def cmd_gadget(args) -> int:
    try:
        spec = json.loads(Path(args.cover).read_text())
        p = int(spec["p"])
        sets = [frozenset(map(int, c)) for c in spec["sets"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad cover file {args.cover}: {exc}") from exc
    try:
        g = sensor_gadget(sets, p) if args.kind == "sensor" else link_gadget(sets, p)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    text = serialize(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(model=args.model, n=args.n, p=args.p, ring_degree=args.ring_degree,
                       d=args.d, direct_fraction=args.direct_fraction, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    g = generate(spec)
    text = serialize(g)
    if args.out:
        Path(args.out).write_text(text)
        Path(args.out).with_suffix(".json").write_text(json.dumps(spec.to_json(), indent=2))
    else:
        sys.stdout.write(text)
        print(json.dumps(spec.to_json()), file=sys.stderr)
    return EXIT_OK


def _choose(n: int, k: int) -> int:
    return math.comb(n, k)


def enumeration_bound(universe: int, nsets: int) -> int:
    """Size of the brute-force cover search: all set combinations up to |U|.

    This is the closed-form yardstick the counters are contrasted with; it
    counts candidate-collection tests, each of which would cost at least one
    decomposition.
    """
    return sum(_choose(nsets, k) for k in range(1, universe + 1))


def bench_one(spec: GenSpec) -> dict:
    g = generate(spec)
    row: dict[str, object] = {"n": spec.n, "seed": spec.seed, "status": "ok"}
    started = time.monotonic()
    f = minimal_feasible(g)
    p = len(f.all)
    n = g.n
    # brute-force yardsticks over the full candidate catalogs (singletons
    # and pairs for sensors, singletons for links), independent of whether
    # the instance turns out to be coverable
    row["f_size"] = p
    row["dprime_s"] = enumeration_bound(p, n * (n + 1) // 2)
    cs = Counters()
    try:
        s = srobust_solution(g, mode="greedy", counters=cs)
        row["fs_size"] = len(s.solution)
    except UncoverableError:
        row["fs_size"] = ""
        row["status"] = "s-uncoverable"
    row["d_s"] = cs.matchings_run
    cl = Counters()
    try:
        l = lrobust_solution(g, mode="greedy", counters=cl)
        row["fl_size"] = len(l.solution)
        row["dprime_l"] = enumeration_bound(len(l.links), n) if l.links else 0
    except UncoverableError as exc:
        row["fl_size"] = ""
        row["dprime_l"] = enumeration_bound(int(getattr(exc, "index", 1) or 1), n)
        if row["status"] == "ok":
            row["status"] = "l-uncoverable"
        else:
            row["status"] = "sl-uncoverable"
    row["d_l"] = cl.matchings_run
    row["time_ms"] = round(1000 * (time.monotonic() - started), 1)
    return row


BENCH_COLUMNS = ["n", "trial", "seed", "f_size", "fs_size", "fl_size",
                 "d_s", "d_l", "dprime_s", "dprime_l", "time_ms", "status"]


def cmd_bench(args) -> int:
    try:
        sizes = [int(t) for t in args.n_list.split(",") if t]
    except ValueError:
        raise CliError(f"bad n-list {args.n_list!r}") from None
    print(",".join(BENCH_COLUMNS))
    for n in sizes:
        per_size: list[dict] = []
        for trial in range(args.trials):
            spec = GenSpec(model=args.model, n=n, p=args.p, ring_degree=args.ring_degree,
                           d=args.d, direct_fraction=args.direct_fraction,
                           seed=args.seed + trial)
            try:
                row = bench_one(spec)
            except Exception as exc:  # per-trial failures must not stop the campaign
                row = {"n": n, "seed": spec.seed, "status": f"error:{type(exc).__name__}"}
            row["trial"] = trial
            per_size.append(row)
            print(",".join(str(row.get(c, "")) for c in BENCH_COLUMNS))
        numeric = [r for r in per_size if r.get("status") == "ok"]
        if numeric:
            med = {c: statistics.median(r[c] for r in numeric)
                   for c in ("f_size", "fs_size", "fl_size", "d_s", "d_l", "time_ms")}
            med.update({"n": n, "trial": "median", "seed": "", "status": "ok",
                        "dprime_s": max(r["dprime_s"] for r in numeric),
                        "dprime_l": max(r["dprime_l"] for r in numeric)})
            print(",".join(str(med.get(c, "")) for c in BENCH_COLUMNS))
    return EXIT_OK


def _emit_error(args, kind: str, message: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="robsen", description=__doc__)
    ap.add_argument("--json", action="store_true", help="machine-readable errors on stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="test feasibility of a sensor set")
    p.add_argument("file")
    p.add_argument("--sensors", required=True, help="comma-separated vertex list")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("decompose", help="print a minimum path-and-cycle decomposition")
    p.add_argument("file")
    p.add_argument("--compact", action="store_true")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("place", help="print a minimal feasible sensor placement")
    p.add_argument("file")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_place)

    for name, fn in (("robust-sensor", cmd_robust_sensor), ("robust-link", cmd_robust_link)):
        p = sub.add_parser(name, help=f"{name} placement with run report")
        p.add_argument("file")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--exact", action="store_true")
        g.add_argument("--greedy", action="store_true")
        p.add_argument("--seed-tips", help="comma-separated seed solution to extend")
        p.add_argument("--compact", action="store_true")
        p.add_argument("--paper-example", action="store_true",
                       help="mark the report as a checked-in worked example")
        if name == "robust-link":
            p.add_argument("--undirected", action="store_true")
        p.set_defaults(fn=fn)

    p = sub.add_parser("gadget", help="emit a hardness-reduction digraph")
    p.add_argument("kind", choices=["sensor", "link"])
    p.add_argument("--cover", required=True, help='JSON file {"p": int, "sets": [[..], ..]}')
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gadget)

    p = sub.add_parser("gen", help="generate a seeded random digraph")
    p.add_argument("--model", required=True, choices=["er", "small-world", "scale-free"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--ring-degree", type=int, default=4)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--direct-fraction", type=float, default=0.10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", help="scaling campaign, CSV on stdout")
    p.add_argument("--model", default="scale-free", choices=["er", "small-world", "scale-free"])
    p.add_argument("--n-list", default="50,100,200,300")
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--ring-degree", type=int, default=4)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--direct-fraction", type=float, default=0.10)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CliError as exc:
        _emit_error(args, "usage", str(exc))
        return EXIT_USAGE
    except DigraphError as exc:
        _emit_error(args, "input", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
