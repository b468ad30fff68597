"""Command-line interface.

Verbs: detect, attack, oracle, separator, reduce, bench.  Every run builds a
RunReport (schema-versioned, with a digest of the input files and the seed);
``--json`` prints it as JSON, otherwise a short text summary is printed.

Exit codes: 0 success, 2 usage, 3 parse or file errors, 4 capacity.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import adversary, detection, oracle, reductions, separators
from .exceptions import CapacityError, ParseError, UsageError
from .graph import generate, read_graph, write_graph
from .scenario import read_scenario, truthful_fill, write_scenario

SCHEMA = "corruption-game/run-report"
SCHEMA_VERSION = 1
DEFAULT_SEED = 20240611

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAPACITY = 0, 2, 3, 4


def _digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()


def _nodes(s) -> list[int]:
    return sorted(int(x) for x in s)


def _load_input(path):
    """Graph file, or a scenario file (JSON) with its reports and budget."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        s = read_scenario(path)
        return s.graph, s.reports, s.budget
    g = read_graph(path)
    return g, truthful_fill(g, ()), None


# -- verbs ------------------------------------------------------------------

def cmd_detect(args) -> dict:
    graph, reports, budget = _load_input(args.input)
    if args.budget is not None:
        budget = args.budget
    rng = np.random.default_rng(args.seed) if args.random_order else None
    mode = args.mode or ("directed" if graph.directed else "one")
    if mode == "directed":
        out = detection.detect_one_directed(graph, reports, budget, rng)
    elif mode == "many":
        out = detection.detect_many(graph, reports, args.g or 1, budget, rng)
    else:
        out = detection.detect_one_undirected(graph, reports, budget, rng)
    return {
        "mode": mode,
        "declared_good": _nodes(out.declared_good),
        "rounds_removed": out.rounds_removed,
        "removed_pairs": [list(p) for p in out.removed_pairs],
        "strengths": list(out.strengths),
        "budget": budget,
        "certified": out.certified if budget is not None else None,
    }


def _separator_for(graph, args):
    strategy = args.strategy
    cap = args.cap or separators.DEFAULT_EXACT_CAP
    if strategy == "directed":
        if args.k is not None:
            return separators.exact_reach_separator(graph, args.k, cap)
        return separators.min_sum_directed(graph, cap)
    if strategy == "gremainder":
        if args.g is None:
            raise UsageError("the gremainder strategy needs --g")
        if args.k is not None:
            return separators.exact_g_remainder(graph, args.k, args.g, cap)
        return separators.min_sum_g(graph, args.g, cap)
    if args.k is not None:
        if args.heuristic:
            return separators.heuristic_separator(graph, args.k, seed=args.seed)
        return separators.exact_separator(graph, args.k, cap)
    if args.heuristic or graph.n > cap:
        return separators.approx_min_sum(graph, seed=args.seed, threads=args.threads)
    return separators.min_sum(graph, cap)


def cmd_attack(args) -> dict:
    graph = read_graph(args.graph)
    s = args.strategy
    if s == "approx":
        plan = adversary.approx_attack(graph, seed=args.seed, threads=args.threads)
    elif s == "clique-append":
        if args.delta is None:
            raise UsageError("the clique-append strategy needs --delta")
        plan = adversary.clique_append_attack(graph, args.delta)
    else:
        sep = _separator_for(graph, args)
        if s == "directed":
            plan = adversary.directed_attack(graph, sep)
        elif s == "gremainder":
            plan = adversary.g_remainder_attack(graph, sep, args.g)
        else:
            plan = adversary.separator_attack(graph, sep)
    check_cap = 16
    exhaustive = plan.graph.n <= check_cap
    certified = plan.certify(cap=check_cap) if exhaustive else adversary.structural_certificate(plan)
    if args.out:
        write_scenario(plan.scenario(), args.out, target_g=plan.target_g, construction=plan.construction.value)
    return {
        "strategy": s,
        "construction": plan.construction.value,
        "bad": _nodes(plan.bad),
        "budget_used": plan.budget_used,
        "target_g": plan.target_g,
        "degenerate": plan.degenerate,
        "certified": certified,
        "certificate": "exhaustive" if exhaustive else "structural",
        "scenario_file": args.out,
    }


def cmd_oracle(args) -> dict:
    graph = read_graph(args.graph)
    g = args.g or 1
    cap = args.cap
    fam = oracle.critical_family(graph, g, cap)
    return {
        "quantity": "m(G)" if g == 1 else f"m(G,{g})",
        "directed": graph.directed,
        "value": fam.budget,
        "family": [_nodes(m) for m in fam.members],
    }


def _sep_dict(res) -> dict:
    return {
        "separator": _nodes(res.separator),
        "k": res.k,
        "g": res.g,
        "objective": res.objective,
        "component_profile": list(res.component_profile),
        "exact": res.exact,
    }


def cmd_separator(args) -> dict:
    graph = read_graph(args.graph)
    cap = args.cap or separators.DEFAULT_EXACT_CAP
    g = args.g or 1
    method = args.method
    if graph.directed:
        if method != "exact" or g != 1:
            raise UsageError("directed graphs support only exact reachability separators")
        res = separators.exact_reach_separator(graph, args.k, cap) if args.k else separators.min_sum_directed(graph, cap)
        return {"method": "exact", "result": _sep_dict(res)}
    if args.k is None:
        if method == "heuristic":
            if g != 1:
                raise UsageError("the heuristic handles g = 1 only")
            return {"method": method, "result": _sep_dict(separators.approx_min_sum(graph, seed=args.seed, threads=args.threads))}
        exact = separators.min_sum(graph, cap) if g == 1 else separators.min_sum_g(graph, g, cap)
        out = {"method": method, "result": _sep_dict(exact)}
        if method == "compare":
            heur = separators.approx_min_sum(graph, seed=args.seed, threads=args.threads)
            out["heuristic"] = _sep_dict(heur)
            out["difference"] = heur.objective - exact.objective
        return out
    if method == "heuristic":
        return {"method": method, "result": _sep_dict(separators.heuristic_separator(graph, args.k, seed=args.seed))}
    if g == 1:
        exact = separators.exact_separator(graph, args.k, cap)
    else:
        exact = separators.exact_g_remainder(graph, args.k, g, cap)
    out = {"method": method, "result": _sep_dict(exact)}
    if method == "compare":
        heur = separators.heuristic_separator(graph, args.k, seed=args.seed)
        out["heuristic"] = _sep_dict(heur)
        out["difference"] = len(heur.separator) - len(exact.separator)
    return out


def cmd_reduce(args) -> dict:
    graph = read_graph(args.graph)
    out = {"gadget": args.gadget}
    if args.gadget == "sse-aux":
        aux = reductions.sse_auxiliary(graph)
        result, meta = aux.graph, {"r": aux.r, "copies": graph.n * aux.r, "edge_nodes": graph.m}
    elif args.gadget == "clique-append":
        if args.delta is None:
            raise UsageError("clique-append needs --delta")
        h = reductions.clique_size(graph.number_of_nodes(), args.delta)
        result, meta = reductions.clique_append(graph, args.delta), {"h": h, "target_g": h + 1}
    else:
        if args.M is None or args.n is None:
            raise UsageError("np-gadget needs --M and --n")
        info = reductions.np_gadget(graph, args.M, args.n, args.c)
        result, meta = info.graph, info.metadata()
    meta.update(nodes=result.n, edges=result.m)
    out["metadata"] = meta
    if args.out:
        write_graph(result, args.out)
        sidecar = Path(str(args.out) + ".meta.json")
        sidecar.write_text(json.dumps(meta, indent=1) + "\n", encoding="utf-8")
        out["graph_file"] = str(args.out)
        out["metadata_file"] = str(sidecar)
    return out


def bench_detection(sizes, seed: int, repeats: int = 3, avg_degree: float = 4.0, bad_fraction: float = 0.01) -> dict:
    """Time detect_one_undirected on random graphs with ``m`` edges each.

    Reports come from a random corrupt set whose claims are all Bad, so the
    stripping phase has work to do.  Only the detector is timed.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for m in sizes:
        m = int(m)
        n = max(2, int(round(2 * m / avg_degree)))
        g = generate("erdos_renyi", seed=int(rng.integers(2**31)), n=n, m=min(m, n * (n - 1) // 2))
        bad = rng.choice(n, size=max(1, int(bad_fraction * n)), replace=False)
        reports = truthful_fill(g, bad.tolist())
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            detection.detect_one_undirected(g, reports)
            times.append(time.perf_counter() - t0)
        rows.append({"edges": g.m, "nodes": n, "seconds": min(times), "all_seconds": times})
    usable = [r for r in rows if r["edges"] > 0 and r["seconds"] > 0]
    exponent = None
    if len(usable) >= 2:
        x = np.log([r["edges"] for r in usable])
        y = np.log([r["seconds"] for r in usable])
        exponent = float(np.polyfit(x, y, 1)[0])
    return {"runs": rows, "exponent": exponent}


def cmd_bench(args) -> dict:
    sizes = [int(float(s)) for s in args.sizes.split(",") if s.strip()]
    if not sizes or min(sizes) < 0:
        raise UsageError("--sizes needs non-negative integers")
    return bench_detection(sizes, args.seed, args.repeats, args.avg_degree)


# -- plumbing ---------------------------------------------------------------

def _common(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="print the run report as JSON")
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for randomized steps")
    parser.add_argument("--threads", type=int, default=d(1), help="worker threads where supported")
    parser.add_argument("--cap", type=int, default=d(None), help="size cap for exact routines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corruption-game", description=__doc__.splitlines()[0])
    _common(parser, False)
    shared = argparse.ArgumentParser(add_help=False)
    _common(shared, True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[shared], help="run a detector on a graph or scenario file")
    p.add_argument("input")
    p.add_argument("--mode", choices=["one", "directed", "many"])
    p.add_argument("--g", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--random-order", action="store_true", help="strip bad pairs in seeded random order")
    p.set_defaults(func=cmd_detect, files=["input"])

    p = sub.add_parser("attack", parents=[shared], help="build a corrupt-party strategy")
    p.add_argument("graph")
    p.add_argument("--strategy", required=True, choices=["separator", "directed", "gremainder", "approx", "clique-append"])
    p.add_argument("--k", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--delta", type=str)
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--out", help="write the realized scenario here")
    p.set_defaults(func=cmd_attack, files=["graph"])

    p = sub.add_parser("oracle", parents=[shared], help="exact m(G) or m(G,g) with a witness family")
    p.add_argument("graph")
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_oracle, files=["graph"])

    p = sub.add_parser("separator", parents=[shared], help="exact or heuristic vertex separators")
    p.add_argument("graph")
    p.add_argument("--k", type=int, help="separator bound; omit to minimize |S| + k")
    p.add_argument("--sweep", action="store_true", help="minimize |S| + k (the default without --k)")
    p.add_argument("--g", type=int)
    p.add_argument("--method", choices=["exact", "heuristic", "compare"], default="exact")
    p.set_defaults(func=cmd_separator, files=["graph"])

    p = sub.add_parser("reduce", parents=[shared], help="build a reduction gadget")
    p.add_argument("graph")
    p.add_argument("--gadget", required=True, choices=["sse-aux", "clique-append", "np-gadget"])
    p.add_argument("--delta", type=str)
    p.add_argument("--M", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce, files=["graph"])

    p = sub.add_parser("bench", parents=[shared], help="time detection against edge count")
    p.add_argument("--sizes", default="10000,31623,100000,316228,1000000")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--avg-degree", type=float, default=4.0)
    p.set_defaults(func=cmd_bench, files=[])
    return parser


def _print_text(report: dict, stream) -> None:
    print(f"command: {' '.join(report['command'])}", file=stream)
    for key, value in report["outputs"].items():
        if isinstance(value, list) and len(value) > 20:
            value = f"[{len(value)} items]"
        print(f"{key}: {value}", file=stream)
    print(f"seconds: {report['seconds']:.4f}", file=stream)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "delta", None) is not None:
        try:
            args.delta = Fraction(args.delta)
        except (ValueError, ZeroDivisionError):
            print("error: --delta must be a number or fraction", file=sys.stderr)
            return EXIT_USAGE
    started = time.perf_counter()
    try:
        digest = _digest([getattr(args, f) for f in args.files])
        outputs = args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "command": ["corruption-game"] + argv,
        "input_digest": digest,
        "seed": args.seed,
        "threads": args.threads,
        "outputs": outputs,
        "seconds": time.perf_counter() - started,
    }
    if args.json:
        json.dump(report, sys.stdout, indent=1, default=str)
        sys.stdout.write("\n")
    else:
        _print_text(report, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
