"""``madcolor`` command line: generate, color, verify, experiment, witness.

Exit codes: 0 success, 2 checker violation, 3 precondition or contract
error, 4 divergence (round cap exceeded).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import (BoundViolationError, DivergenceError, MadcolorError, MalformedInputError)
from .generators import (FAMILIES, fisk, fisk_smallest, generate, h_graph, klein_grid,
                         random_lists, uniform_lists)
from .graph import Graph
from .io import format_coloring, format_edge_list, read_coloring, read_edge_list, read_lists
from .local import default_round_cap
from .oracles import (brute_chromatic, brute_list_colorable, check_list, mad_exact,
                      nash_williams_arboricity_bound)
from .sparse import brooks_list, color_nice, color_sparse, is_nice, preset_d
from .structures import DEFAULT_C, radius_for

EXIT_OK, EXIT_VIOLATION, EXIT_CONTRACT, EXIT_DIVERGENCE = 0, 2, 3, 4

PHASES = ("clique", "classify", "ruling_forest", "plus_one", "greedy", "ball_solve")

# stable column order of experiment records
COLUMNS = ("family", "params", "seed", "algorithm", "n", "m", "d", "c", "radius", "outcome",
           "iterations", "ratios", "rounds") + tuple(f"rounds_{p}" for p in PHASES) + (
           "violations", "verdict", "error")


# ----------------------------------------------------------------------------
# helpers


def parse_params(text):
    """``"w=4,h=5"`` or ``"4 5"`` / ``"4,5"`` into a dict or list of ints."""
    if text is None or not text.strip():
        return {}
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        if all("=" in p for p in parts):
            return {k: int(v) for k, v in (p.split("=", 1) for p in parts)}
        return [int(p) for p in parts]
    except ValueError:
        raise MalformedInputError(f"bad parameter string {text!r}") from None


def resolve_d(d, preset):
    if preset is not None:
        value = preset_d(preset)
        if d is not None and d != value:
            raise MalformedInputError(f"--d {d} contradicts preset {preset} (d={value})")
        return value
    return d


def nice_sizes(G: Graph) -> list:
    sizes = []
    for v in range(G.n):
        nb = G.adj[v]
        cl = all(G.has_edge(a, b) for i, a in enumerate(nb) for b in nb[i + 1:])
        sizes.append(G.degree(v) + (1 if G.degree(v) <= 2 or cl else 0))
    return sizes


def make_lists(G: Graph, spec, d, seed, algorithm="sparse"):
    """Lists from ``FILE``, ``random`` or ``uniform:k``."""
    spec = "random" if spec is None else spec
    if spec == "random":
        if algorithm == "nice":
            sizes = nice_sizes(G)
            return random_lists(G, max(sizes, default=1), seed, 3 * max(max(sizes, default=1), 1), sizes)
        if d is None:
            raise MalformedInputError("random lists need --d or --preset")
        return random_lists(G, d, seed)
    if spec.startswith("uniform:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise MalformedInputError(f"bad list spec {spec!r}") from None
        return uniform_lists(G.n, k)
    return read_lists(spec, G.n)


def run_coloring(G: Graph, algorithm, d, L, c_override=None, round_cap=None):
    """Run one algorithm, re-verify, and return ``(result, violations)``.

    Raises
    ------
    DivergenceError
        If the simulated rounds exceed ``round_cap``.
    """
    if algorithm == "sparse":
        res = color_sparse(G, d, L, c_override=c_override)
    elif algorithm == "nice":
        res = color_nice(G, L, c_override=c_override)
    elif algorithm == "brooks":
        res = brooks_list(G, d, L, c_override=c_override)
    else:
        raise MalformedInputError(f"unknown algorithm {algorithm!r}")
    cap = round_cap
    if cap is None:
        c = DEFAULT_C if c_override is None else c_override
        cap = default_round_cap(radius_for(G.n, c), d if d is not None else max(G.max_degree(), 1))
    if res.rounds > cap:
        raise DivergenceError(cap, [])
    violations = []
    if res.outcome == "coloring":
        violations = check_list(G, res.coloring, L)
        violations += [("uncolored", G.ids[v]) for v, x in enumerate(res.coloring) if x is None]
    elif res.outcome == "clique":
        K = sorted(res.clique)
        if len(K) != d + 1 or any(not G.has_edge(a, b) for i, a in enumerate(K) for b in K[i + 1:]):
            violations = [("bad clique", tuple(G.ids[x] for x in K))]
    return res, violations


def record_for(G, res, violations, **meta):
    phases = res.transcript.phases
    rec = {k: None for k in COLUMNS}
    rec.update(meta)
    rec.update({
        "n": G.n, "m": G.m, "d": res.d, "c": res.c, "radius": res.radius,
        "outcome": res.outcome, "iterations": res.trace.iterations,
        "ratios": [round(r, 6) for r in res.trace.ratios], "rounds": res.rounds,
        "violations": len(violations), "verdict": "pass" if not violations else "fail",
    })
    for p in PHASES:
        rec[f"rounds_{p}"] = phases.get(p, 0)
    return rec


def format_records(records, fmt):
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------------
# experiment runner


def run_experiment(config: dict) -> list:
    """One record per (instance, seed) of a family sweep, in config order.

    ``config`` keys: ``family``, ``params`` (list of parameter sets),
    ``seeds``, ``algorithm`` (default ``sparse``), ``d`` or ``preset``,
    ``lists`` (default ``random``), ``c_override``, ``round_cap``.
    Errors are captured in the record rather than raised.
    """
    family = config.get("family")
    algorithm = config.get("algorithm", "sparse")
    d = resolve_d(config.get("d"), config.get("preset"))
    records = []
    for params in config.get("params", []):
        for seed in config.get("seeds", [0]):
            meta = {"family": family, "params": json.dumps(params), "seed": seed,
                    "algorithm": algorithm}
            try:
                G = generate(family, params, seed)
                L = make_lists(G, config.get("lists"), d, seed, algorithm)
                res, viol = run_coloring(G, algorithm, d, L, config.get("c_override"),
                                         config.get("round_cap"))
                records.append(record_for(G, res, viol, **meta))
            except MadcolorError as exc:
                rec = {k: None for k in COLUMNS}
                rec.update(meta)
                rec.update({"d": d, "outcome": "error", "verdict": "fail",
                            "error": f"{type(exc).__name__}: {exc}"})
                records.append(rec)
    return records


# ----------------------------------------------------------------------------
# subcommands


def cmd_generate(args):
    G = generate(args.family, parse_params(args.params), args.seed)
    _emit(format_edge_list(G), args.out)
    return EXIT_OK


def cmd_color(args):
    G = read_edge_list(args.graph)
    d = resolve_d(args.d, args.preset)
    if args.algorithm != "nice" and d is None:
        raise MalformedInputError("color needs --d or --preset")
    L = make_lists(G, args.lists, d, args.seed, args.algorithm)
    res, viol = run_coloring(G, args.algorithm, d, L, args.c_override, args.round_cap)
    if res.outcome == "coloring" and args.out:
        Path(args.out).write_text(format_coloring(res.coloring))
    rec = record_for(G, res, viol, family=None, params=None, seed=args.seed,
                     algorithm=args.algorithm)
    if res.outcome == "clique":
        rec["clique"] = sorted(G.ids[x] for x in res.clique)
    if res.outcome == "infeasible":
        rec["infeasible_component"] = sorted(G.ids[x] for x in res.infeasible_component)
    if args.coloring_stdout and res.outcome == "coloring":
        sys.stdout.write(format_coloring(res.coloring))
    else:
        sys.stdout.write(format_records([rec], args.format))
    return EXIT_VIOLATION if viol else EXIT_OK


def cmd_verify(args):
    G = read_edge_list(args.graph)
    report = {"n": G.n, "m": G.m}
    bad = False
    if args.coloring:
        col = read_coloring(args.coloring, G.n)
        L = make_lists(G, args.lists, None, 0) if args.lists else [
            frozenset([c]) if c is not None else frozenset() for c in col]
        viol = check_list(G, col, L)
        report["violations"] = [[G.ids[x[0]], G.ids[x[1]]] if isinstance(x, tuple) else G.ids[x]
                                for x in viol]
        report["uncolored"] = [G.ids[v] for v, c in enumerate(col) if c is None]
        bad = bool(viol) or (args.require_full and bool(report["uncolored"]))
    elif args.lists:
        L = read_lists(args.lists, G.n)
        report["nice_violations"] = [G.ids[v] for v in is_nice(G, L)]
    for name in args.oracle or []:
        if name == "chromatic":
            report["chromatic"] = brute_chromatic(G)
        elif name == "mad":
            report["mad"] = str(mad_exact(G))
        elif name == "arboricity":
            report["arboricity_bound"] = nash_williams_arboricity_bound(G)
        elif name == "list-colorable":
            if not args.lists:
                raise MalformedInputError("the list-colorable oracle needs --lists")
            L = make_lists(G, args.lists, None, 0)
            report["list_colorable"] = brute_list_colorable(G, L) is not None
        elif name == "gallai":
            from .graph import is_gallai_tree
            report["gallai_tree"] = is_gallai_tree(G)
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_experiment(args):
    if args.config:
        config = json.loads(Path(args.config).read_text())
    else:
        params = [parse_params(p) for p in (args.sizes or [])]
        config = {"family": args.family, "params": params, "seeds": args.seeds or [args.seed],
                  "algorithm": args.algorithm, "d": args.d, "preset": args.preset,
                  "lists": args.lists, "c_override": args.c_override, "round_cap": args.round_cap}
    records = run_experiment(config)
    _emit(format_records(records, args.format), args.out)
    return EXIT_OK if all(r["verdict"] == "pass" for r in records) else EXIT_VIOLATION


def witness_report(family, params=None):
    """Build a witness graph and check its claim with brute-force oracles."""
    if family == "klein_grid":
        k, l = (params or [5, 7])[:2]
        G = klein_grid(k, l)
        chi = brute_chromatic(G)
        return {"family": family, "params": [k, l], "n": G.n, "m": G.m,
                "claim": "chromatic number 4", "chromatic": chi, "holds": chi == 4}
    if family == "fisk":
        m, G = (params[0], fisk(params[0])) if params else fisk_smallest()
        sol = brute_list_colorable(G, uniform_lists(G.n, 4))
        odd = [G.ids[v] for v in range(G.n) if G.degree(v) % 2]
        return {"family": family, "params": [m], "n": G.n, "m": G.m,
                "claim": "not 4-colorable", "odd_vertices": odd, "holds": sol is None}
    if family == "h_graph":
        ls = params or list(range(1, 11))
        rows = []
        for l in ls:
            G = h_graph(l)
            tri = any(G.adj_sets[u] & G.adj_sets[v] for u, v in G.edges())
            rows.append({"l": l, "n": G.n, "triangle_free": not tri})
        return {"family": family, "params": ls, "claim": "triangle-free", "instances": rows,
                "holds": all(r["triangle_free"] for r in rows)}
    raise MalformedInputError(f"no witness claim for family {family!r}")


def cmd_witness(args):
    params = parse_params(args.params) if args.params else None
    if isinstance(params, dict):
        params = list(params.values())
    rep = witness_report(args.family, params)
    sys.stdout.write(json.dumps(rep, indent=2) + "\n")
    return EXIT_OK if rep["holds"] else EXIT_VIOLATION


# ----------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--d", type=int, help="degree bound d")
    p.add_argument("--preset", help="planar, planar-triangle-free, planar-girth6, arboricity:a, genus:g")
    p.add_argument("--c-override", type=float, dest="c_override", help="replace the radius constant c")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lists", help="FILE, 'random' (default) or 'uniform:k'")
    p.add_argument("--algorithm", choices=("sparse", "nice", "brooks"), default="sparse")
    p.add_argument("--round-cap", type=int, dest="round_cap")
    p.add_argument("--format", choices=("csv", "json"), default="json")


def build_parser():
    ap = argparse.ArgumentParser(prog="madcolor", description="Distributed list-coloring of sparse graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated graph as an edge list")
    g.add_argument("--family", required=True, choices=sorted(FAMILIES))
    g.add_argument("--params", help="e.g. 'w=10,h=10' or '10 10'")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("color", help="color an edge-list graph from lists")
    c.add_argument("graph")
    _common(c)
    c.add_argument("--out", help="write the coloring ('v c' lines) here")
    c.add_argument("--print-coloring", action="store_true", dest="coloring_stdout",
                   help="print the coloring instead of the run record")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring or run oracles on a graph")
    v.add_argument("graph")
    v.add_argument("--coloring")
    v.add_argument("--lists")
    v.add_argument("--require-full", action="store_true", dest="require_full")
    v.add_argument("--oracle", action="append",
                   choices=("chromatic", "mad", "arboricity", "list-colorable", "gallai"))
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="run a family sweep and emit records")
    e.add_argument("--config", help="JSON config file (overrides the flags below)")
    e.add_argument("--family", choices=sorted(FAMILIES))
    e.add_argument("--sizes", nargs="*", help="parameter sets, e.g. '16 16' '32 32'")
    e.add_argument("--seeds", type=int, nargs="*")
    _common(e)
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment, format="csv")

    w = sub.add_parser("witness", help="build a witness graph and verify its claim")
    w.add_argument("--family", required=True, choices=("klein_grid", "fisk", "h_graph"))
    w.add_argument("--params")
    w.set_defaults(func=cmd_witness)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (MadcolorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
