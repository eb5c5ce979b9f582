"""Command-line front end."""
from __future__ import annotations

import argparse
import csv
import gc
import json
import sys
import time
from pathlib import Path

from .decomposition import (
    bimodularwidth,
    build_canonical_tree,
    build_lozin_tree,
    tree_to_dot,
    tree_to_json,
)
from .engine import MaxbisizeSet, Objective, reduce_objective, solve_tree
from .errors import BicliqueError, NoNontrivialBiclique, NotInClass, ParseError, TwinsPresent, WidthExceeded
from .graph import BipartiteGraph, find_induced_star123, find_twins, format_graph, parse_graph
from .witness import Witness, reconstruct, trim, verify_witness

EXIT_CODES = {NotInClass: 2, TwinsPresent: 3, ParseError: 4, WidthExceeded: 5}

_OBJECTIVE_KEYS = {
    Objective.VERTEX_MAX: "vertex_max",
    Objective.EDGE_MAX: "edge_max",
    Objective.BALANCED: "balanced",
    Objective.NONTRIVIAL_VERTEX_MAX: "nontrivial_vertex_max",
}

# brute-force star123 search is cubic-ish in the degree; only run it on small inputs
_STAR_CROSSCHECK_N = 64


def _read_graph(path: str) -> BipartiteGraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text)


def _builder(name: str):
    return build_lozin_tree if name == "lozin" else build_canonical_tree


def objective_values(d: MaxbisizeSet) -> dict:
    out = {}
    for obj, key in _OBJECTIVE_KEYS.items():
        try:
            out[key] = reduce_objective(d, obj)[0]
        except NoNontrivialBiclique:
            out[key] = None
    return out


def objective_witness(g: BipartiteGraph, d: MaxbisizeSet, objective: Objective) -> Witness:
    value, elem = reduce_objective(d, objective)
    w = reconstruct(g, d, elem)
    if objective == Objective.BALANCED:
        w = trim(w, value, value)
        elem = (value, value)
    if not verify_witness(g, elem, w):
        raise AssertionError(f"witness for {elem} failed verification")
    return w


def result_dict(g: BipartiteGraph, d: MaxbisizeSet, witness: Witness | None = None) -> dict:
    out = {"maxbisizes": [list(e) for e in d], "objectives": objective_values(d)}
    if witness is not None:
        out["witness"] = {"blacks": [i + 1 for i in witness.blacks], "whites": [j + 1 for j in witness.whites]}
    return out


def _emit_result(args, g, d):
    objective = Objective.VERTEX_MAX if args.objective == "all" else Objective(args.objective)
    witness = None
    if args.witness:
        try:
            witness = objective_witness(g, d, objective)
        except NoNontrivialBiclique:
            witness = None
    if args.json:
        print(json.dumps(result_dict(g, d, witness)))
        return
    print("maxbisizes: " + " ".join(f"({b},{w})" for b, w in d))
    values = objective_values(d)
    keys = _OBJECTIVE_KEYS.values() if args.objective == "all" else [_OBJECTIVE_KEYS[objective]]
    for key in keys:
        v = values[key]
        print(f"{key}: {'none' if v is None else v}")
    if witness is not None:
        print("witness blacks: " + " ".join(f"b{i + 1}" for i in witness.blacks))
        print("witness whites: " + " ".join(f"w{j + 1}" for j in witness.whites))


def cmd_solve(args) -> int:
    g = _read_graph(args.file)
    if g.n == 0:
        d = MaxbisizeSet([(0, 0)])
    else:
        d = solve_tree(g, _builder(args.tree)(g), args.max_quotient)
    _emit_result(args, g, d)
    return 0


def cmd_oracle(args) -> int:
    from .oracle import oracle_maxbisizes

    g = _read_graph(args.file)
    _emit_result(args, g, oracle_maxbisizes(g))
    return 0


def cmd_decompose(args) -> int:
    g = _read_graph(args.file)
    t = _builder(args.tree)(g)
    print(tree_to_dot(t, g) if args.format == "dot" else tree_to_json(t, g), end="\n" if args.format == "json" else "")
    return 0


def cmd_check(args) -> int:
    g = _read_graph(args.file)
    want_all = not (args.twin_free or args.star123_free or args.bimodularwidth)
    twins = find_twins(g)
    if want_all or args.twin_free:
        print(f"twin-free: {'yes' if not twins else 'no'}")
    if want_all or args.star123_free:
        if twins:
            verdict = "unknown (twins present)"
        else:
            try:
                build_lozin_tree(g)
                verdict = "yes"
            except NotInClass:
                verdict = "no"
        print(f"star123-free: {verdict}")
        if g.n <= _STAR_CROSSCHECK_N:
            print(f"star123-free (brute force): {'yes' if find_induced_star123(g) is None else 'no'}")
    if want_all or args.bimodularwidth:
        if twins:
            print("bimodularwidth: undefined (twins present)")
        else:
            print(f"bimodularwidth: {bimodularwidth(build_canonical_tree(g))}")
    return 0


def cmd_gen(args) -> int:
    from .generators import gen_base, gen_random

    if args.kind == "base":
        g = gen_base(args.shape, args.n)
        meta = {"kind": "base", "shape": args.shape, "n": args.n}
    else:
        g, t, spec = gen_random(args.n, args.kind, args.max_width, args.seed)
        from .decomposition import tree_to_dict

        meta = {"kind": args.kind, "seed": args.seed, "spec": spec.to_dict(), "tree": tree_to_dict(t)}
    tag = args.shape if args.kind == "base" else f"seed={args.seed}"
    text = format_graph(g, comment=f"generated {args.kind} {tag} n={g.n}")
    if args.out is None:
        print(text, end="")
        return 0
    out = Path(args.out)
    out.with_suffix(".txt").write_text(text)
    out.with_suffix(".json").write_text(json.dumps(meta, indent=1))
    print(out.with_suffix(".txt"))
    return 0


def bench_rows(family: str, sizes, seed: int = 0, repeats: int = 3):
    """Yield ``(family, n, m, build_ms, dp_ms, |D|)`` per size."""
    from .generators import gen_base, gen_from_spec, spks_spec

    for n in sizes:
        if family == "spks":
            g, _ = gen_from_spec(spks_spec(n))
        elif family == "copath":
            g = gen_base("copath", n)
        else:
            raise ValueError(f"unknown family {family!r}")
        t0 = time.perf_counter()
        t = build_lozin_tree(g)
        build_ms = (time.perf_counter() - t0) * 1e3
        best = float("inf")
        gc.collect()
        was_enabled = gc.isenabled()
        gc.disable()  # as timeit does: collector pauses dominate small runs
        try:
            for _ in range(repeats):
                t0 = time.perf_counter()
                d = solve_tree(g, t)
                best = min(best, time.perf_counter() - t0)
        finally:
            if was_enabled:
                gc.enable()
        yield family, g.n, g.m, round(build_ms, 3), round(best * 1e3, 3), len(d)


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    fh = sys.stdout if args.csv in (None, "-") else open(args.csv, "w", newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(["family", "n", "m", "build_ms", "dp_ms", "|D|"])
        for row in bench_rows(args.family, sizes, args.seed, args.repeats):
            writer.writerow(row)
            fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxbisize", description="Maximum bicliques of twin-free bipartite graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    objectives = ["all"] + [o.value for o in Objective]
    for name, fn in (("solve", cmd_solve), ("oracle", cmd_oracle)):
        s = sub.add_parser(name, help=f"{name} a graph file ('-' for stdin)")
        s.add_argument("file")
        if name == "solve":
            s.add_argument("--tree", choices=["lozin", "canonical"], default="canonical")
            s.add_argument("--max-quotient", type=int, default=24)
        s.add_argument("--objective", choices=objectives, default="all")
        s.add_argument("--witness", action="store_true")
        s.add_argument("--json", action="store_true")
        s.set_defaults(func=fn)

    s = sub.add_parser("decompose", help="print a decomposition tree")
    s.add_argument("file")
    s.add_argument("--tree", choices=["lozin", "canonical"], default="canonical")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("check", help="structural predicates")
    s.add_argument("file")
    s.add_argument("--twin-free", action="store_true")
    s.add_argument("--star123-free", action="store_true")
    s.add_argument("--bimodularwidth", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("gen", help="generate a graph")
    s.add_argument("--kind", choices=["base", "lozin", "canonical"], default="lozin")
    s.add_argument("--shape", choices=["path", "cycle", "copath", "cocycle"], default="path")
    s.add_argument("--n", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-width", type=int, default=7)
    s.add_argument("--out", help="path prefix; writes PREFIX.txt and PREFIX.json")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="time tree construction and the DP")
    s.add_argument("--family", choices=["spks", "copath"], default="spks")
    s.add_argument("--sizes", default="1024,2048,4096,8192")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--csv", help="output path, '-' for stdout (default)")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BicliqueError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        for cls, code in EXIT_CODES.items():
            if isinstance(e, cls):
                return code
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
