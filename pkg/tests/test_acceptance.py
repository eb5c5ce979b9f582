"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest  # noqa: E402

from _corpus import ACCEPTANCE_LINES, copath_formula, corpus, naive_dom, showcase_graph  # noqa: E402
from maxbisize.decomposition import (  # noqa: E402
    Kind,
    bimodularwidth,
    build_canonical_tree,
    build_lozin_tree,
    canonical_bimodules,
    maximal_canonical_bimodules,
)
from maxbisize.engine import MaxbisizeSet, dom, oplus, reduce_objective, shift_b, shift_w, solve_tree  # noqa: E402
from maxbisize.generators import gen_base  # noqa: E402
from maxbisize.graph import induced_subgraph  # noqa: E402
from maxbisize.oracle import oracle_bimodules, oracle_maxbisizes, oracle_solve  # noqa: E402
from maxbisize.witness import reconstruct, verify_witness  # noqa: E402


def report(n: int, ok: bool, what: str, detail: str = "") -> None:
    """Record the verdict line (printed in the terminal summary) and fail if red."""
    line = f"AC{n:<2} {'PASS' if ok else 'FAIL'}  {what}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append((n, line))
    assert ok, line


def _formula_bw(b: int, w: int, half: int) -> list:
    cand = {(b, 0), (0, w)} | {(x, half - x) for x in range(half + 1) if x <= b and half - x <= w}
    return naive_dom(cand)


# 1 -----------------------------------------------------------------------------------

def test_ac1_oracle_equivalence():
    t0 = time.perf_counter()
    checked = {"lozin": 0, "canonical": 0}
    mismatches = []
    for kind in checked:
        for seed, g in corpus(kind, 1000, n_max=16, seed0=10_000 if kind == "lozin" else 50_000):
            want = oracle_maxbisizes(g).sizes
            builders = (build_lozin_tree, build_canonical_tree) if kind == "lozin" else (build_canonical_tree,)
            for build in builders:
                if solve_tree(g, build(g)).sizes != want:
                    mismatches.append((kind, seed, build.__name__))
            checked[kind] += 1
    secs = time.perf_counter() - t0
    ok = not mismatches and min(checked.values()) >= 1000 and secs < 300
    report(1, ok, "engine == brute force on generated instances, n <= 16",
           f"lozin={checked['lozin']} canonical={checked['canonical']} mismatches={len(mismatches)} {secs:.1f}s")


# 2 -----------------------------------------------------------------------------------

def test_ac2_paths_and_cycles():
    bad = []
    count = 0
    for b in range(3, 51):
        for w in range(3, 51):
            graphs = []
            if b == w:
                graphs += [gen_base("path", 2 * b), gen_base("cycle", 2 * b)]
            elif b == w + 1:
                graphs.append(gen_base("path", b + w))
            elif w == b + 1:
                graphs.append(gen_base("path", b + w).swap_colors())
            for g in graphs:
                got = solve_tree(g, build_lozin_tree(g)).sizes
                count += 1
                if got != sorted([(1, 2), (2, 1), (b, 0), (0, w)]):
                    bad.append((b, w, got))
    report(2, not bad, "paths and cycles, 3 <= b,w <= 50: {(1,2),(2,1),(b,0),(0,w)}",
           f"{count} graphs, {len(bad)} mismatches")


# 3 -----------------------------------------------------------------------------------

def test_ac3_copaths():
    bad = []
    for n in range(7, 41):
        g = gen_base("copath", n)
        got = solve_tree(g, build_lozin_tree(g)).sizes
        if got != copath_formula(n):
            bad.append((n, "formula"))
        if n <= 20 and got != oracle_maxbisizes(g).sizes:
            bad.append((n, "oracle"))
    report(3, not bad, "co-paths n=7..40 match the closed form; n<=20 match brute force", f"failures={bad}")


# 4 -----------------------------------------------------------------------------------

def test_ac4_cocycles():
    bad = []
    for n in range(8, 41, 2):
        g = gen_base("cocycle", n)
        got = solve_tree(g, build_lozin_tree(g)).sizes
        k = n // 2
        via_children = naive_dom(_formula_bw(k, k - 1, k - 1) + _formula_bw(k - 1, k, k - 1))
        if got != via_children:
            bad.append((n, "children"))
        if n <= 20 and got != oracle_maxbisizes(g).sizes:
            bad.append((n, "oracle"))
    g = gen_base("cocycle", 10)
    spot = solve_tree(g, build_lozin_tree(g)).sizes
    if spot != sorted([(5, 0), (3, 1), (2, 2), (1, 3), (0, 5)]):
        bad.append((10, "spot"))
    report(4, not bad, "co-cycles n=8..40 even; n<=20 match brute force; co-C10 spot value",
           f"failures={bad}")


# 5 -----------------------------------------------------------------------------------

def test_ac5_showcase_instance():
    g = showcase_graph()
    t = build_canonical_tree(g)
    d = solve_tree(g, t)
    nontrivial = canonical_bimodules(t)
    root_classes = [c for c in maximal_canonical_bimodules(g) if len(c) > 1]
    ok = (1, 5) in d and d.sizes == oracle_maxbisizes(g).sizes and len(nontrivial) == 3 and len(root_classes) == 2
    report(5, ok, "13-vertex instance: (1,5) present, set == brute force, 3 nontrivial canonical bimodules",
           f"D={d.sizes} canonical={len(nontrivial)} (root classes {len(root_classes)} + V)")


# 6 -----------------------------------------------------------------------------------

def test_ac6_witness_soundness():
    triples = failures = 0
    instances = corpus("lozin", 250, seed0=90_000) + corpus("canonical", 250, seed0=95_000)
    for k, (_, g) in enumerate(instances):
        build = build_lozin_tree if k < 250 else build_canonical_tree
        d = solve_tree(g, build(g))
        for e in d:
            triples += 1
            failures += not verify_witness(g, e, reconstruct(g, d, e))
    report(6, failures == 0 and len(instances) >= 500, "every element of 500 instances reconstructs to a biclique",
           f"{len(instances)} instances, {triples} triples, {failures} failures")


# 7 -----------------------------------------------------------------------------------

def test_ac7_bimodule_machinery():
    graphs = [g for _, g in corpus("lozin", 1000, seed0=10_000) + corpus("canonical", 1000, seed0=50_000)
              if g.n <= 14]
    compared = mismatches = 0
    for g in graphs:
        for node in build_canonical_tree(g).nodes():
            if node.kind != Kind.PRIME:
                continue
            h, mapping = induced_subgraph(g, node.vertices)
            want = sorted(sorted(mapping[v] for v in c) for c in oracle_bimodules(h).canonical_partition)
            got = sorted(sorted(mapping[v] for v in c) for c in maximal_canonical_bimodules(h))
            compared += 1
            mismatches += got != want
    p7 = gen_base("path", 7)
    t = build_canonical_tree(p7)
    p7_ok = t.root.kind == Kind.PRIME and len(t.root.children) == 7 and bimodularwidth(t) == 7
    report(7, mismatches == 0 and compared > 0 and p7_ok,
           "canonical partition == brute force at every prime node (n<=14); P7 arity 7, width 7",
           f"{compared} prime nodes, {mismatches} mismatches")


# 8 -----------------------------------------------------------------------------------

def test_ac8_objectives():
    d = [(4, 0), (2, 1), (1, 2), (0, 3)]
    objectives = ("vertex", "edge", "balanced", "nontrivial-vertex")
    want = (4, 2, 1, 3)
    got = tuple(reduce_objective(d, o)[0] for o in objectives)
    cross = []
    for g in (gen_base("path", 7), gen_base("copath", 7)):
        assert oracle_maxbisizes(g).sizes == sorted(d)
        cross.append(tuple(oracle_solve(g, o) for o in objectives))
    ok = got == want and all(c == want for c in cross)
    report(8, ok, "objective reductions on {(4,0),(2,1),(1,2),(0,3)}", f"got={got} oracle P7/coP7={cross}")


# 9 -----------------------------------------------------------------------------------

def test_ac9_dp_scaling():
    from maxbisize.cli import bench_rows

    t0 = time.perf_counter()
    rows = list(bench_rows("spks", [2**10, 2**11, 2**12, 2**13], repeats=3))
    total = time.perf_counter() - t0
    dp = [r[4] for r in rows]
    ratios = [b / a for a, b in zip(dp, dp[1:])]
    ok = all(r <= 5 for r in ratios) and total < 60
    report(9, ok, "DP time grows <= 5x per doubling, n=2^10..2^13, bench < 60s",
           "dp_ms=" + ",".join(f"{x:.1f}" for x in dp) + " ratios=" + ",".join(f"{r:.2f}" for r in ratios)
           + f" total={total:.1f}s")


# 10 ----------------------------------------------------------------------------------

def _rand_antichain(rng):
    return MaxbisizeSet(naive_dom((rng.randint(0, 10), rng.randint(0, 10)) for _ in range(rng.randint(1, 6))))


def test_ac10_operator_algebra():
    rng = random.Random(7)
    trials = 10_000
    failures = 0
    for _ in range(trials):
        x, y, z = (_rand_antichain(rng) for _ in range(3))
        a, c = rng.randint(0, 5), rng.randint(0, 5)
        checks = (
            dom(dom(x.sizes).sizes).sizes == dom(x.sizes).sizes,
            dom(dom(x.sizes + y.sizes).sizes + z.sizes).sizes == dom(x.sizes + y.sizes + z.sizes).sizes,
            oplus(x, y).sizes == oplus(y, x).sizes,
            oplus(oplus(x, y), z).sizes == oplus(x, oplus(y, z)).sizes,
            shift_w(shift_w(x, a), c).sizes == shift_w(x, a + c).sizes,
            shift_b(shift_b(x, a), c).sizes == shift_b(x, a + c).sizes,
            shift_w(oplus(x, y), a).sizes == oplus(shift_w(x, a), y).sizes,
            shift_b(oplus(x, y), a).sizes == oplus(x, shift_b(y, a)).sizes,
        )
        failures += not all(checks)
    report(10, failures == 0, "dom idempotence/absorption, oplus commutative/associative, shift linearity",
           f"{trials} random triples, {failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
