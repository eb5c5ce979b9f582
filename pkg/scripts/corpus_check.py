"""Generate a random corpus and compare the DP against brute force.

    python3 scripts/corpus_check.py --count 200 --out corpus/
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from maxbisize.decomposition import build_canonical_tree, build_lozin_tree, tree_to_dict
from maxbisize.engine import solve_tree
from maxbisize.errors import TwinsProduced
from maxbisize.generators import gen_random
from maxbisize.graph import format_graph
from maxbisize.oracle import oracle_maxbisizes
from maxbisize.witness import reconstruct, verify_witness


@dataclass
class CorpusConfig:
    count: int = 200  # per kind
    n_max: int = 16
    max_width: int = 12
    seed0: int = 0
    out: Path | None = None


def check(cfg: CorpusConfig) -> int:
    bad = 0
    t0 = time.perf_counter()
    for kind in ("lozin", "canonical"):
        build = build_lozin_tree if kind == "lozin" else build_canonical_tree
        done = 0
        seed = cfg.seed0
        while done < cfg.count:
            n = 4 + seed % (cfg.n_max - 3)
            try:
                g, intended, spec = gen_random(n, kind, cfg.max_width, seed)
            except TwinsProduced:
                seed += 1
                continue
            d = solve_tree(g, build(g))
            ok = d.sizes == oracle_maxbisizes(g).sizes
            ok &= all(verify_witness(g, e, reconstruct(g, d, e)) for e in d)
            if not ok:
                bad += 1
                print(f"MISMATCH kind={kind} seed={seed}", file=sys.stderr)
            if cfg.out is not None:
                cfg.out.mkdir(parents=True, exist_ok=True)
                stem = cfg.out / f"{kind}_{seed:05d}"
                stem.with_suffix(".txt").write_text(format_graph(g, f"{kind} seed={seed}"))
                meta = {"kind": kind, "seed": seed, "spec": spec.to_dict(), "tree": tree_to_dict(intended),
                        "maxbisizes": [list(e) for e in d]}
                stem.with_suffix(".json").write_text(json.dumps(meta))
            done += 1
            seed += 1
    print(f"{2 * cfg.count} instances, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=CorpusConfig.count)
    p.add_argument("--n-max", type=int, default=CorpusConfig.n_max)
    p.add_argument("--max-width", type=int, default=CorpusConfig.max_width)
    p.add_argument("--seed0", type=int, default=CorpusConfig.seed0)
    p.add_argument("--out", type=Path, default=None)
    a = p.parse_args()
    return check(CorpusConfig(a.count, a.n_max, a.max_width, a.seed0, a.out))


if __name__ == "__main__":
    sys.exit(main())
