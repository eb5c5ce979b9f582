"""Brute-force ground truth.

Nothing here uses the decomposition machinery: maxbisizes come from subset
enumeration over the smaller color class, bimodules from testing every
vertex subset against the definition.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .engine import Derivation, MaxbisizeSet, Rule, dom_candidates, reduce_objective
from .errors import SizeLimit
from .graph import BLACK, WHITE, BipartiteGraph, iter_bits

MAX_SIDE = 20
MAX_BIMODULE_N = 14


def oracle_within(g: BipartiteGraph, bm: int, wm: int, max_side: int = MAX_SIDE) -> MaxbisizeSet:
    """Maxbisize set of the subgraph induced by the masks ``(bm, wm)``.

    For every subset S of the smaller side, S together with all of its common
    neighbours is a biclique, and every biclique has this form up to shrinking
    the other side, so the best common-neighbourhood size per |S| suffices.
    """
    nb, nw = bm.bit_count(), wm.bit_count()
    swap = nw < nb
    small, big = (wm, bm) if swap else (bm, wm)
    adj = g.white_adj if swap else g.black_adj
    idx = list(iter_bits(small))
    if len(idx) > max_side:
        raise SizeLimit(f"smaller side has {len(idx)} vertices, limit {max_side}")
    k = len(idx)
    rows = [adj[i] & big for i in idx]
    best = [-1] * (k + 1)
    arg = [None] * (k + 1)
    common = [big] + [0] * ((1 << k) - 1)
    for s in range(1 << k):
        if s:
            low = s & -s
            common[s] = common[s ^ low] & rows[low.bit_length() - 1]
        size = s.bit_count()
        c = common[s].bit_count()
        if c > best[size]:
            best[size] = c
            arg[size] = s
    cands = []
    for size in range(k + 1):
        s = arg[size]
        chosen = 0
        for pos in iter_bits(s):
            chosen |= 1 << idx[pos]
        side_mask = common[s]
        if swap:
            cands.append(((best[size], size), Derivation(Rule.ORACLE, add=(side_mask, chosen))))
        else:
            cands.append(((size, best[size]), Derivation(Rule.ORACLE, add=(chosen, side_mask))))
    return dom_candidates(cands, (nb, nw), bm, wm)


def oracle_maxbisizes(g: BipartiteGraph, max_side: int = MAX_SIDE) -> MaxbisizeSet:
    return oracle_within(g, g.all_blacks, g.all_whites, max_side)


def oracle_solve(g: BipartiteGraph, objective):
    return reduce_objective(oracle_maxbisizes(g), objective)[0]


# --- bimodules -----------------------------------------------------------------------

@dataclass(frozen=True)
class BimoduleFamily:
    """All bimodules of a graph with the derived canonical partition."""

    bimodules: list  # frozensets of vertices, including the empty set and V
    maximal_nontrivial: list
    augmenting: frozenset
    canonical_partition: list


def _nbrs(g: BipartiteGraph, v) -> set:
    color, i = v
    if color == BLACK:
        return {(WHITE, j) for j in range(g.nW) if g.has_edge(i, j)}
    return {(BLACK, b) for b in range(g.nB) if g.has_edge(b, i)}


def _is_bimodule(m: frozenset, vertices, nbrs) -> bool:
    for v in vertices:
        if v in m:
            continue
        opposite = {u for u in m if u[0] != v[0]}
        hit = nbrs[v] & opposite
        if hit and hit != opposite:
            return False
    return True


def _trivial(s) -> bool:
    return sum(v[0] == BLACK for v in s) <= 1 and sum(v[0] == WHITE for v in s) <= 1


def oracle_bimodules(g: BipartiteGraph, max_n: int = MAX_BIMODULE_N) -> BimoduleFamily:
    if g.n > max_n:
        raise SizeLimit(f"{g.n} vertices, limit {max_n}")
    vertices = g.vertices()
    nbrs = {v: _nbrs(g, v) for v in vertices}
    everything = frozenset(vertices)
    found = [
        frozenset(s)
        for r in range(len(vertices) + 1)
        for s in combinations(vertices, r)
        if _is_bimodule(frozenset(s), vertices, nbrs)
    ]
    proper = [m for m in found if m != everything and not _trivial(m)]
    maximal = [m for m in proper if not any(m < o for o in proper)]
    counts = {}
    for m in maximal:
        for v in m:
            counts[v] = counts.get(v, 0) + 1
    augmenting = frozenset(v for v, c in counts.items() if c >= 2)
    classes = []
    for m in maximal:
        rest = m - augmenting
        if not _trivial(rest) and _is_bimodule(rest, vertices, nbrs):
            classes.append(rest)
    covered = set().union(*classes) if classes else set()
    classes += [frozenset([v]) for v in vertices if v not in covered]
    classes.sort(key=min)
    maximal.sort(key=lambda m: sorted(m))
    return BimoduleFamily(found, maximal, augmenting, classes)
