"""Maxbisize sets and the dynamic program over decomposition trees.

A maxbisize set is the Pareto frontier of biclique sizes ``(b, w)``.  It is
kept as a list sorted by ``b`` ascending (hence ``w`` descending), and each
element carries a :class:`Derivation` naming the operand elements it was
built from plus the vertices it contributes directly.  Following
derivations down to the leaves and taking the union of contributed vertices
yields a biclique of that size (see :mod:`maxbisize.witness`).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .decomposition import DecompNode, DecompositionTree, Kind, Shape
from .errors import BoundViolated, NoNontrivialBiclique, PreconditionViolated, WidthExceeded
from .graph import BLACK, BipartiteGraph, from_masks, iter_bits, to_masks

# pair products above this size go through numpy
_VECTOR_THRESHOLD = 2048


class Rule(str, Enum):
    LEAF_BLACK = "leaf_black"
    LEAF_WHITE = "leaf_white"
    ALL_BLACK = "all_black"
    ALL_WHITE = "all_white"
    FROM_CHILD = "from_child"
    SUM = "sum"
    SHIFT_W = "shift_w"
    SHIFT_B = "shift_b"
    STAR = "star"
    COPATH_SPLIT = "copath_split"
    COCYCLE_FROM_CHILD = "cocycle_from_child"
    PRIME_COMBO = "prime_combo"
    ORACLE = "oracle"


@dataclass(frozen=True, slots=True)
class Derivation:
    rule: Rule
    parts: tuple = ()  # ((MaxbisizeSet, element index), ...)
    add: tuple = (0, 0)  # (black mask, white mask) contributed directly
    info: object = None


class MaxbisizeSet:
    """Antichain of bisizes over a vertex span ``(blacks, whites)`` (masks)."""

    __slots__ = ("sizes", "derivs", "blacks", "whites")

    def __init__(self, sizes=(), derivs=None, blacks: int = 0, whites: int = 0):
        self.sizes = list(sizes)
        self.derivs = list(derivs) if derivs is not None else [None] * len(self.sizes)
        self.blacks = blacks
        self.whites = whites

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __contains__(self, e):
        return tuple(e) in set(self.sizes)

    def __eq__(self, other):
        if isinstance(other, MaxbisizeSet):
            return self.sizes == other.sizes
        return NotImplemented

    def __repr__(self):
        return f"MaxbisizeSet({self.sizes})"

    def index(self, e) -> int:
        return self.sizes.index(tuple(e))

    def is_antichain(self) -> bool:
        s = self.sizes
        return all(s[k][0] < s[k + 1][0] and s[k][1] > s[k + 1][1] for k in range(len(s) - 1))


# --- Dom ----------------------------------------------------------------------

def _bound_of(cands):
    if not cands:
        return 0, 0
    return max(c[0][0] for c in cands), max(c[0][1] for c in cands)


def dom_candidates(cands, bound=None, blacks: int = 0, whites: int = 0) -> MaxbisizeSet:
    """Keep the non-dominated ``((b, w), derivation)`` candidates.

    One array indexed by the smaller bound coordinate records the best value
    of the other coordinate, then a single right-to-left scan emits the
    frontier: O(len(cands) + min(bound)).
    """
    k1, k2 = _bound_of(cands) if bound is None else bound
    for (b, w), _ in cands:
        if b < 0 or w < 0 or b > k1 or w > k2:
            raise BoundViolated(f"({b}, {w}) not dominated by ({k1}, {k2})")
    by_black = k1 <= k2
    k = k1 if by_black else k2
    best = [-1] * (k + 1)
    src = [None] * (k + 1)
    for item in cands:
        b, w = item[0]
        key, val = (b, w) if by_black else (w, b)
        if val > best[key]:
            best[key] = val
            src[key] = item
    out = []
    top = -1
    for key in range(k, -1, -1):
        if best[key] > top:
            top = best[key]
            out.append(src[key])
    if by_black:
        out.reverse()
    return MaxbisizeSet([c[0] for c in out], [c[1] for c in out], blacks, whites)


def dom(x, bound=None) -> MaxbisizeSet:
    """Non-dominated elements of a collection of bisizes, sorted by b."""
    return dom_candidates([(tuple(e), None) for e in x], bound)


# --- operators -------------------------------------------------------------------

def _as_set(x) -> MaxbisizeSet:
    return x if isinstance(x, MaxbisizeSet) else MaxbisizeSet(sorted(tuple(e) for e in x))


def oplus(x, y, bound=None) -> MaxbisizeSet:
    """Dom of all pairwise sums; the empty set is the identity."""
    x, y = _as_set(x), _as_set(y)
    blacks, whites = x.blacks | y.blacks, x.whites | y.whites
    if not x.sizes:
        return MaxbisizeSet(y.sizes, y.derivs, blacks, whites)
    if not y.sizes:
        return MaxbisizeSet(x.sizes, x.derivs, blacks, whites)
    if bound is None:
        bound = (x.sizes[-1][0] + y.sizes[-1][0], x.sizes[0][1] + y.sizes[0][1])
    if len(x) * len(y) > _VECTOR_THRESHOLD:
        return _oplus_vectorized(x, y, bound, blacks, whites)
    cands = [
        ((bx + by, wx + wy), Derivation(Rule.SUM, ((x, i), (y, j))))
        for i, (bx, wx) in enumerate(x.sizes)
        for j, (by, wy) in enumerate(y.sizes)
    ]
    return dom_candidates(cands, bound, blacks, whites)


def _oplus_vectorized(x, y, bound, blacks, whites) -> MaxbisizeSet:
    k1, k2 = bound
    xs = np.asarray(x.sizes, dtype=np.int64)
    ys = np.asarray(y.sizes, dtype=np.int64)
    bs = (xs[:, 0, None] + ys[None, :, 0]).ravel()
    ws = (xs[:, 1, None] + ys[None, :, 1]).ravel()
    if bs.max() > k1 or ws.max() > k2:
        raise BoundViolated(f"sum exceeds bound ({k1}, {k2})")
    best = np.full(k1 + 1, -1, dtype=np.int64)
    np.maximum.at(best, bs, ws)
    # strict suffix maximum: best value among larger b
    later = np.empty_like(best)
    later[-1] = -1
    later[:-1] = np.maximum.accumulate(best[::-1])[::-1][1:]
    keep = best > later
    hits = np.flatnonzero((ws == best[bs]) & keep[bs])
    kept_b, first = np.unique(bs[hits], return_index=True)
    flat = hits[first]
    ny = len(y)
    sizes = [(int(b), int(best[b])) for b in kept_b]
    derivs = [Derivation(Rule.SUM, ((x, int(f) // ny), (y, int(f) % ny))) for f in flat]
    return MaxbisizeSet(sizes, derivs, blacks, whites)


def shift_w(x, z: int, whites: int = 0) -> MaxbisizeSet:
    """Add ``z`` to every white coordinate; ``whites`` names the added vertices."""
    x = _as_set(x)
    if z < 0:
        raise ValueError("shift must be nonnegative")
    derivs = [Derivation(Rule.SHIFT_W, ((x, i),), (0, whites), z) for i in range(len(x))]
    return MaxbisizeSet([(b, w + z) for b, w in x.sizes], derivs, x.blacks, x.whites | whites)


def shift_b(x, z: int, blacks: int = 0) -> MaxbisizeSet:
    x = _as_set(x)
    if z < 0:
        raise ValueError("shift must be nonnegative")
    derivs = [Derivation(Rule.SHIFT_B, ((x, i),), (blacks, 0), z) for i in range(len(x))]
    return MaxbisizeSet([(b + z, w) for b, w in x.sizes], derivs, x.blacks | blacks, x.whites)


# --- combine rules -----------------------------------------------------------------

def _trivial(nb, nw, bm, wm):
    out = []
    if nb:
        out.append(((nb, 0), Derivation(Rule.ALL_BLACK, add=(bm, 0))))
    if nw:
        out.append(((0, nw), Derivation(Rule.ALL_WHITE, add=(0, wm))))
    return out


def combine_parallel(dx, dy, nB=None, nW=None) -> MaxbisizeSet:
    """Two nonadjacent parts: children's frontiers plus both one-sided sets."""
    dx, dy = _as_set(dx), _as_set(dy)
    bm, wm = dx.blacks | dy.blacks, dx.whites | dy.whites
    nB = bm.bit_count() if nB is None else nB
    nW = wm.bit_count() if nW is None else nW
    cands = [(e, Derivation(Rule.FROM_CHILD, ((d, i),))) for d in (dx, dy) for i, e in enumerate(d.sizes)]
    cands += [((nB, 0), Derivation(Rule.ALL_BLACK, add=(bm, 0))),
              ((0, nW), Derivation(Rule.ALL_WHITE, add=(0, wm)))]
    return dom_candidates(cands, (nB, nW), bm, wm)


def combine_series(dx, dy, bound=None) -> MaxbisizeSet:
    """Two fully adjacent parts."""
    dx, dy = _as_set(dx), _as_set(dy)
    if bound is None and (dx.blacks | dx.whites) and (dy.blacks | dy.whites):
        bound = ((dx.blacks | dy.blacks).bit_count(), (dx.whites | dy.whites).bit_count())
    return oplus(dx, dy, bound)


def combine_ks(dx, dy, wY=None, bX=None, bound=None) -> MaxbisizeSet:
    """``dx`` left adjacent to ``dy``.

    A biclique either avoids the whites of X, and then may take all blacks of
    X, or avoids the blacks of Y and may take all whites of Y.
    """
    dx, dy = _as_set(dx), _as_set(dy)
    wY = dy.whites.bit_count() if wY is None else wY
    bX = dx.blacks.bit_count() if bX is None else bX
    cands = [((b, w + wY), Derivation(Rule.SHIFT_W, ((dx, i),), (0, dy.whites), wY))
             for i, (b, w) in enumerate(dx.sizes)]
    cands += [((b + bX, w), Derivation(Rule.SHIFT_B, ((dy, j),), (dx.blacks, 0), bX))
              for j, (b, w) in enumerate(dy.sizes)]
    bm, wm = dx.blacks | dy.blacks, dx.whites | dy.whites
    if bound is None and (bm or wm):
        bound = (bm.bit_count(), wm.bit_count())
    return dom_candidates(cands, bound, bm, wm)


# --- base shapes ---------------------------------------------------------------------

def base_path_cycle(g: BipartiteGraph, order) -> MaxbisizeSet:
    """Path or cycle (max degree 2): only stars and one-sided bicliques are maximal."""
    bm, wm = to_masks(order)
    nb, nw = bm.bit_count(), wm.bit_count()
    m = sum((g.black_adj[i] & wm).bit_count() for i in iter_bits(bm))
    if nb == 2 and nw == 2 and m == 4:
        raise PreconditionViolated("C4 is a complete bipartite graph, not a star union")
    cands = _trivial(nb, nw, bm, wm)
    for i in iter_bits(bm):
        row = g.black_adj[i] & wm
        if row:
            cands.append(((1, row.bit_count()), Derivation(Rule.STAR, add=(1 << i, row), info=(BLACK, i))))
    for j in iter_bits(wm):
        col = g.white_adj[j] & bm
        if col:
            cands.append(((col.bit_count(), 1), Derivation(Rule.STAR, add=(col, 1 << j), info=(1, j))))
    return dom_candidates(cands, (nb, nw), bm, wm)


def base_copath(g: BipartiteGraph, order) -> MaxbisizeSet:
    """Bipartite complement of the path ``order``, both color classes > 2.

    A two-sided biclique avoids consecutive path vertices, so it has at most
    floor(n/2) vertices; every split of floor(n/2) is realised by a prefix of
    the first color and a suffix of the other.
    """
    bm, wm = to_masks(order)
    nb, nw = bm.bit_count(), wm.bit_count()
    if nb <= 2 or nw <= 2:
        raise PreconditionViolated("co-path formula needs more than 2 vertices per color")
    half = len(order) // 2
    first = order[0][0]
    lead = [v for v in order if v[0] == first]
    tail = [v for v in order if v[0] != first]
    pre = [0]
    for _, i in lead:
        pre.append(pre[-1] | 1 << i)
    suf = [0]
    for _, i in reversed(tail):
        suf.append(suf[-1] | 1 << i)
    n_lead = len(lead)
    cands = _trivial(nb, nw, bm, wm)
    for k in range(0, n_lead + 1):
        r = half - k
        if not 0 <= r <= len(tail):
            continue
        lead_mask, tail_mask = pre[k], suf[r]
        if first == BLACK:
            size, add = (k, r), (lead_mask, tail_mask)
        else:
            size, add = (r, k), (tail_mask, lead_mask)
        cands.append((size, Derivation(Rule.COPATH_SPLIT, add=add, info=(k, r))))
    return dom_candidates(cands, (nb, nw), bm, wm)


def base_cocycle(g: BipartiteGraph, order) -> MaxbisizeSet:
    """Bipartite complement of the cycle ``order`` (n >= 8).

    ``order[0]`` and ``order[1]`` are nonadjacent in g, so each biclique
    misses one of them; deleting either leaves a co-path.
    """
    n = len(order)
    if n < 8:
        raise PreconditionViolated("co-cycle reduction needs at least 8 vertices")
    bm, wm = to_masks(order)
    cands = []
    for removed, rest in ((order[0], order[1:]), (order[1], order[2:] + order[:1])):
        child = base_copath(g, rest)
        cands += [(e, Derivation(Rule.COCYCLE_FROM_CHILD, ((child, i),), info=removed))
                  for i, e in enumerate(child.sizes)]
    return dom_candidates(cands, (bm.bit_count(), wm.bit_count()), bm, wm)


# --- prime nodes ------------------------------------------------------------------------

def maximal_bicliques_masks(h: BipartiteGraph, max_vertices: int = 24) -> list:
    """All inclusion-maximal bicliques of ``h`` (one-sided ones included), as masks."""
    if h.n > max_vertices:
        raise WidthExceeded(f"quotient has {h.n} vertices, limit {max_vertices}")
    swap = h.nB > h.nW
    rows = h.white_adj if swap else h.black_adj  # enumerate over the smaller side
    cols = h.black_adj if swap else h.white_adj
    n_small, n_big = (h.nW, h.nB) if swap else (h.nB, h.nW)
    full_big, full_small = (1 << n_big) - 1, (1 << n_small) - 1
    # common[S] = vertices of the big side adjacent to all of S
    common = [full_big] * (1 << n_small)
    found = set()
    for s in range(1 << n_small):
        if s:
            low = s & -s
            common[s] = common[s ^ low] & rows[low.bit_length() - 1]
        t = common[s]
        closed = full_small
        for j in iter_bits(t):
            closed &= cols[j]
        found.add((t, closed) if swap else (closed, t))
    return sorted(found)


def maximal_bicliques_all(h: BipartiteGraph, max_vertices: int = 24) -> list:
    return [from_masks(b, w) for b, w in maximal_bicliques_masks(h, max_vertices)]


def dc_restrict(c, i: int, cls, d_i, quotient) -> MaxbisizeSet:
    """Contribution of class ``i`` to the bicliques inside Rroc(c).

    ``c`` is a maximal biclique of the quotient as a mask pair and ``cls``
    the class as a mask pair.
    """
    cb, cw = c
    pb, pw = cls
    rb, rw = quotient.black_rep[i], quotient.white_rep[i]
    has_b = rb is not None and cb >> rb & 1
    has_w = rw is not None and cw >> rw & 1
    if has_b and has_w:
        return d_i
    if has_b:
        return MaxbisizeSet([(pb.bit_count(), 0)], [Derivation(Rule.ALL_BLACK, add=(pb, 0))], pb, 0)
    if has_w:
        return MaxbisizeSet([(0, pw.bit_count())], [Derivation(Rule.ALL_WHITE, add=(0, pw))], 0, pw)
    return MaxbisizeSet()


def combine_prime(node: DecompNode, child_sets, max_quotient: int = 24) -> MaxbisizeSet:
    q = node.quotient
    if q is None:
        raise PreconditionViolated("Prime node without a quotient")
    bound = (node.nB, node.nW)
    cands = []
    for c in maximal_bicliques_masks(q.h, max_quotient):
        acc = MaxbisizeSet()
        for i, cls in enumerate(q.classes):
            part = dc_restrict(c, i, cls, child_sets[i], q)
            if part.sizes:
                acc = oplus(acc, part, bound)
        cands += [(e, Derivation(Rule.PRIME_COMBO, ((acc, k),), info=c)) for k, e in enumerate(acc.sizes)]
    return dom_candidates(cands, bound, node.blacks, node.whites)


# --- tree evaluation ------------------------------------------------------------------------

def _fold(sets, step):
    acc = sets[0]
    for s in sets[1:]:
        acc = step(acc, s)
    return acc


def solve_node(g: BipartiteGraph, node: DecompNode, child_sets, max_quotient: int = 24) -> MaxbisizeSet:
    kind = node.kind
    if kind == Kind.LEAF:
        (color, i), = node.vertices
        if color == BLACK:
            return MaxbisizeSet([(1, 0)], [Derivation(Rule.LEAF_BLACK, add=(1 << i, 0))], node.blacks, 0)
        return MaxbisizeSet([(0, 1)], [Derivation(Rule.LEAF_WHITE, add=(0, 1 << i))], 0, node.whites)
    if kind == Kind.PARALLEL:
        return _fold(child_sets, combine_parallel)
    if kind == Kind.SERIES:
        return _fold(child_sets, combine_series)
    if kind == Kind.KS:
        return _fold(child_sets, combine_ks)
    if kind == Kind.PRIME:
        return combine_prime(node, child_sets, max_quotient)
    if kind == Kind.BASE:
        shape, order = node.base.shape, node.base.order
        if shape in (Shape.PATH, Shape.CYCLE):
            return base_path_cycle(g, order)
        if shape == Shape.COPATH and min(node.nB, node.nW) > 2:
            return base_copath(g, order)
        if shape == Shape.COCYCLE and node.n >= 8:
            return base_cocycle(g, order)
        from .oracle import oracle_within

        return oracle_within(g, node.blacks, node.whites)
    raise ValueError(f"unknown node kind {kind}")


def solve_tree(g: BipartiteGraph, t: DecompositionTree, max_quotient: int = 24) -> MaxbisizeSet:
    """Bottom-up maxbisize set of ``g`` along ``t``; multi-way nodes fold left to right."""
    done = {}
    for node in t.postorder():
        kids = [done.pop(id(c)) for c in node.children]
        done[id(node)] = solve_node(g, node, kids, max_quotient)
    return done[id(t.root)]


def solve(g: BipartiteGraph, tree: str = "canonical", max_quotient: int = 24) -> MaxbisizeSet:
    """Build the requested tree and run the dynamic program (empty graph -> {(0, 0)})."""
    from .decomposition import build_canonical_tree, build_lozin_tree

    if g.n == 0:
        return MaxbisizeSet([(0, 0)], [Derivation(Rule.ALL_BLACK)])
    builder = build_lozin_tree if tree == "lozin" else build_canonical_tree
    return solve_tree(g, builder(g), max_quotient)


# --- objectives ---------------------------------------------------------------------------------

class Objective(str, Enum):
    VERTEX_MAX = "vertex"
    EDGE_MAX = "edge"
    BALANCED = "balanced"
    NONTRIVIAL_VERTEX_MAX = "nontrivial-vertex"


_SCORES = {
    Objective.VERTEX_MAX: lambda b, w: b + w,
    Objective.EDGE_MAX: lambda b, w: b * w,
    Objective.BALANCED: min,
    Objective.NONTRIVIAL_VERTEX_MAX: lambda b, w: b + w,
}


def reduce_objective(d, objective) -> tuple[int, tuple[int, int]]:
    """``(value, element)`` for one of the four maximum-biclique problems.

    Ties go to the element with more blacks.
    """
    objective = Objective(objective)
    elems = list(d)
    if not elems:
        raise ValueError("empty maxbisize set")
    if objective == Objective.NONTRIVIAL_VERTEX_MAX:
        elems = [e for e in elems if e[0] >= 1 and e[1] >= 1]
        if not elems:
            raise NoNontrivialBiclique("every biclique is one-sided")
    score = _SCORES[objective]
    best = max(elems, key=lambda e: (score(*e), e[0]))
    return score(*best), tuple(best)
