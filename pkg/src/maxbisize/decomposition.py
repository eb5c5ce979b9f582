"""Bimodular decomposition: K+S / Parallel / Series / Prime splits and trees.

Two tree builders are provided.  ``build_lozin_tree`` follows the
skew-star-free recursion whose leaves are single vertices or (complements
of) paths and cycles.  ``build_canonical_tree`` follows the canonical
recursion whose non-recursive case is a Prime node over the maximal
canonical bimodules, carrying the quotient graph.

Both work on vertex subsets of the input graph given as mask pairs, so
every node refers to vertices of the original graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import NotInClass, PreconditionViolated, TwinsPresent
from .graph import (
    BLACK,
    WHITE,
    BipartiteGraph,
    Vertex,
    components_within,
    find_twins,
    from_masks,
    iter_bits,
    low_index,
    to_masks,
    vertex_name,
)


class Kind(str, Enum):
    LEAF = "leaf"
    PARALLEL = "parallel"
    SERIES = "series"
    KS = "ks"
    PRIME = "prime"
    BASE = "base"


class Shape(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COPATH = "copath"
    COCYCLE = "cocycle"


@dataclass
class BaseInfo:
    shape: Shape
    order: list  # vertices along the (underlying) path or cycle


@dataclass
class QuotientGraph:
    """Contraction of a bimodule partition.

    ``black_rep[i]`` is the black index in ``h`` standing for the blacks of
    class ``i`` (None when the class has no black); likewise ``white_rep``.
    """

    h: BipartiteGraph
    classes: list  # (bm, wm) per class, in child order
    black_rep: list
    white_rep: list

    def class_of(self, v: Vertex) -> int:
        color, i = v
        for k, (cb, cw) in enumerate(self.classes):
            if (cb if color == BLACK else cw) >> i & 1:
                return k
        raise KeyError(v)


@dataclass(eq=False)
class DecompNode:
    kind: Kind
    blacks: int
    whites: int
    children: list = field(default_factory=list)
    base: BaseInfo | None = None
    quotient: QuotientGraph | None = None

    @property
    def nB(self) -> int:
        return self.blacks.bit_count()

    @property
    def nW(self) -> int:
        return self.whites.bit_count()

    @property
    def n(self) -> int:
        return self.nB + self.nW

    @property
    def vertices(self) -> list:
        return from_masks(self.blacks, self.whites)


@dataclass(eq=False)
class DecompositionTree:
    root: DecompNode

    def nodes(self):
        """Preorder traversal."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def postorder(self) -> list:
        out = []
        stack = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out.append(node)
                continue
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(node.children))
        return out

    def leaves(self):
        return [x for x in self.nodes() if not x.children]


# --- K+S -------------------------------------------------------------------

def _scc_topological(g: BipartiteGraph, bm: int, wm: int) -> list:
    """Strongly connected components of the orientation digraph, source first.

    Every black-white pair carries exactly one arc: b -> w for an edge and
    w -> b for a non-edge.  Kosaraju, with out/in neighborhoods as masks.
    """
    badj, wadj = g.black_adj, g.white_adj

    def fwd(color, i):
        if color == BLACK:
            return 0, badj[i] & wm
        return bm & ~wadj[i], 0

    def rev(color, i):
        if color == BLACK:
            return 0, wm & ~badj[i]
        return wadj[i] & bm, 0

    def sweep(starts, succ, record_finish):
        unb, unw = bm, wm
        groups = []
        for color, i in starts:
            bit = 1 << i
            if color == BLACK:
                if not unb & bit:
                    continue
                unb &= ~bit
            else:
                if not unw & bit:
                    continue
                unw &= ~bit
            group = []
            stack = [(color, i, *succ(color, i))]
            while stack:
                c, v, ob, ow = stack[-1]
                nb = ob & unb
                if nb:
                    low = nb & -nb
                    unb ^= low
                    stack[-1] = (c, v, nb ^ low, ow)
                    u = low.bit_length() - 1
                    stack.append((BLACK, u, *succ(BLACK, u)))
                    continue
                nw = ow & unw
                if nw:
                    low = nw & -nw
                    unw ^= low
                    stack[-1] = (c, v, 0, nw ^ low)
                    u = low.bit_length() - 1
                    stack.append((WHITE, u, *succ(WHITE, u)))
                    continue
                stack.pop()
                group.append((c, v))
            groups.append(group)
        if record_finish:
            return [v for grp in groups for v in grp]
        return groups

    finish = sweep(from_masks(bm, wm), fwd, True)
    sccs = sweep(reversed(finish), rev, False)
    return [to_masks(grp) for grp in sccs]


def _canonical_ks_order(parts: list) -> list:
    # Runs of consecutive single-vertex same-color parts are the only freedom
    # left in a topological order; sort each run by index.
    out = []
    k = 0
    while k < len(parts):
        pb, pw = parts[k]
        if (pb | pw).bit_count() != 1 or (pb and pw):
            out.append(parts[k])
            k += 1
            continue
        color = BLACK if pb else WHITE
        j = k
        while j < len(parts):
            qb, qw = parts[j]
            if (qb | qw).bit_count() != 1:
                break
            if (qb != 0) != (color == BLACK):
                break
            j += 1
        out.extend(sorted(parts[k:j], key=lambda p: p[0] or p[1]))
        k = j
    return out


def ks_parts_within(g: BipartiteGraph, bm: int, wm: int) -> list:
    if (bm | wm) == 0:
        return []
    return _canonical_ks_order(_scc_topological(g, bm, wm))


def ks_partition(g: BipartiteGraph):
    """Finest K+S ordered partition as vertex lists, or None if only one part."""
    parts = ks_parts_within(g, g.all_blacks, g.all_whites)
    if len(parts) < 2:
        return None
    return [from_masks(pb, pw) for pb, pw in parts]


def is_ks_chain(g: BipartiteGraph, parts) -> bool:
    """Every earlier part (a vertex list) is left adjacent to every later part."""
    return ks_chain_within(g, [to_masks(p) for p in parts])


def ks_chain_within(g: BipartiteGraph, masks) -> bool:
    later_b = later_w = 0
    for pb, pw in reversed(masks):
        for i in iter_bits(pb):
            if g.black_adj[i] & later_w != later_w:
                return False
        for j in iter_bits(pw):
            if g.white_adj[j] & later_b:
                return False
        later_b |= pb
        later_w |= pw
    return True


# --- bimodules ---------------------------------------------------------------

def _splits(g: BipartiteGraph, bm: int, wm: int, sb: int, sw: int):
    """Yield outside vertices that are neither nonadjacent nor fully adjacent."""
    for i in iter_bits(bm & ~sb):
        hit = g.black_adj[i] & sw
        if hit and hit != sw:
            yield BLACK, i
    for j in iter_bits(wm & ~sw):
        hit = g.white_adj[j] & sb
        if hit and hit != sb:
            yield WHITE, j


def is_bimodule_within(g, bm, wm, sb, sw) -> bool:
    return next(_splits(g, bm, wm, sb, sw), None) is None


def is_bimodule(g: BipartiteGraph, m) -> bool:
    sb, sw = to_masks(m)
    return is_bimodule_within(g, g.all_blacks, g.all_whites, sb, sw)


def bimodule_closure_within(g, bm, wm, sb, sw) -> tuple[int, int]:
    while True:
        add_b = add_w = 0
        for color, i in _splits(g, bm, wm, sb, sw):
            if color == BLACK:
                add_b |= 1 << i
            else:
                add_w |= 1 << i
        if not (add_b or add_w):
            return sb, sw
        sb |= add_b
        sw |= add_w


def minimal_bimodule_containing(g: BipartiteGraph, seed) -> list:
    sb, sw = to_masks(seed)
    if not (sb or sw):
        raise ValueError("seed must be nonempty")
    return from_masks(*bimodule_closure_within(g, g.all_blacks, g.all_whites, sb, sw))


def is_trivial(sb: int, sw: int) -> bool:
    return sb.bit_count() <= 1 and sw.bit_count() <= 1


def maximal_nontrivial_bimodules_within(g, bm, wm) -> list:
    """Inclusion-maximal nontrivial bimodules other than the whole set.

    Every nontrivial bimodule holds a same-color pair, so the maximal ones are
    reached by closing each same-color pair and then extending by one vertex
    at a time; a candidate no single-vertex extension keeps proper is maximal.
    """
    full = (bm, wm)
    seen = set()
    stack = []
    for mask, as_black in ((bm, True), (wm, False)):
        idx = list(iter_bits(mask))
        for a in range(len(idx)):
            for c in range(a + 1, len(idx)):
                pair = (1 << idx[a]) | (1 << idx[c])
                seed = (pair, 0) if as_black else (0, pair)
                m = bimodule_closure_within(g, bm, wm, *seed)
                if m != full and m not in seen:
                    seen.add(m)
                    stack.append(m)
    maximal = []
    while stack:
        sb, sw = stack.pop()
        extended = False
        for color, x in from_masks(bm & ~sb, wm & ~sw):
            tb, tw = (sb | 1 << x, sw) if color == BLACK else (sb, sw | 1 << x)
            cand = bimodule_closure_within(g, bm, wm, tb, tw)
            if cand == full:
                continue
            extended = True
            if cand not in seen:
                seen.add(cand)
                stack.append(cand)
        if not extended:
            maximal.append((sb, sw))
    return sorted(maximal, key=_part_key)


def canonical_partition_from_maximal(g, bm, wm, maximal) -> list:
    """Classes from the maximal nontrivial bimodules.

    Vertices lying in two maximal sets (augmenting vertices) are removed from
    all of them.  What remains of a maximal set becomes a class when it is
    still a nontrivial bimodule; otherwise its vertices stay singletons.
    """
    seen_b = seen_w = 0
    aug_b = aug_w = 0
    for mb, mw in maximal:
        aug_b |= seen_b & mb
        aug_w |= seen_w & mw
        seen_b |= mb
        seen_w |= mw
    parts = []
    used_b = used_w = 0
    for mb, mw in maximal:
        cb, cw = mb & ~aug_b, mw & ~aug_w
        if not is_trivial(cb, cw) and is_bimodule_within(g, bm, wm, cb, cw):
            parts.append((cb, cw))
            used_b |= cb
            used_w |= cw
    for i in iter_bits(bm & ~used_b):
        parts.append((1 << i, 0))
    for j in iter_bits(wm & ~used_w):
        parts.append((0, 1 << j))
    return sorted(parts, key=_part_key)


def _part_key(p):
    pb, pw = p
    return (0, low_index(pb)) if pb else (1, low_index(pw))


def canonical_parts_within(g, bm, wm) -> list:
    return canonical_partition_from_maximal(g, bm, wm, maximal_nontrivial_bimodules_within(g, bm, wm))


def maximal_canonical_bimodules(g: BipartiteGraph) -> list:
    """Partition V into maximal canonical bimodules and singletons.

    Requires a twin-free graph on >= 4 vertices without a Parallel, Series or
    K+S split.
    """
    bm, wm = g.all_blacks, g.all_whites
    if g.n < 4:
        raise PreconditionViolated("Prime split needs at least 4 vertices")
    if _recursive_split(g, bm, wm) is not None:
        raise PreconditionViolated("graph admits a Parallel, Series or K+S split")
    return [from_masks(pb, pw) for pb, pw in canonical_parts_within(g, bm, wm)]


# --- quotient ---------------------------------------------------------------

def quotient_within(g: BipartiteGraph, parts) -> QuotientGraph:
    black_rep, white_rep = [], []
    nb = nw = 0
    for pb, pw in parts:
        black_rep.append(nb if pb else None)
        nb += bool(pb)
        white_rep.append(nw if pw else None)
        nw += bool(pw)
    edges = []
    for i, (pb, _) in enumerate(parts):
        if not pb:
            continue
        nbr = 0
        for x in iter_bits(pb):
            nbr |= g.black_adj[x]
        for j, (_, pw) in enumerate(parts):
            if pw and nbr & pw:
                edges.append((black_rep[i], white_rep[j]))
    return QuotientGraph(BipartiteGraph(nb, nw, edges), list(parts), black_rep, white_rep)


def quotient_graph(g: BipartiteGraph, parts) -> QuotientGraph:
    return quotient_within(g, [to_masks(p) for p in parts])


# --- base shapes ---------------------------------------------------------------

def _walk(start, nbrs) -> list:
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [v for v in nbrs(cur) if v != prev and v != start]
        if not nxt:
            return order
        prev, cur = cur, min(nxt)
        order.append(cur)


def _shape_within(g, bm, wm, complement: bool):
    badj, wadj = g.black_adj, g.white_adj

    def nbrs(v):
        color, i = v
        if color == BLACK:
            row = (wm & ~badj[i]) if complement else (badj[i] & wm)
            return [(WHITE, j) for j in iter_bits(row)]
        row = (bm & ~wadj[i]) if complement else (wadj[i] & bm)
        return [(BLACK, j) for j in iter_bits(row)]

    verts = from_masks(bm, wm)
    degs = {v: len(nbrs(v)) for v in verts}
    if max(degs.values(), default=0) > 2:
        return None
    if len(components_within(g, bm, wm, complement)) != 1:
        return None
    m = sum(degs.values()) // 2
    n = len(verts)
    if m == n - 1:
        start = min(v for v in verts if degs[v] <= 1)
        return Shape.COPATH if complement else Shape.PATH, _walk(start, nbrs)
    if m == n:
        return Shape.COCYCLE if complement else Shape.CYCLE, _walk(min(verts), nbrs)
    return None


def recognize_base_within(g, bm, wm) -> BaseInfo | None:
    for complement in (False, True):
        hit = _shape_within(g, bm, wm, complement)
        if hit is not None:
            return BaseInfo(*hit)
    return None


def recognize_base(g: BipartiteGraph) -> BaseInfo | None:
    if g.n == 0:
        return None
    return recognize_base_within(g, g.all_blacks, g.all_whites)


# --- builders -------------------------------------------------------------------

def _recursive_split(g, bm, wm):
    """The first applicable of K+S, Parallel, Series, as (kind, parts), else None."""
    parts = ks_parts_within(g, bm, wm)
    if len(parts) > 1:
        return Kind.KS, parts
    parts = components_within(g, bm, wm)
    if len(parts) > 1:
        return Kind.PARALLEL, parts
    parts = components_within(g, bm, wm, complement=True)
    if len(parts) > 1:
        return Kind.SERIES, parts
    return None


def _check_twins(g):
    twins = find_twins(g)
    if twins:
        raise TwinsPresent(twins)


def _build(g: BipartiteGraph, classify) -> DecompositionTree:
    if g.n == 0:
        raise ValueError("cannot decompose the empty graph")
    _check_twins(g)
    root = DecompNode(Kind.LEAF, g.all_blacks, g.all_whites)
    stack = [root]
    while stack:
        node = stack.pop()
        if node.n == 1:
            continue
        split = _recursive_split(g, node.blacks, node.whites)
        if split is not None:
            node.kind, parts = split
        else:
            node.kind, parts, extra = classify(g, node.blacks, node.whites)
            if node.kind == Kind.BASE:
                node.base = extra
            elif node.kind == Kind.PRIME:
                node.quotient = extra
        for pb, pw in parts:
            child = DecompNode(Kind.LEAF, pb, pw)
            node.children.append(child)
            stack.append(child)
    return DecompositionTree(root)


def _lozin_terminal(g, bm, wm):
    info = recognize_base_within(g, bm, wm)
    if info is None:
        raise NotInClass(from_masks(bm, wm))
    return Kind.BASE, [], info


def _prime_terminal(g, bm, wm):
    parts = canonical_parts_within(g, bm, wm)
    return Kind.PRIME, parts, quotient_within(g, parts)


def build_lozin_tree(g: BipartiteGraph) -> DecompositionTree:
    """Tree whose terminal nodes are vertices and (co-)paths/cycles.

    Raises TwinsPresent, or NotInClass naming the first node where no case
    applies.
    """
    return _build(g, _lozin_terminal)


def build_canonical_tree(g: BipartiteGraph) -> DecompositionTree:
    return _build(g, _prime_terminal)


def bimodularwidth(t: DecompositionTree) -> int:
    return max((len(x.children) for x in t.nodes() if x.kind == Kind.PRIME), default=2)


def canonical_bimodules(t: DecompositionTree) -> list:
    """Nontrivial vertex sets of tree nodes, root included, in preorder.

    Every node of a canonical tree spans a bimodule and these sets never
    overlap without nesting.
    """
    return [from_masks(x.blacks, x.whites) for x in t.nodes() if not is_trivial(x.blacks, x.whites)]


# --- validation ----------------------------------------------------------------

def validate_tree(g: BipartiteGraph, t: DecompositionTree) -> None:
    """Re-check every structural claim of ``t`` against ``g``; AssertionError on failure."""
    root = t.root
    assert (root.blacks, root.whites) == (g.all_blacks, g.all_whites), "root must span V"
    for node in t.nodes():
        kids = node.children
        if node.kind in (Kind.LEAF, Kind.BASE):
            assert not kids
            if node.kind == Kind.LEAF:
                assert node.n == 1
            else:
                _check_base(g, node)
            continue
        assert len(kids) >= 2, "unary internal node"
        ub = uw = 0
        for c in kids:
            assert not (ub & c.blacks or uw & c.whites), "children overlap"
            ub |= c.blacks
            uw |= c.whites
        assert (ub, uw) == (node.blacks, node.whites), "children do not cover parent"
        pairs = [(a, b) for a in range(len(kids)) for b in range(len(kids)) if a != b]
        if node.kind == Kind.PARALLEL:
            for a, b in pairs:
                assert all(g.black_adj[i] & kids[b].whites == 0 for i in iter_bits(kids[a].blacks))
        elif node.kind == Kind.SERIES:
            for a, b in pairs:
                wb = kids[b].whites
                assert all(g.black_adj[i] & wb == wb for i in iter_bits(kids[a].blacks))
        elif node.kind == Kind.KS:
            assert ks_chain_within(g, [(c.blacks, c.whites) for c in kids])
        elif node.kind == Kind.PRIME:
            q = node.quotient
            assert q is not None
            assert q.classes == [(c.blacks, c.whites) for c in kids]
            for c in kids:
                assert is_bimodule_within(g, node.blacks, node.whites, c.blacks, c.whites)
            assert q.h == quotient_within(g, q.classes).h


def _check_base(g, node):
    info = node.base
    assert info is not None
    order = info.order
    assert sorted(order) == sorted(node.vertices)
    complement = info.shape in (Shape.COPATH, Shape.COCYCLE)

    def linked(u, v):
        if u[0] == v[0]:
            return False
        b, w = (u, v) if u[0] == BLACK else (v, u)
        return g.has_edge(b[1], w[1]) != complement

    closed = info.shape in (Shape.CYCLE, Shape.COCYCLE)
    n = len(order)
    want = {frozenset((order[k], order[k + 1])) for k in range(n - 1)}
    if closed:
        want.add(frozenset((order[-1], order[0])))
    have = {frozenset((u, v)) for a, u in enumerate(order) for v in order[a + 1:] if linked(u, v)}
    assert have == want, "base order does not match the graph"


# --- serialization -----------------------------------------------------------------

def tree_to_dict(t: DecompositionTree, g: BipartiteGraph | None = None) -> dict:
    labels = g.labels if g is not None else None

    def names(bm, wm):
        return [vertex_name(v, labels) for v in from_masks(bm, wm)]

    def conv(node):
        out = {"kind": node.kind.value, "vertices": names(node.blacks, node.whites), "children": []}
        if node.base is not None:
            out["base"] = {"shape": node.base.shape.value,
                           "order": [vertex_name(v, labels) for v in node.base.order]}
        if node.quotient is not None:
            q = node.quotient
            out["quotient"] = {
                "classes": [names(pb, pw) for pb, pw in q.classes],
                "black_rep": q.black_rep,
                "white_rep": q.white_rep,
                "nB": q.h.nB,
                "nW": q.h.nW,
                "edges": [list(e) for e in q.h.edges()],
            }
        return out

    # iterative to survive deep trees
    root_out = conv(t.root)
    stack = [(t.root, root_out)]
    while stack:
        node, out = stack.pop()
        for c in node.children:
            c_out = conv(c)
            out["children"].append(c_out)
            stack.append((c, c_out))
    return root_out


def tree_to_json(t: DecompositionTree, g: BipartiteGraph | None = None, **kw) -> str:
    return json.dumps(tree_to_dict(t, g), **kw)


def tree_to_dot(t: DecompositionTree, g: BipartiteGraph | None = None) -> str:
    labels = g.labels if g is not None else None
    ids = {}
    lines = ["digraph decomposition {", "  node [shape=record];"]
    for k, node in enumerate(t.nodes()):
        ids[id(node)] = f"n{k}"
        verts = " ".join(vertex_name(v, labels) for v in node.vertices)
        title = node.kind.value
        if node.base is not None:
            title += f" {node.base.shape.value}"
        lines.append(f'  n{k} [label="{{{title}|{verts}}}"];')
    for node in t.nodes():
        for rank, c in enumerate(node.children):
            attr = f' [label="{rank + 1}"]' if node.kind == Kind.KS else ""
            lines.append(f"  {ids[id(node)]} -> {ids[id(c)]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
