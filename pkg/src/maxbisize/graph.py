"""Bipartite graphs stored as per-vertex bit masks.

A vertex is a ``(color, index)`` pair with a 0-based index inside its color
class.  Neighborhoods are Python ints used as bit sets over the opposite
class, so neighborhood comparisons and subset restrictions are single
big-int operations.  Most internal routines work on a sub-population of the
graph given as a pair of masks ``(bm, wm)`` instead of materialising induced
subgraphs.
"""
from __future__ import annotations

from enum import IntEnum
from itertools import permutations
from typing import Iterable, Iterator

from .errors import ParseError, SizeLimit


class Color(IntEnum):
    BLACK = 0
    WHITE = 1

    @property
    def other(self) -> "Color":
        return Color(1 - self)


BLACK, WHITE = Color.BLACK, Color.WHITE

Vertex = tuple  # (Color, int)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def low_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_masks(vertices: Iterable[Vertex]) -> tuple[int, int]:
    bm = wm = 0
    for color, i in vertices:
        if color == BLACK:
            bm |= 1 << i
        else:
            wm |= 1 << i
    return bm, wm


def from_masks(bm: int, wm: int) -> list[Vertex]:
    return [(BLACK, i) for i in iter_bits(bm)] + [(WHITE, j) for j in iter_bits(wm)]


def vertex_name(v: Vertex, labels=None) -> str:
    color, i = v
    if labels is not None and labels[color] is not None:
        return str(labels[color][i])
    return f"{'b' if color == BLACK else 'w'}{i + 1}"


class BipartiteGraph:
    """Immutable bipartite graph with a fixed black/white bipartition.

    ``black_adj[i]`` is the mask of white neighbors of black ``i`` and
    ``white_adj[j]`` the mask of black neighbors of white ``j``.
    """

    __slots__ = ("nB", "nW", "black_adj", "white_adj", "labels")

    def __init__(self, nB: int, nW: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if nB < 0 or nW < 0:
            raise ValueError("vertex counts must be nonnegative")
        badj = [0] * nB
        wadj = [0] * nW
        for b, w in edges:
            if not (0 <= b < nB and 0 <= w < nW):
                raise ValueError(f"edge ({b}, {w}) out of range")
            if badj[b] >> w & 1:
                raise ValueError(f"duplicate edge ({b}, {w})")
            badj[b] |= 1 << w
            wadj[w] |= 1 << b
        self.nB = nB
        self.nW = nW
        self.black_adj = tuple(badj)
        self.white_adj = tuple(wadj)
        # (black names, white names) or None
        self.labels = labels

    @classmethod
    def from_black_adjacency(cls, nB: int, nW: int, black_adj, labels=None) -> "BipartiteGraph":
        g = cls.__new__(cls)
        g.nB, g.nW = nB, nW
        g.black_adj = tuple(black_adj)
        wadj = [0] * nW
        for b, row in enumerate(g.black_adj):
            for w in iter_bits(row):
                wadj[w] |= 1 << b
        g.white_adj = tuple(wadj)
        g.labels = labels
        return g

    @property
    def n(self) -> int:
        return self.nB + self.nW

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.black_adj)

    @property
    def all_blacks(self) -> int:
        return (1 << self.nB) - 1

    @property
    def all_whites(self) -> int:
        return (1 << self.nW) - 1

    def vertices(self) -> list[Vertex]:
        return from_masks(self.all_blacks, self.all_whites)

    def edges(self) -> list[tuple[int, int]]:
        return [(b, w) for b, row in enumerate(self.black_adj) for w in iter_bits(row)]

    def has_edge(self, b: int, w: int) -> bool:
        return bool(self.black_adj[b] >> w & 1)

    def neighbors(self, v: Vertex) -> int:
        """Neighbor mask of ``v`` over the opposite color class."""
        color, i = v
        return self.black_adj[i] if color == BLACK else self.white_adj[i]

    def degree(self, v: Vertex) -> int:
        return self.neighbors(v).bit_count()

    def swap_colors(self) -> "BipartiteGraph":
        labels = None if self.labels is None else (self.labels[1], self.labels[0])
        return BipartiteGraph.from_black_adjacency(self.nW, self.nB, self.white_adj, labels)

    def name(self, v: Vertex) -> str:
        return vertex_name(v, self.labels)

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.nB, self.nW, self.black_adj) == (other.nB, other.nW, other.black_adj)

    def __hash__(self):
        return hash((self.nB, self.nW, self.black_adj))

    def __repr__(self):
        return f"BipartiteGraph(nB={self.nB}, nW={self.nW}, m={self.m})"


def parse_graph(text: str) -> BipartiteGraph:
    """Read the ``p bip <nB> <nW> <m>`` / ``e <i> <j>`` text format (1-based)."""
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: second header")
            if len(tok) != 5 or tok[1] != "bip":
                raise ParseError(f"line {lineno}: expected 'p bip <nB> <nW> <m>'")
            try:
                header = tuple(int(t) for t in tok[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header field") from None
            if min(header) < 0:
                raise ParseError(f"line {lineno}: negative header field")
        elif tok[0] == "e":
            if header is None:
                raise ParseError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise ParseError(f"line {lineno}: expected 'e <i> <j>'")
            try:
                i, j = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer vertex index") from None
            if not (1 <= i <= header[0] and 1 <= j <= header[1]):
                raise ParseError(f"line {lineno}: vertex index out of range")
            if (i, j) in seen:
                raise ParseError(f"line {lineno}: duplicate edge {i} {j}")
            seen.add((i, j))
            edges.append((i - 1, j - 1))
        else:
            raise ParseError(f"line {lineno}: unknown line type {tok[0]!r}")
    if header is None:
        raise ParseError("missing 'p bip' header")
    if len(edges) != header[2]:
        raise ParseError(f"header declares {header[2]} edges, found {len(edges)}")
    return BipartiteGraph(header[0], header[1], edges)


def format_graph(g: BipartiteGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p bip {g.nB} {g.nW} {g.m}")
    lines.extend(f"e {b + 1} {w + 1}" for b, w in g.edges())
    return "\n".join(lines) + "\n"


def bipartite_complement(g: BipartiteGraph) -> BipartiteGraph:
    full = g.all_whites
    return BipartiteGraph.from_black_adjacency(
        g.nB, g.nW, [full & ~row for row in g.black_adj], g.labels
    )


def _twin_classes(adj, color, mask) -> list[frozenset]:
    groups: dict[int, list[int]] = {}
    for i in iter_bits(mask):
        groups.setdefault(adj[i], []).append(i)
    return [frozenset((color, i) for i in idx) for idx in groups.values() if len(idx) > 1]


def find_twins(g: BipartiteGraph) -> list[frozenset]:
    """Classes (size >= 2) of same-colored vertices with equal neighborhoods."""
    classes = _twin_classes(g.black_adj, BLACK, g.all_blacks)
    classes += _twin_classes(g.white_adj, WHITE, g.all_whites)
    return sorted(classes, key=min)


def components_within(g: BipartiteGraph, bm: int, wm: int, complement: bool = False):
    """Connected components of ``G[bm, wm]`` (or of its bipartite complement).

    Components come out ordered by their smallest ``(color, index)`` vertex.
    """
    out = []
    ub, uw = bm, wm
    badj, wadj = g.black_adj, g.white_adj
    while ub or uw:
        if ub:
            fb, fw = ub & -ub, 0
        else:
            fb, fw = 0, uw & -uw
        ub &= ~fb
        uw &= ~fw
        cb, cw = fb, fw
        while fb or fw:
            nw = nb = 0
            if complement:
                for i in iter_bits(fb):
                    nw |= uw & ~badj[i]
                    if nw == uw:
                        break
                for j in iter_bits(fw):
                    nb |= ub & ~wadj[j]
                    if nb == ub:
                        break
            else:
                for i in iter_bits(fb):
                    nw |= badj[i]
                for j in iter_bits(fw):
                    nb |= wadj[j]
            nw &= uw
            nb &= ub
            uw &= ~nw
            ub &= ~nb
            cb |= nb
            cw |= nw
            fb, fw = nb, nw
        out.append((cb, cw))
    return out


def connected_components(g: BipartiteGraph) -> list[list[Vertex]]:
    return [from_masks(cb, cw) for cb, cw in components_within(g, g.all_blacks, g.all_whites)]


def is_biclique_masks(g: BipartiteGraph, bm: int, wm: int) -> bool:
    return all(g.black_adj[i] & wm == wm for i in iter_bits(bm))


def is_biclique(g: BipartiteGraph, s: Iterable[Vertex]) -> bool:
    bm, wm = to_masks(s)
    return is_biclique_masks(g, bm, wm)


def induced_subgraph(g: BipartiteGraph, s: Iterable[Vertex]):
    """Return ``(h, mapping)``; ``mapping`` sends each vertex of h to its vertex in g."""
    bm, wm = to_masks(s)
    blacks = list(iter_bits(bm))
    whites = list(iter_bits(wm))
    wpos = {w: k for k, w in enumerate(whites)}
    rows = []
    for b in blacks:
        row = 0
        for w in iter_bits(g.black_adj[b] & wm):
            row |= 1 << wpos[w]
        rows.append(row)
    labels = None
    if g.labels is not None:
        labels = tuple(
            None if names is None else [names[i] for i in idx]
            for names, idx in zip(g.labels, (blacks, whites))
        )
    h = BipartiteGraph.from_black_adjacency(len(blacks), len(whites), rows, labels)
    mapping = {(BLACK, k): (BLACK, b) for k, b in enumerate(blacks)}
    mapping.update({(WHITE, k): (WHITE, w) for k, w in enumerate(whites)})
    return h, mapping


def is_k13_free(g: BipartiteGraph) -> bool:
    # any vertex of degree >= 3 induces K_{1,3}: its neighbors share a color
    return all(row.bit_count() <= 2 for row in g.black_adj) and all(
        row.bit_count() <= 2 for row in g.white_adj
    )


def find_induced_star123(g: BipartiteGraph, limit: int = 64):
    """Search for an induced skew star (P6 plus a pendant on its third vertex).

    Returns the embedding as a dict with keys ``center``, ``leaf`` (the
    length-1 arm), ``arm2`` (2 vertices, center side first) and ``arm3``
    (3 vertices, center side first), or None.  Brute force; raises
    SizeLimit above ``limit`` vertices.
    """
    if g.n > limit:
        raise SizeLimit(f"{g.n} vertices exceeds validation limit {limit}")

    def nbrs(v):
        return [(v[0].other, i) for i in iter_bits(g.neighbors(v))]

    def adj(u, v):
        if u[0] == v[0]:
            return False
        b, w = (u, v) if u[0] == BLACK else (v, u)
        return g.has_edge(b[1], w[1])

    for c in g.vertices():
        around = nbrs(c)
        if len(around) < 3:
            continue
        for a1, a2, a3 in permutations(around, 3):
            for x2 in nbrs(a2):
                if x2 == c or adj(x2, a1) or adj(x2, a3):
                    continue
                for x3 in nbrs(a3):
                    if x3 in (c, x2) or adj(x3, a1) or adj(x3, a2):
                        continue
                    for y3 in nbrs(x3):
                        if y3 == a3 or adj(y3, c) or adj(y3, x2):
                            continue
                        return {"center": c, "leaf": a1, "arm2": (a2, x2), "arm3": (a3, x3, y3)}
    return None
