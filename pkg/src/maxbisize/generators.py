"""Test corpora: base families and graphs expanded from random tree specs."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .decomposition import (
    BaseInfo,
    DecompNode,
    DecompositionTree,
    Kind,
    Shape,
    bimodularwidth,
    build_canonical_tree,
    build_lozin_tree,
    quotient_within,
    _recursive_split,
)
from .errors import BadParameter, BadSpec, NotInClass, TwinsProduced
from .graph import BLACK, WHITE, BipartiteGraph, Color, bipartite_complement, find_twins, iter_bits, to_masks

# --- base families ---------------------------------------------------------------


def _path_order(n):
    return [(Color(k % 2), k // 2) for k in range(n)]


def gen_base(shape, n: int) -> BipartiteGraph:
    """Path, cycle or their bipartite complements, vertices numbered along the walk.

    Path vertex k is black when k is even and has index k // 2 in its class.
    """
    shape = Shape(shape)
    if shape in (Shape.PATH, Shape.COPATH):
        if n < 2:
            raise BadParameter("paths need n >= 2")
        order = _path_order(n)
        edges = [(a[1], b[1]) if a[0] == BLACK else (b[1], a[1]) for a, b in zip(order, order[1:])]
        g = BipartiteGraph((n + 1) // 2, n // 2, edges)
    else:
        if n < 4 or n % 2:
            raise BadParameter("cycles need even n >= 4")
        k = n // 2
        g = BipartiteGraph(k, k, [(i, i) for i in range(k)] + [(i, (i - 1) % k) for i in range(k)])
    return bipartite_complement(g) if shape in (Shape.COPATH, Shape.COCYCLE) else g


def base_order(shape, n: int) -> list:
    """Vertex order along the underlying path or cycle of ``gen_base(shape, n)``."""
    return _path_order(n)


# --- specs --------------------------------------------------------------------------------

@dataclass
class TreeSpec:
    """Recursive description of a graph by its decomposition.

    ``kind`` is one of leaf, parallel, series, ks, base, prime.  Leaves carry
    a ``color``; bases a ``shape`` and size ``n``; primes name a library
    quotient in ``prime`` and list one slot per child, each slot a pair of
    quotient indices ``(black or None, white or None)``.
    """

    kind: str
    children: list = field(default_factory=list)
    color: Color | None = None
    shape: Shape | None = None
    n: int = 0
    prime: str | None = None
    slots: list = field(default_factory=list)
    seed: int | None = None

    @property
    def leaf_count(self) -> int:
        if self.kind == "leaf":
            return 1
        if self.kind == "base":
            return self.n
        return sum(c.leaf_count for c in self.children)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "leaf":
            out["color"] = "black" if self.color == BLACK else "white"
        elif self.kind == "base":
            out.update(shape=Shape(self.shape).value, n=self.n)
        else:
            if self.kind == "prime":
                out.update(prime=self.prime, slots=[list(s) for s in self.slots])
            out["children"] = [c.to_dict() for c in self.children]
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def leaf(color) -> TreeSpec:
    return TreeSpec("leaf", color=Color(color))


def parallel(*children) -> TreeSpec:
    return TreeSpec("parallel", list(children))


def series(*children) -> TreeSpec:
    return TreeSpec("series", list(children))


def ks(*children) -> TreeSpec:
    return TreeSpec("ks", list(children))


def base(shape, n) -> TreeSpec:
    return TreeSpec("base", shape=Shape(shape), n=n)


def prime(name, slots, children) -> TreeSpec:
    return TreeSpec("prime", list(children), prime=name, slots=[tuple(s) for s in slots])


# --- prime library ------------------------------------------------------------------------

def _is_bimodule_prime(h: BipartiteGraph) -> bool:
    from .oracle import oracle_bimodules

    if h.n < 4 or find_twins(h) or _recursive_split(h, h.all_blacks, h.all_whites) is not None:
        return False
    return all(len(c) == 1 for c in oracle_bimodules(h).canonical_partition)


def _random_primes(sizes, seed: int) -> list:
    """One verified prime per requested vertex count, by rejection sampling."""
    rng = random.Random(seed)
    found = []
    seen = set()
    for n in sizes:
        while True:
            nb = rng.randint(2, n - 2)
            nw = n - nb
            p = rng.uniform(0.25, 0.65)
            h = BipartiteGraph(nb, nw, [(i, j) for i in range(nb) for j in range(nw) if rng.random() < p])
            if h not in seen and _is_bimodule_prime(h):
                seen.add(h)
                found.append(h)
                break
    return found


@lru_cache(maxsize=None)
def prime_library() -> dict:
    """Verified bimodule-prime quotients keyed by name."""
    lib = {"P7": gen_base(Shape.PATH, 7), "C8": gen_base(Shape.CYCLE, 8)}
    for k, h in enumerate(_random_primes((7, 7, 8, 9, 10, 12), seed=2024)):
        lib[f"R{k}"] = h
    for name, h in lib.items():
        if not _is_bimodule_prime(h):
            raise BadSpec(f"library graph {name} is not bimodule-prime")
    return lib


# --- expansion ------------------------------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.nB = 0
        self.nW = 0
        self.rows = []  # black adjacency masks

    def alloc(self, color):
        if color == BLACK:
            self.rows.append(0)
            self.nB += 1
            return self.nB - 1
        self.nW += 1
        return self.nW - 1

    def join(self, bm, wm):
        for b in iter_bits(bm):
            self.rows[b] |= wm

    def expand(self, spec: TreeSpec) -> DecompNode:
        kind = spec.kind
        if kind == "leaf":
            if spec.color is None:
                raise BadSpec("leaf without a color")
            i = self.alloc(spec.color)
            return DecompNode(Kind.LEAF, 1 << i if spec.color == BLACK else 0, 1 << i if spec.color == WHITE else 0)
        if kind == "base":
            g = gen_base(spec.shape, spec.n)
            bmap = [self.alloc(BLACK) for _ in range(g.nB)]
            wmap = [self.alloc(WHITE) for _ in range(g.nW)]
            for b, row in enumerate(g.black_adj):
                for w in iter_bits(row):
                    self.rows[bmap[b]] |= 1 << wmap[w]
            order = [(c, bmap[i] if c == BLACK else wmap[i]) for c, i in base_order(spec.shape, spec.n)]
            bm, wm = to_masks(order)
            return DecompNode(Kind.BASE, bm, wm, base=BaseInfo(Shape(spec.shape), order))
        if kind in ("parallel", "series", "ks", "prime"):
            if len(spec.children) < 2:
                raise BadSpec(f"{kind} needs at least two children")
            kids = [self.expand(c) for c in spec.children]
            node = DecompNode(Kind(kind), 0, 0, kids)
            for k in kids:
                node.blacks |= k.blacks
                node.whites |= k.whites
            if kind == "series":
                for a in kids:
                    for c in kids:
                        if a is not c:
                            self.join(a.blacks, c.whites)
            elif kind == "ks":
                for x, a in enumerate(kids):
                    later = 0
                    for c in kids[x + 1:]:
                        later |= c.whites
                    self.join(a.blacks, later)
            elif kind == "prime":
                self._wire_prime(spec, kids)
            return node
        raise BadSpec(f"unknown spec kind {kind!r}")

    def _wire_prime(self, spec, kids):
        lib = prime_library()
        if spec.prime not in lib:
            raise BadSpec(f"unknown library prime {spec.prime!r}")
        h = lib[spec.prime]
        if len(spec.slots) != len(kids):
            raise BadSpec("prime spec needs one slot per child")
        used_b, used_w = set(), set()
        for (qb, qw), kid in zip(spec.slots, kids):
            if (qb is not None) != bool(kid.blacks) or (qw is not None) != bool(kid.whites):
                raise BadSpec("slot colors do not match the child")
            if qb is not None:
                used_b.add(qb)
            if qw is not None:
                used_w.add(qw)
        if used_b != set(range(h.nB)) or used_w != set(range(h.nW)):
            raise BadSpec("slots must cover every quotient vertex exactly once")
        for (qb, _), a in zip(spec.slots, kids):
            if qb is None:
                continue
            for (_, qw), c in zip(spec.slots, kids):
                if a is not c and qw is not None and h.has_edge(qb, qw):
                    self.join(a.blacks, c.whites)


def gen_from_spec(spec: TreeSpec, check_twins: bool = True):
    """Expand ``spec`` into ``(graph, intended tree)``."""
    bld = _Builder()
    root = bld.expand(spec)
    g = BipartiteGraph.from_black_adjacency(bld.nB, bld.nW, bld.rows)
    for node in DecompositionTree(root).nodes():
        if node.kind == Kind.PRIME:
            node.quotient = quotient_within(g, [(k.blacks, k.whites) for k in node.children])
    if check_twins:
        twins = find_twins(g)
        if twins:
            raise TwinsProduced(f"spec produces twin classes {[sorted(t) for t in twins]}")
    return g, DecompositionTree(root)


# --- random specs -------------------------------------------------------------------------------------

_BASE_SHAPES = (Shape.PATH, Shape.CYCLE, Shape.COPATH, Shape.COCYCLE)


def _random_base(rng, size):
    shape = rng.choice(_BASE_SHAPES)
    if shape in (Shape.CYCLE, Shape.COCYCLE):
        size = max(4, size - size % 2)
    return base(shape, max(2, size))


def _random_spec(rng, size, primes, max_base=10):
    """Random spec with roughly ``size`` leaves."""
    if size <= 1:
        return leaf(rng.choice((BLACK, WHITE)))
    if size <= 3:
        return _random_base(rng, 2) if rng.random() < 0.5 else leaf(rng.choice((BLACK, WHITE)))
    if primes and rng.random() < 0.35:
        name = rng.choice(primes)
        return _random_prime(rng, size, name, max_base)
    if size <= max_base and rng.random() < 0.4:
        return _random_base(rng, size)
    kind = rng.choice(("parallel", "series", "ks"))
    arity = rng.randint(2, min(4, size))
    cuts = sorted(rng.sample(range(1, size), arity - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [size])]
    return TreeSpec(kind, [_random_spec(rng, s, primes, max_base) for s in sizes])


def _random_prime(rng, size, name, max_base=10):
    h = prime_library()[name]
    blacks = list(range(h.nB))
    rng.shuffle(blacks)
    taken_w = set()
    slots = []
    budget = size - h.n
    for b in blacks:
        free = [w for w in range(h.nW) if h.has_edge(b, w) and w not in taken_w]
        if free and budget > 0 and rng.random() < 0.5:
            w = rng.choice(free)
            taken_w.add(w)
            slots.append((b, w))
        else:
            slots.append((b, None))
    slots += [(None, w) for w in range(h.nW) if w not in taken_w]
    pairs = [s for s in slots if s[0] is not None and s[1] is not None]
    children = []
    extra = budget
    for s in slots:
        if s[0] is not None and s[1] is not None:
            share = max(2, extra // max(1, len(pairs)) + 2)
            children.append(_random_two_color(rng, share, max_base))
        else:
            children.append(leaf(BLACK if s[0] is not None else WHITE))
    return prime(name, slots, children)


def _random_two_color(rng, size, max_base=10):
    for _ in range(20):
        spec = _random_spec(rng, size, (), max_base)
        probe = _Builder()
        node = probe.expand(spec)
        if node.blacks and node.whites:
            return spec
    return base(Shape.PATH, max(2, min(size, max_base)))


def gen_random(n: int, kind: str = "lozin", max_width: int = 7, seed: int = 0, attempts: int = 500):
    """Random twin-free instance with about ``n`` vertices.

    Returns ``(graph, intended tree, spec)``.  ``"lozin"`` instances contain
    no Prime nodes and must be accepted by ``build_lozin_tree``; canonical instances
    draw primes with at most ``max_width`` vertices from the library.
    """
    if kind not in ("lozin", "canonical"):
        raise BadParameter(f"unknown kind {kind!r}")
    if n < 1:
        raise BadParameter("n must be positive")
    rng = random.Random(seed)
    primes = ()
    if kind == "canonical":
        primes = tuple(k for k, h in prime_library().items() if h.n <= max_width)
    for _ in range(attempts):
        spec = _random_spec(rng, n, primes, max_width if kind == "canonical" else 10)
        spec.seed = seed
        try:
            g, t = gen_from_spec(spec)
        except TwinsProduced:
            continue
        if kind == "lozin":
            try:
                build_lozin_tree(g)
            except NotInClass:
                continue
        elif bimodularwidth(build_canonical_tree(g)) > max_width:
            # substitution occasionally creates a larger prime by coincidence
            continue
        return g, t, spec
    raise TwinsProduced(f"no twin-free instance after {attempts} attempts (n={n}, seed={seed})")


# --- benchmark family -----------------------------------------------------------------------------

def spks_spec(n: int, leaf_size: int = 8) -> TreeSpec:
    """Balanced series / parallel / K+S tree over paths of ``leaf_size`` vertices.

    Path bases with at least 6 vertices have neither universal nor isolated
    vertices, and each of the three operations preserves that, so no twins
    can arise.
    """
    if leaf_size < 6:
        raise BadParameter("leaf paths need at least 6 vertices")
    count = max(1, n // leaf_size)
    level = [base(Shape.PATH, leaf_size) for _ in range(count)]
    ops = ("series", "parallel", "ks")
    depth = 0
    while len(level) > 1:
        kind = ops[depth % 3]
        nxt = [TreeSpec(kind, level[k:k + 2]) for k in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        depth += 1
    return level[0]
