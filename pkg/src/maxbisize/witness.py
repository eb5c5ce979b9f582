"""Biclique reconstruction from derivation records."""
from __future__ import annotations

from dataclasses import dataclass

from .engine import MaxbisizeSet
from .errors import ElementNotFound
from .graph import BipartiteGraph, from_masks, is_biclique_masks, to_masks


@dataclass(frozen=True)
class Witness:
    blacks: tuple  # black indices, ascending
    whites: tuple

    @property
    def size(self) -> tuple[int, int]:
        return len(self.blacks), len(self.whites)

    @property
    def masks(self) -> tuple[int, int]:
        return to_masks([(0, i) for i in self.blacks] + [(1, j) for j in self.whites])

    def vertices(self) -> list:
        return from_masks(*self.masks)


def reconstruct_masks(d: MaxbisizeSet, e) -> tuple[int, int]:
    """Union of the vertices contributed along the derivation of ``e``."""
    e = tuple(e)
    try:
        k = d.index(e)
    except ValueError:
        raise ElementNotFound(f"{e} is not in the maxbisize set") from None
    bm = wm = 0
    stack = [(d, k)]
    while stack:
        s, i = stack.pop()
        deriv = s.derivs[i]
        if deriv is None:
            raise ElementNotFound(f"element {s.sizes[i]} has no derivation")
        bm |= deriv.add[0]
        wm |= deriv.add[1]
        stack.extend(deriv.parts)
    return bm, wm


def reconstruct(g: BipartiteGraph, d: MaxbisizeSet, e) -> Witness:
    """A biclique of ``g`` whose size is exactly ``e``."""
    bm, wm = reconstruct_masks(d, e)
    blacks = tuple(i for c, i in from_masks(bm, 0))
    whites = tuple(j for c, j in from_masks(0, wm))
    return Witness(blacks, whites)


def trim(w: Witness, b: int, x: int) -> Witness:
    """Shrink to ``(b, x)`` keeping the lowest indices; subsets of bicliques are bicliques."""
    if b > len(w.blacks) or x > len(w.whites):
        raise ValueError("cannot grow a witness")
    return Witness(w.blacks[:b], w.whites[:x])


def verify_witness(g: BipartiteGraph, e, w: Witness) -> bool:
    if w.size != tuple(e):
        return False
    if any(not 0 <= i < g.nB for i in w.blacks) or any(not 0 <= j < g.nW for j in w.whites):
        return False
    return is_biclique_masks(g, *w.masks)
