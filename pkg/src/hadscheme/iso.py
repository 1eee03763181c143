"""Scheme isomorphism and automorphism counting by individualization-refinement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .scheme import AssociationScheme, algebraic_isomorphisms

MAX_ORDER = 32


class OrderTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ColorRefinement:
    point_colors: tuple
    rounds: int

    @property
    def num_colors(self) -> int:
        return len(set(self.point_colors))

    def is_discrete(self) -> bool:
        return self.num_colors == len(self.point_colors)


def _refine(rels: Sequence[np.ndarray], colors: Sequence[np.ndarray], r: int):
    """Jointly refine colorings of several relation matrices over the same labels.

    A point's new color is its old color together with the counts of
    ``(relation, color)`` over its row.  Colors are named by sorting the
    signatures of all structures together, so equal names mean equal
    signatures across structures.  Returns ``(colors, rounds)`` or ``None`` if
    the color histograms diverge.
    """
    n = rels[0].shape[0]
    colors = [np.asarray(c, dtype=np.int64) for c in colors]
    rounds = 0
    while True:
        ncol = int(max(c.max() for c in colors)) + 1
        sigs = []
        for rel, c in zip(rels, colors):
            keys = rel * ncol + c[None, :]
            counts = np.zeros((n, r * ncol), dtype=np.int64)
            np.add.at(counts, (np.repeat(np.arange(n), n), keys.ravel()), 1)
            sigs.append(np.concatenate([c[:, None], counts], axis=1))
        _, inv = np.unique(np.concatenate(sigs), axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        new = [inv[i * n:(i + 1) * n] for i in range(len(rels))]
        hist = [np.bincount(c, minlength=len(inv)) for c in new]
        if any(not np.array_equal(hist[0], h) for h in hist[1:]):
            return None
        rounds += 1
        if len(np.unique(new[0])) == len(np.unique(colors[0])):
            return new, rounds
        colors = new


def color_refinement(scheme: AssociationScheme, individualized: Sequence[int] = ()) -> ColorRefinement:
    colors = np.zeros(scheme.n, dtype=np.int64)
    for k, x in enumerate(individualized):
        colors[x] = k + 1
    out = _refine([scheme.rel], [colors], scheme.r)
    assert out is not None
    new, rounds = out
    return ColorRefinement(tuple(int(v) for v in new[0]), rounds)


def _search(rel1: np.ndarray, rel2: np.ndarray, r: int, c1: np.ndarray, c2: np.ndarray) -> Optional[np.ndarray]:
    out = _refine([rel1, rel2], [c1, c2], r)
    if out is None:
        return None
    (c1, c2), _ = out
    n = rel1.shape[0]
    cells, sizes = np.unique(c1, return_counts=True)
    if sizes.max() == 1:
        phi = np.empty(n, dtype=np.int64)
        where2 = {int(col): y for y, col in enumerate(c2)}
        for x in range(n):
            phi[x] = where2[int(c1[x])]
        if np.array_equal(rel2[phi[:, None], phi[None, :]], rel1):
            return phi
        return None
    # smallest non-singleton cell, lowest point in it
    target = min((int(s), int(col)) for col, s in zip(cells, sizes) if s > 1)[1]
    x = int(np.flatnonzero(c1 == target)[0])
    fresh = int(c1.max()) + 1
    for y in np.flatnonzero(c2 == target):
        d1, d2 = c1.copy(), c2.copy()
        d1[x] = fresh
        d2[y] = fresh
        phi = _search(rel1, rel2, r, d1, d2)
        if phi is not None:
            return phi
    return None


def _check_order(n: int) -> None:
    if n > MAX_ORDER:
        raise OrderTooLarge(f"isomorphism search is capped at order {MAX_ORDER}")


def scheme_isomorphic(s1: AssociationScheme, s2: AssociationScheme) -> Optional[tuple]:
    """``(point_map, relation_map)`` with ``rel2[phi x, phi y] == iota[rel1[x, y]]``, or None.

    Relation maps are restricted to algebraic isomorphisms (which preserve
    valency and symmetry); for each, the point map is found by
    individualization-refinement.
    """
    if s1.n != s2.n:
        return None
    _check_order(s1.n)
    zeros = np.zeros(s1.n, dtype=np.int64)
    for iota in algebraic_isomorphisms(s1, s2):
        back = np.empty(s1.r, dtype=np.int64)
        back[list(iota)] = np.arange(s1.r)
        phi = _search(s1.rel, back[s2.rel], s1.r, zeros, zeros)
        if phi is not None:
            return tuple(int(v) for v in phi), tuple(iota)
    return None


def _extends(rel: np.ndarray, r: int, pairs: Sequence[tuple]) -> bool:
    n = rel.shape[0]
    c1 = np.zeros(n, dtype=np.int64)
    c2 = np.zeros(n, dtype=np.int64)
    for k, (a, b) in enumerate(pairs):
        c1[a] = k + 1
        c2[b] = k + 1
    return _search(rel, rel, r, c1, c2) is not None


def scheme_aut_order(s: AssociationScheme) -> int:
    """|Aut| as a product of basic-orbit lengths along a stabilizer chain."""
    _check_order(s.n)
    order = 1
    base: list = []
    while True:
        ref = color_refinement(s, base)
        if ref.is_discrete():
            return order
        colors = np.array(ref.point_colors)
        cells, sizes = np.unique(colors, return_counts=True)
        target = min((int(sz), int(col)) for col, sz in zip(cells, sizes) if sz > 1)[1]
        members = np.flatnonzero(colors == target)
        x = int(members[0])
        fixed = [(b, b) for b in base]
        orbit = 1 + sum(1 for y in members[1:] if _extends(s.rel, s.r, fixed + [(x, int(y))]))
        order *= orbit
        base.append(x)
