"""Association schemes stored as relation-index matrices.

A scheme on ``n`` points with ``r`` relations is an ``n x n`` integer matrix
``rel`` where ``rel[x, y]`` is the index of the relation containing ``(x, y)``.
Relation 0 is always the identity relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class SchemeError(ValueError):
    pass


class NotAPartition(SchemeError):
    pass


class BadIdentity(SchemeError):
    pass


class NotClosedUnderTranspose(SchemeError):
    pass


class NonConstantIntersection(SchemeError):
    def __init__(self, s, t, u, pair1, count1, pair2, count2):
        self.s, self.t, self.u = s, t, u
        self.pairs = (pair1, pair2)
        self.counts = (count1, count2)
        super().__init__(
            f"c[{s}][{t}][{u}] is not constant: pair {pair1} gives {count1}, "
            f"pair {pair2} gives {count2}"
        )


class NotAGroup(SchemeError):
    pass


@dataclass(frozen=True, eq=False)
class AssociationScheme:
    rel: np.ndarray
    star: tuple
    tensor: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.rel.shape[0]

    @property
    def r(self) -> int:
        return len(self.star)

    @property
    def valencies(self) -> list[int]:
        return [int(self.tensor[s, self.star[s], 0]) for s in range(self.r)]

    def adjacency(self, s: int) -> np.ndarray:
        return (self.rel == s).astype(np.int64)

    def is_symmetric(self, s: int) -> bool:
        return self.star[s] == s

    def is_thin(self) -> bool:
        return all(v == 1 for v in self.valencies)

    def __eq__(self, other):
        if not isinstance(other, AssociationScheme):
            return NotImplemented
        return np.array_equal(self.rel, other.rel)

    def __hash__(self):
        return hash(self.rel.tobytes())


def _check_shape(rel) -> np.ndarray:
    rel = np.asarray(rel, dtype=np.int64)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1] or rel.shape[0] == 0:
        raise NotAPartition(f"relation matrix must be square and non-empty, got {rel.shape}")
    if rel.min() < 0:
        raise NotAPartition("relation indices must be non-negative")
    return rel


def intersection_tensor(rel: np.ndarray, star: Sequence[int]) -> np.ndarray:
    """Return ``c[s, t, u]``, checking it is constant on every relation ``u``.

    ``|x s ∩ y t*|`` counts ``z`` with ``(x, z) in s`` and ``(z, y) in t``, so
    the counts over all pairs are the entries of ``A_s A_t``.
    """
    r = len(star)
    adj = np.stack([(rel == s) for s in range(r)]).astype(np.int64)
    prods = np.einsum("sxz,tzy->stxy", adj, adj)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for u in range(r):
        xs, ys = np.nonzero(rel == u)
        vals = prods[:, :, xs, ys]
        ref = vals[:, :, :1]
        bad = np.argwhere(vals != ref)
        if len(bad):
            s, t, k = (int(v) for v in bad[0])
            raise NonConstantIntersection(
                s, t, u,
                (int(xs[0]), int(ys[0])), int(vals[s, t, 0]),
                (int(xs[k]), int(ys[k])), int(vals[s, t, k]),
            )
        tensor[:, :, u] = ref[:, :, 0]
    return tensor


def verify_scheme(rel) -> AssociationScheme:
    rel = _check_shape(rel)
    n = rel.shape[0]
    r = int(rel.max()) + 1
    present = np.zeros(r, dtype=bool)
    present[np.unique(rel)] = True
    if not present.all():
        raise NotAPartition(f"relation indices missing: {np.flatnonzero(~present).tolist()}")
    diag = np.diag(rel)
    if (diag != 0).any():
        raise BadIdentity(f"diagonal entry {int(np.flatnonzero(diag != 0)[0])} is not relation 0")
    if int((rel == 0).sum()) != n:
        raise BadIdentity("relation 0 contains an off-diagonal pair")

    star = [-1] * r
    for s in range(r):
        xs, ys = np.nonzero(rel == s)
        images = np.unique(rel[ys, xs])
        if len(images) != 1:
            raise NotClosedUnderTranspose(
                f"transpose of relation {s} meets relations {images.tolist()}"
            )
        star[s] = int(images[0])
    for s in range(r):
        if star[star[s]] != s:
            raise NotClosedUnderTranspose(f"star is not an involution at {s}")
    # the image of each s has the same size as s, so star is a bijection
    rel = rel.copy()
    rel.setflags(write=False)
    return AssociationScheme(rel, tuple(star), intersection_tensor(rel, star))


def thin_residue(scheme: AssociationScheme) -> frozenset[int]:
    c = scheme.tensor
    closed = {u for s in range(scheme.r) for u in np.flatnonzero(c[s, scheme.star[s]])}
    closed = {int(u) for u in closed}
    while True:
        grown = set(closed)
        for a in closed:
            for b in closed:
                grown.update(int(u) for u in np.flatnonzero(c[a, b]))
        if grown == closed:
            return frozenset(closed)
        closed = grown


def wreath_product(w: AssociationScheme, y: AssociationScheme) -> AssociationScheme:
    """Wreath product with point ``(p, q)`` (p in w, q in y) encoded as ``q * |w| + p``.

    Relations of ``w`` keep their indices inside each fibre; a non-identity
    relation ``h`` of ``y`` becomes ``w.r + h - 1`` across fibres.
    """
    nw, ny = w.n, y.n
    p = np.arange(nw * ny) % nw
    q = np.arange(nw * ny) // nw
    same_fibre = q[:, None] == q[None, :]
    rel = np.where(
        same_fibre,
        w.rel[p[:, None], p[None, :]],
        w.r + y.rel[q[:, None], q[None, :]] - 1,
    )
    return verify_scheme(rel)


def relabel(scheme: AssociationScheme, order: Sequence[int]) -> AssociationScheme:
    """Same scheme with new point ``i`` being old point ``order[i]``."""
    order = np.asarray(order, dtype=np.int64)
    return verify_scheme(scheme.rel[order[:, None], order[None, :]])


def trivial(n: int) -> AssociationScheme:
    if n < 1:
        raise ValueError("n must be positive")
    return verify_scheme(1 - np.eye(n, dtype=np.int64))


def thin_group(table) -> AssociationScheme:
    """Thin scheme of a group given by its multiplication table (identity 0).

    ``rel[x][y]`` is the element ``g`` with ``y = x g``.
    """
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    if table.shape != (n, n):
        raise NotAGroup("table must be square")
    expected = np.arange(n)
    for i in range(n):
        if sorted(table[i]) != list(expected) or sorted(table[:, i]) != list(expected):
            raise NotAGroup("table is not a Latin square")
    if not (np.array_equal(table[0], expected) and np.array_equal(table[:, 0], expected)):
        raise NotAGroup("element 0 is not the identity")
    # (xy)z == x(yz) for all triples
    idx = np.arange(n)
    left = table[table[:, :, None], idx[None, None, :]]
    right = table[idx[:, None, None], table[None, :, :]]
    if not np.array_equal(left, right):
        raise NotAGroup("table is not associative")
    rel = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for g in range(n):
            rel[x, table[x, g]] = g
    return verify_scheme(rel)


def generate_scheme(kind: str, arg) -> AssociationScheme:
    """``generate_scheme("trivial", n)`` or ``generate_scheme("thin_group", table)``."""
    if kind == "trivial":
        return trivial(int(arg))
    if kind == "thin_group":
        return thin_group(arg)
    raise ValueError(f"unknown scheme kind {kind!r}")


def algebraic_isomorphism(s1: AssociationScheme, s2: AssociationScheme) -> Optional[tuple]:
    """First relation bijection preserving intersection numbers, or None."""
    for iota in algebraic_isomorphisms(s1, s2):
        return iota
    return None


algebraic_iso_check = algebraic_isomorphism


def algebraic_isomorphisms(s1: AssociationScheme, s2: AssociationScheme):
    """Yield every relation bijection ``iota`` with ``c1[a,b,c] == c2[iota a, iota b, iota c]``."""
    if s1.n != s2.n or s1.r != s2.r:
        return
    r = s1.r
    c1, c2 = s1.tensor, s2.tensor
    v1, v2 = s1.valencies, s2.valencies

    def signature(s, sch, val):
        return (val[s], sch.star[s] == s)

    sig1 = [signature(s, s1, v1) for s in range(r)]
    sig2 = [signature(s, s2, v2) for s in range(r)]
    if sorted(sig1) != sorted(sig2):
        return
    iota = [-1] * r
    used = [False] * r

    def consistent(k):
        # check every triple whose largest index is k
        for a in range(k + 1):
            for b in range(k + 1):
                for c in (k,) if max(a, b) < k else range(k + 1):
                    if c1[a, b, c] != c2[iota[a], iota[b], iota[c]]:
                        return False
        return True

    def extend(k):
        if k == r:
            yield tuple(iota)
            return
        for t in range(r):
            if used[t] or sig2[t] != sig1[k]:
                continue
            iota[k] = t
            used[t] = True
            if consistent(k):
                yield from extend(k + 1)
            used[t] = False
        iota[k] = -1

    iota[0] = 0
    used[0] = True
    yield from extend(1)
