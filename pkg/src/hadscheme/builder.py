"""The doubled scheme S(H) on X x F2 x F2.

Point ``x_ab`` is packed as ``4*x + 2*a + b``.  Relation labels of the built
scheme, for a base scheme with ``k`` relations:

    0          identity
    1          t~     (x_ab, x_a(b+1))
    2 .. k     s~     s = label - 1, for every non-identity base relation s
    k + 1      r+     a != c and H^{T(a)}[x, y] == (-1)^(b+d)
    k + 2      r-     a != c otherwise
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .hadamard import HadamardMatrix
from .scheme import AssociationScheme, SchemeError, trivial, verify_scheme


class DimensionMismatch(SchemeError):
    pass


class DistanceMismatch(SchemeError):
    pass


def pack_point(x: int, a: int, b: int) -> int:
    return 4 * x + 2 * a + b


def unpack_point(p: int) -> tuple[int, int, int]:
    return p // 4, (p >> 1) & 1, p & 1


@dataclass(frozen=True, eq=False)
class BuiltScheme:
    scheme: AssociationScheme
    base: AssociationScheme
    hadamard: HadamardMatrix

    @property
    def k(self) -> int:
        return self.base.r

    @property
    def t(self) -> int:
        return 1

    @property
    def r_plus(self) -> int:
        return self.k + 1

    @property
    def r_minus(self) -> int:
        return self.k + 2

    def tilde(self, s: int) -> int:
        """Label of s~ for a non-identity base relation ``s``."""
        if not 1 <= s < self.k:
            raise ValueError(f"no lifted relation for base relation {s}")
        return s + 1

    @property
    def tilde_labels(self) -> list[int]:
        return list(range(2, self.k + 1))

    @property
    def labels(self) -> dict:
        out = {0: "1", 1: "t~"}
        for s in range(1, self.k):
            out[s + 1] = f"s{s}~"
        out[self.r_plus] = "r+"
        out[self.r_minus] = "r-"
        return out

    def label_line(self) -> str:
        return f"# labels: 1=t~ 2..{self.k}=s~ {self.k + 1}=r+ {self.k + 2}=r-"


def sh_relation_matrix(base: AssociationScheme, h: HadamardMatrix) -> np.ndarray:
    n = base.n
    if h.n != n:
        raise DimensionMismatch(f"scheme has {n} points but H has order {h.n}")
    k = base.r
    pts = np.arange(4 * n)
    x, a, b = pts // 4, (pts >> 1) & 1, pts & 1
    X, Y = x[:, None], x[None, :]
    A, C = a[:, None], a[None, :]
    B, D = b[:, None], b[None, :]

    hm = h.to_array()
    # (H^{T(a)})_{xy}: H for a = 0, H^T for a = 1
    h_entry = np.where(A == 0, hm[X, Y], hm[Y, X])
    parity = 1 - 2 * ((B + D) & 1)

    rel = np.where(h_entry == parity, k + 1, k + 2)
    same_side = A == C
    rel = np.where(same_side & (X != Y), base.rel[X, Y] + 1, rel)
    rel = np.where(same_side & (X == Y), np.where(B == D, 0, 1), rel)
    return rel


def build_sh(base: AssociationScheme, h: HadamardMatrix) -> BuiltScheme:
    return BuiltScheme(verify_scheme(sh_relation_matrix(base, h)), base, h)


def bfs_distances(adj: np.ndarray, source: int) -> np.ndarray:
    n = adj.shape[0]
    nbrs = [np.flatnonzero(adj[v]) for v in range(n)]
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in nbrs[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance_matrix(adj: np.ndarray) -> np.ndarray:
    return np.stack([bfs_distances(adj, v) for v in range(adj.shape[0])])


def hadamard_graph_scheme(h: HadamardMatrix) -> BuiltScheme:
    """S(H) over the trivial scheme, checked against the distances of Gamma(H)."""
    if h.n < 2:
        raise DimensionMismatch("the Hadamard graph needs order > 1")
    built = build_sh(trivial(h.n), h)
    rel = built.scheme.rel
    dist = distance_matrix(rel == built.r_plus)
    expected = np.select(
        [rel == 0, rel == built.r_plus, rel == 2, rel == built.r_minus, rel == 1],
        [0, 1, 2, 3, 4],
        default=-1,
    )
    if not np.array_equal(dist, expected):
        raise DistanceMismatch("distance classes of Gamma(H) disagree with the relations")
    return built


def graph_report(built: BuiltScheme) -> dict:
    """Bipartiteness, diameter and antipodality of the graph of r+."""
    rel = built.scheme.rel
    adj = rel == built.r_plus
    dist = distance_matrix(adj)
    side = (np.arange(rel.shape[0]) >> 1) & 1
    edges = np.argwhere(adj)
    bipartite = bool((side[edges[:, 0]] != side[edges[:, 1]]).all())
    diameter = int(dist.max()) if (dist >= 0).all() else -1
    # antipodal: "at distance 0 or diameter" is an equivalence relation
    far = (dist == diameter) | (dist == 0)
    antipodal = bool(np.array_equal(far.astype(int) @ far.astype(int) > 0, far))
    return {
        "bipartite": bipartite,
        "diameter": diameter,
        "antipodal": antipodal,
        "regular_valency": int(adj.sum(1)[0]) if len(set(adj.sum(1).tolist())) == 1 else None,
    }


def fission_check(built: BuiltScheme) -> bool:
    """For every s~ and every (y, x) in s~, exactly one antipode of x lies in y s~."""
    rel = built.scheme.rel
    t_rel = rel == built.t
    for lab in built.tilde_labels:
        mask = rel == lab
        # |x t~ ∩ y s~| for all (y, x) at once
        counts = mask.astype(np.int64) @ t_rel.T.astype(np.int64)
        if not (counts[mask] == 1).all():
            return False
    return True


def point_map_relation_map(
    src: AssociationScheme, dst: AssociationScheme, phi: np.ndarray
) -> Optional[dict]:
    """Relation bijection induced by the point bijection ``phi``, if it exists."""
    phi = np.asarray(phi)
    if sorted(phi.tolist()) != list(range(src.n)) or src.n != dst.n or src.r != dst.r:
        return None
    image = dst.rel[phi[:, None], phi[None, :]]
    mapping: dict = {}
    for s in range(src.r):
        vals = np.unique(image[src.rel == s])
        if len(vals) != 1:
            return None
        mapping[s] = int(vals[0])
    if len(set(mapping.values())) != src.r:
        return None
    return mapping


def _map_from(n: int, f: Callable[[int, int, int], tuple]) -> np.ndarray:
    return np.array([pack_point(*f(*unpack_point(p))) for p in range(4 * n)])


def lemma_maps(n: int, y: int = 0) -> dict:
    """The five point maps, with alpha_y and beta_y for the given ``y``."""

    def alpha(x, a, b):
        return (x, a, b ^ a ^ 1) if x == y else (x, a, b)

    def beta(x, a, b):
        return (x, a, b ^ a) if x == y else (x, a, b)

    return {
        "i": _map_from(n, lambda x, a, b: (x, a ^ 1, b)),
        "ii": _map_from(n, alpha),
        "iii": _map_from(n, beta),
        "iv": _map_from(n, lambda x, a, b: (x, a, b ^ a ^ 1)),
        "v": _map_from(n, lambda x, a, b: (x, a, b ^ a)),
    }


def lemma_maps_verify(base: AssociationScheme, h: HadamardMatrix, detail: bool = False) -> dict:
    """Check the five explicit isomorphisms from S(H).

    Targets: (i) S(H^T); (ii) S(D_y H) via alpha_y; (iii) S(H D_y) via beta_y;
    (iv), (v) S(-H).  Items (ii) and (iii) are checked for every ``y``.
    """
    src = build_sh(base, h).scheme
    n = h.n
    targets = {
        "i": build_sh(base, h.T).scheme,
        "iv": build_sh(base, -h).scheme,
        "v": build_sh(base, -h).scheme,
    }
    maps0 = lemma_maps(n)
    result = {}
    relmaps = {}
    for name in ("i", "iv", "v"):
        m = point_map_relation_map(src, targets[name], maps0[name])
        result[name] = m is not None
        relmaps[name] = m
    for name, negate in (("ii", "negate_row"), ("iii", "negate_col")):
        ok = True
        for y in range(n):
            target = build_sh(base, getattr(h, negate)(y)).scheme
            m = point_map_relation_map(src, target, lemma_maps(n, y)[name])
            ok = ok and m is not None
            if y == 0:
                relmaps[name] = m
        result[name] = ok
    if detail:
        return {"ok": result, "relation_maps": relmaps}
    return result
