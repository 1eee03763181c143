"""K-orbits on an equivalence class of Hadamard matrices.

States are ``bytes`` with one byte per row (bit ``y`` of byte ``x`` set when
entry ``(x, y)`` is -1), which restricts this module to order <= 8.  A column
permutation is one ``bytes.translate`` call and a row permutation is a byte
gather, so applying a generator costs a couple of C-level calls.

Two modes:

* ``full``: states are all matrices of the class; generators include single
  row and column negations.
* ``normalized``: states are the normalized matrices of the class; every
  generator is followed by normalization.  Every K-orbit contains exactly one
  sign class per normalized member, so orbits correspond one to one.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Optional, Sequence

from .groups import PermGroup, SchemeGroups
from .hadamard import HadamardMatrix
from .scheme import AssociationScheme

MAX_ORDER = 8
FULL_MODE_MAX_ORDER = 4


class OrderUnsupported(ValueError):
    pass


class DisjointSet:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        parent = self.parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # smaller index wins so the roots are scheduling independent
            if ri < rj:
                self.parent[rj] = ri
            else:
                self.parent[ri] = rj


def to_state(h: HadamardMatrix) -> bytes:
    return bytes(h.rows)


def from_state(state: bytes) -> HadamardMatrix:
    return HadamardMatrix(len(state), tuple(state))


def state_word(state: bytes) -> int:
    """Packed 64-bit word (row ``x`` in byte ``x``)."""
    return int.from_bytes(state, "little")


def _col_table(tau: Sequence[int], n: int) -> bytes:
    # new bit y <- old bit tau[y]
    return bytes(
        sum(((b >> tau[y]) & 1) << y for y in range(n)) if b < (1 << n) else 0
        for b in range(256)
    )


def _xor_table(mask: int) -> bytes:
    return bytes((b ^ mask) & 0xFF for b in range(256))


def _norm_tables(n: int) -> list:
    full = (1 << n) - 1

    def fix(b):
        return b ^ full if b & 1 else b

    return [bytes(fix(b ^ r) if b < (1 << n) else 0 for b in range(256)) for r in range(256)]


class _Engine:
    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        self.norm = _norm_tables(n)

    def normalize(self, s: bytes) -> bytes:
        return s.translate(self.norm[s[0]])

    def perm_op(self, sigma: Sequence[int], tau: Sequence[int]):
        """State map for ``H -> P_sigma^{-1} H P_tau``."""
        table = _col_table(tau, self.n)
        if self.n == 1:
            return lambda s: s.translate(table)
        gather = itemgetter(*sigma)
        return lambda s: bytes(gather(s)).translate(table)

    def row_flip_op(self, x: int):
        n, full = self.n, self.full

        def op(s: bytes) -> bytes:
            b = bytearray(s)
            b[x] ^= full
            return bytes(b)

        return op

    def col_flip_op(self, y: int):
        table = _xor_table(1 << y)
        return lambda s: s.translate(table)

    def transpose(self, s: bytes) -> bytes:
        n = self.n
        return bytes(sum(((s[x] >> y) & 1) << x for x in range(n)) for y in range(n))


def _symmetric_generators(n: int) -> list[tuple]:
    if n == 1:
        return []
    ident = list(range(n))
    swap = ident[:]
    swap[0], swap[1] = 1, 0
    cycle = ident[1:] + ident[:1]
    return [tuple(swap), tuple(cycle)]


@dataclass
class OrbitPartition:
    n: int
    mode: str
    states: dict = field(repr=False)
    orbit_of: list = field(repr=False)
    orbit_reps: list
    orbit_state_counts: list
    similarity_of_orbit: list
    sign_class_size: int

    @property
    def orbit_sizes(self) -> list[int]:
        """Sizes of the K-orbits as sets of matrices, in orbit-id order."""
        return [c * self.sign_class_size for c in self.orbit_state_counts]

    @property
    def num_orbits(self) -> int:
        return len(self.orbit_reps)

    @property
    def similarity_classes(self) -> int:
        return len(set(self.similarity_of_orbit))

    @property
    def states_enumerated(self) -> int:
        return len(self.states)

    def orbit_id(self, h: HadamardMatrix) -> int:
        """Orbit of ``h``; in normalized mode ``h`` is normalized first."""
        s = to_state(h)
        if self.mode == "normalized":
            s = _Engine(self.n).normalize(s)
        return self.orbit_of[self.states[s]]

    def similarity_id(self, h: HadamardMatrix) -> int:
        return self.similarity_of_orbit[self.orbit_id(h)]

    def report(self, scheme_id: str, wall_time_ms: Optional[int] = None) -> dict:
        return {
            "scheme_id": scheme_id,
            "mode": self.mode,
            "orbit_sizes": sorted(self.orbit_sizes, reverse=True),
            "k_orbits": self.num_orbits,
            "similarity_classes": self.similarity_classes,
            "states_enumerated": self.states_enumerated,
            "wall_time_ms": wall_time_ms,
        }


def enumerate_class(h0: HadamardMatrix, mode: str) -> list[bytes]:
    """All members (or normalized members) of the equivalence class of ``h0``."""
    n = h0.n
    eng = _Engine(n)
    ident = tuple(range(n))
    ops = []
    for p in _symmetric_generators(n):
        ops.append(eng.perm_op(p, ident))
        ops.append(eng.perm_op(ident, p))
    start = to_state(h0)
    if mode == "full":
        ops += [eng.row_flip_op(x) for x in range(n)]
        ops += [eng.col_flip_op(y) for y in range(n)]
    else:
        ops = [(lambda op: lambda s: eng.normalize(op(s)))(op) for op in ops]
        start = eng.normalize(start)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for op in ops:
                t = op(s)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        order.extend(nxt)
        frontier = nxt
    return sorted(order, key=state_word)


def k_generators(groups: SchemeGroups, seed: int = 0) -> list[tuple]:
    """Permutation parts ``(sigma, tau)`` generating K modulo the sign pairs."""
    n = groups.scheme.n
    ident = tuple(range(n))
    gens = [(a, ident) for a in groups.aut.generators(seed)]
    gens += [(s, s) for s in groups.iso.generators(seed)]
    return gens


def k_orbits(
    scheme: AssociationScheme,
    h0: HadamardMatrix,
    mode: Optional[str] = None,
    groups: Optional[SchemeGroups] = None,
    seed: int = 0,
) -> OrbitPartition:
    n = scheme.n
    if h0.n != n:
        raise ValueError("the matrix and the scheme have different orders")
    if mode is None:
        mode = "full" if n <= FULL_MODE_MAX_ORDER else "normalized"
    if mode not in ("full", "normalized"):
        raise ValueError(f"unknown mode {mode!r}")
    if n > MAX_ORDER or (mode == "full" and n > FULL_MODE_MAX_ORDER):
        raise OrderUnsupported(f"mode {mode} does not support order {n}")
    if groups is None:
        groups = SchemeGroups.of(scheme)

    eng = _Engine(n)
    states_list = enumerate_class(h0, mode)
    index = {s: i for i, s in enumerate(states_list)}

    ops = [eng.perm_op(s, t) for s, t in k_generators(groups, seed)]
    if mode == "full":
        ops += [eng.row_flip_op(x) for x in range(n)]
        ops += [eng.col_flip_op(y) for y in range(n)]
    else:
        ops = [(lambda op: lambda s: eng.normalize(op(s)))(op) for op in ops]

    ds = DisjointSet(len(states_list))
    for i, s in enumerate(states_list):
        for op in ops:
            ds.union(i, index[op(s)])

    # orbit ids in order of their minimal state
    roots: dict = {}
    orbit_of = []
    counts: list = []
    reps = []
    for i, s in enumerate(states_list):
        root = ds.find(i)
        if root not in roots:
            roots[root] = len(reps)
            reps.append(s)
            counts.append(0)
        oid = roots[root]
        orbit_of.append(oid)
        counts[oid] += 1

    merge = DisjointSet(len(reps))
    for oid, s in enumerate(reps):
        t = eng.transpose(s)
        if mode == "normalized":
            t = eng.normalize(t)
        merge.union(oid, orbit_of[index[t]])
    sim = [merge.find(o) for o in range(len(reps))]
    sim_ids = {root: k for k, root in enumerate(dict.fromkeys(sim))}

    return OrbitPartition(
        n=n,
        mode=mode,
        states=index,
        orbit_of=orbit_of,
        orbit_reps=reps,
        orbit_state_counts=counts,
        similarity_of_orbit=[sim_ids[r] for r in sim],
        sign_class_size=1 if mode == "full" else 2 ** (2 * n - 1),
    )


def orbit_report_line(scheme_id: str, scheme: AssociationScheme, h0: HadamardMatrix, **kw) -> str:
    start = time.perf_counter()
    part = k_orbits(scheme, h0, **kw)
    ms = int(round((time.perf_counter() - start) * 1000))
    return json.dumps(part.report(scheme_id, ms), sort_keys=True)
