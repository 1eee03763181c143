"""Explicit small permutation groups, similarity of Hadamard matrices, and counting bounds.

Permutations are tuples ``p`` with ``p[x]`` the image of ``x``; products
compose right to left, ``(p * q)[x] = p[q[x]]``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .hadamard import HadamardMatrix, MonomialPair, apply_pair, aut_x0, iter_sign_vectors, normalize, permute
from .scheme import AssociationScheme

MAX_DEGREE = 8


class DegreeTooLarge(ValueError):
    pass


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for x, v in enumerate(p):
        inv[v] = x
    return tuple(inv)


def closure(gens: Iterable[Sequence[int]], degree: int) -> set:
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: tuple = field(repr=False)

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Sequence[int]]) -> PermGroup:
        return cls(degree, tuple(sorted(set(tuple(e) for e in elements))))

    @classmethod
    def symmetric(cls, degree: int) -> PermGroup:
        return cls(degree, tuple(itertools.permutations(range(degree))))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_group(self) -> bool:
        if tuple(range(self.degree)) not in self:
            return False
        s = self._set
        return all(inverse(p) in s for p in self.elements) and all(
            compose(p, q) in s for p in self.elements for q in self.elements
        )

    def is_normal_in(self, other: PermGroup) -> bool:
        s = self._set
        return all(compose(compose(g, a), inverse(g)) in s for g in other for a in self)

    def generators(self, seed: int = 0) -> list[tuple]:
        """A small generating set, chosen greedily in a seeded random order."""
        ident = tuple(range(self.degree))
        rng = random.Random(seed)
        pool = [e for e in self.elements if e != ident]
        rng.shuffle(pool)
        gens: list[tuple] = []
        span = {ident}
        for p in pool:
            if len(span) == self.order:
                break
            if p in span:
                continue
            gens.append(p)
            span = closure(gens, self.degree)
        return gens


def _all_perms(n: int) -> np.ndarray:
    if n > MAX_DEGREE:
        raise DegreeTooLarge(f"brute force over Sym({n}) is capped at degree {MAX_DEGREE}")
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _permuted_relations(scheme: AssociationScheme) -> tuple[np.ndarray, np.ndarray]:
    perms = _all_perms(scheme.n)
    images = scheme.rel[perms[:, :, None], perms[:, None, :]]
    return perms, images


def aut_group(scheme: AssociationScheme) -> PermGroup:
    perms, images = _permuted_relations(scheme)
    keep = (images == scheme.rel[None]).all(axis=(1, 2))
    return PermGroup.from_elements(scheme.n, map(tuple, perms[keep].tolist()))


def iso_group(scheme: AssociationScheme) -> PermGroup:
    """Point permutations that permute the relations among themselves."""
    perms, images = _permuted_relations(scheme)
    rel = scheme.rel
    reps = [tuple(np.argwhere(rel == s)[0]) for s in range(scheme.r)]
    # induced relation map of each permutation, read off one pair per relation
    induced = np.stack([images[:, x, y] for x, y in reps], axis=1)
    keep = (images == induced[:, rel]).all(axis=(1, 2))
    return PermGroup.from_elements(scheme.n, map(tuple, perms[keep].tolist()))


@dataclass
class SchemeGroups:
    """Aut and Iso of a scheme, computed once."""
    scheme: AssociationScheme
    aut: PermGroup
    iso: PermGroup

    @classmethod
    def of(cls, scheme: AssociationScheme) -> SchemeGroups:
        return cls(scheme, aut_group(scheme), iso_group(scheme))


def _sign_rank_one(e_rows: Sequence[int], full: int) -> bool:
    first = e_rows[0]
    return all(row == first or row == first ^ full for row in e_rows)


def _canonical_col(col: int, full: int) -> int:
    return col ^ full if col & 1 else col


def _similar_one_way(h1: HadamardMatrix, h2: HadamardMatrix, groups: SchemeGroups) -> bool:
    n = h1.n
    full = (1 << n) - 1
    h2_cols = [sum(((h2.rows[x] >> y) & 1) << x for x in range(n)) for y in range(n)]
    aut = groups.aut
    for sigma in groups.iso:
        # rows of P_sigma^{-1} h1: row x is h1 row sigma(x)
        a_rows = [h1.rows[sigma[x]] for x in range(n)]
        a_cols = [sum(((a_rows[x] >> c) & 1) << x for x in range(n)) for c in range(n)]
        lookup = {_canonical_col(col, full): c for c, col in enumerate(a_cols)}
        sig_inv = inverse(sigma)
        for j in range(n):
            # choose tau(0) = j; row signs are then fixed by column 0
            row_flip = a_cols[j] ^ h2_cols[0]
            tau = []
            for y in range(n):
                c = lookup.get(_canonical_col(h2_cols[y] ^ row_flip, full))
                if c is None:
                    break
                tau.append(c)
            else:
                if len(set(tau)) == n and compose(sig_inv, tau) in aut:
                    return True
    return False


def similar_check(
    h1: HadamardMatrix, h2: HadamardMatrix, scheme: AssociationScheme, groups: Optional[SchemeGroups] = None
) -> bool:
    """True iff ``h2`` or ``h2^T`` equals ``D P_sigma^{-1} h1 P_tau D'``
    with ``sigma, tau`` in Iso and ``sigma^{-1} tau`` in Aut.

    For each ``sigma`` and each choice of ``tau(0)`` the row signs are
    determined, and then ``tau`` is forced column by column, so the search is
    ``|Iso| * n`` candidates rather than ``|Iso| * |Aut|``.
    """
    if h1.n != h2.n or h1.n != scheme.n:
        raise ValueError("orders of the matrices and the scheme must agree")
    if groups is None:
        groups = SchemeGroups.of(scheme)
    return _similar_one_way(h1, h2, groups) or _similar_one_way(h1, h2.T, groups)


def similar_check_bruteforce(
    h1: HadamardMatrix, h2: HadamardMatrix, groups: SchemeGroups
) -> bool:
    """Literal search over ``Iso x Aut`` with the sign-rank-one test."""
    n = h1.n
    full = (1 << n) - 1
    targets = (h2, h2.T)
    for sigma in groups.iso:
        for alpha in groups.aut:
            m = permute(h1, sigma, compose(sigma, alpha))
            for t in targets:
                if _sign_rank_one([a ^ b for a, b in zip(m.rows, t.rows)], full):
                    return True
    return False


def lower_bound(aut_order: int, iso_order: int, aut_x0_order: int, n: int) -> tuple[Fraction, int]:
    """Count bound ``((n-1)!)^2 / (2 |Aut_x0(H)| |Aut| |Iso|)``, exact and rounded up."""
    if min(aut_order, iso_order, aut_x0_order, n) < 1:
        raise ValueError("all inputs must be positive")
    f = math.factorial(n - 1)
    value = Fraction(f * f, 2 * aut_x0_order * aut_order * iso_order)
    return value, max(1, math.ceil(value))


def sylvester_bound(n_exp: int) -> tuple[Fraction, int]:
    """The bound for the cyclic group of order 2^k and the Sylvester matrix of that order."""
    if not 1 <= n_exp <= 6:
        raise ValueError("n_exp must be in 1..6")
    m = 2 ** n_exp
    f = math.factorial(m - 1)
    denom = 2 ** (3 * n_exp)
    for i in range(n_exp):
        denom *= m - 2 ** i
    value = Fraction(f * f, denom)
    return value, max(1, math.ceil(value))


def gl2_order(n_exp: int) -> int:
    """``(2^k - 1)(2^k - 2) ... (2^k - 2^{k-1})``."""
    m = 2 ** n_exp
    return math.prod(m - 2 ** i for i in range(n_exp))


def claim_checks(scheme: AssociationScheme, h0: HadamardMatrix, x0: int = 0) -> dict:
    """Direct-enumeration checks of the stabilizer order, |K| and the G_x0-orbit size."""
    n = scheme.n
    if n > 4 or h0.n != n:
        raise DegreeTooLarge("exhaustive claim checks need n <= 4 and matching orders")
    groups = SchemeGroups.of(scheme)
    hn = normalize(h0)[0]
    ax0 = len(aut_x0(hn, x0))

    fixing = [p for p in itertools.permutations(range(n)) if p[x0] == x0]
    signs = list(iter_sign_vectors(n))
    stab = 0
    for sigma in fixing:
        for tau in fixing:
            for rs in signs:
                for cs in signs:
                    if apply_pair(MonomialPair(sigma, rs, tau, cs), hn) == hn:
                        stab += 1

    d_order = 2 ** n
    perm_pairs = sum(
        1 for s in groups.iso for t in groups.iso if compose(s, inverse(t)) in groups.aut
    )
    k_direct = perm_pairs * d_order ** 2
    k_formula = groups.iso.order * groups.aut.order * d_order ** 2

    gens = [MonomialPair.signs(s, (1,) * n) for s in _unit_signs(n)]
    gens += [MonomialPair.signs((1,) * n, s) for s in _unit_signs(n)]
    ident = tuple(range(n))
    for p in PermGroup(n, tuple(fixing)).generators():
        gens.append(MonomialPair.perms(p, ident))
        gens.append(MonomialPair.perms(ident, p))
    orbit = {hn.key}
    frontier = [hn]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                img = apply_pair(g, h)
                if img.key not in orbit:
                    orbit.add(img.key)
                    nxt.append(img)
        frontier = nxt
    f = math.factorial(n - 1)
    orbit_formula = Fraction(f * f * d_order ** 2, 2 * ax0)

    return {
        "aut_x0": ax0,
        "stabilizer_order": stab,
        "stabilizer_ok": stab == 2 * ax0,
        "k_order_direct": k_direct,
        "k_order_formula": k_formula,
        "k_order_ok": k_direct == k_formula,
        "gx0_orbit_size": len(orbit),
        "gx0_orbit_formula": orbit_formula,
        "orbit_ok": orbit_formula == len(orbit),
    }


def _unit_signs(n: int) -> list[tuple]:
    return [tuple(-1 if y == x else 1 for y in range(n)) for x in range(n)]
