"""Bit-packed Hadamard matrices and monomial actions on them.

Row ``x`` is an ``n``-bit integer whose bit ``y`` is set when ``H[x, y] == -1``.
The whole matrix packs row-major into one integer (row ``x`` occupies bits
``x*n .. x*n+n-1``); for ``n <= 8`` it fits in a 64-bit word.

Monomial pairs act on the right: ``apply_pair(p, H) = P^{-1} H Q`` with
``P = diag(row_signs) P_row_perm`` and ``Q = diag(col_signs) P_col_perm``,
where ``P_s e_y = e_{s(y)}``.  Entrywise,
``(P^{-1} H Q)[x, y] = row_signs[s(x)] * H[s(x), t(y)] * col_signs[t(y)]``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

EQUIVALENCE_MAX_ORDER = 12


class HadamardError(ValueError):
    pass


class NotOrthogonal(HadamardError):
    def __init__(self, i: int, j: int):
        self.rows = (i, j)
        super().__init__(f"rows {i} and {j} are not orthogonal")


class BadOrder(HadamardError):
    pass


class OrderTooLarge(HadamardError):
    pass


class BadInput(HadamardError):
    pass


@dataclass(frozen=True)
class HadamardMatrix:
    n: int
    rows: tuple

    @property
    def key(self) -> int:
        """Packed row-major word, usable as a hash key."""
        out = 0
        for x, row in enumerate(self.rows):
            out |= row << (x * self.n)
        return out

    @classmethod
    def from_key(cls, n: int, key: int) -> HadamardMatrix:
        mask = (1 << n) - 1
        return cls(n, tuple((key >> (x * n)) & mask for x in range(n)))

    def entry(self, x: int, y: int) -> int:
        return -1 if (self.rows[x] >> y) & 1 else 1

    def to_array(self) -> np.ndarray:
        bits = np.array([[(row >> y) & 1 for y in range(self.n)] for row in self.rows], dtype=np.int64)
        return 1 - 2 * bits.reshape(self.n, self.n)

    @property
    def T(self) -> HadamardMatrix:
        return HadamardMatrix(self.n, tuple(_column(self.rows, y) for y in range(self.n)))

    def __neg__(self) -> HadamardMatrix:
        full = (1 << self.n) - 1
        return HadamardMatrix(self.n, tuple(row ^ full for row in self.rows))

    def negate_row(self, x: int) -> HadamardMatrix:
        rows = list(self.rows)
        rows[x] ^= (1 << self.n) - 1
        return HadamardMatrix(self.n, tuple(rows))

    def negate_col(self, y: int) -> HadamardMatrix:
        return HadamardMatrix(self.n, tuple(row ^ (1 << y) for row in self.rows))

    def is_normalized(self) -> bool:
        return self.rows[0] == 0 and all(row & 1 == 0 for row in self.rows)

    def __str__(self) -> str:
        return "\n".join(
            "".join("-" if (row >> y) & 1 else "+" for y in range(self.n)) for row in self.rows
        )


def _column(rows: Sequence[int], y: int) -> int:
    col = 0
    for x, row in enumerate(rows):
        col |= ((row >> y) & 1) << x
    return col


def _pack(matrix) -> tuple[int, tuple]:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise BadOrder(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.isin(m, (1, -1)).all():
        raise BadInput("entries must be +1 or -1")
    n = m.shape[0]
    rows = tuple(sum(1 << y for y in range(n) if m[x, y] == -1) for x in range(n))
    return n, rows


def verify_hadamard(matrix) -> HadamardMatrix:
    if isinstance(matrix, HadamardMatrix):
        n, rows = matrix.n, matrix.rows
    else:
        n, rows = _pack(matrix)
    if n > 2 and n % 4:
        raise BadOrder(f"order {n} is not 1, 2 or a multiple of 4")
    half = n // 2
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] ^ rows[j]).bit_count() != half:
                raise NotOrthogonal(i, j)
    return HadamardMatrix(n, rows)


def sylvester(k: int) -> HadamardMatrix:
    if not 0 <= k <= 16:
        raise BadInput("k must be in 0..16")
    rows = [0]
    n = 1
    for _ in range(k):
        full = (1 << n) - 1
        rows = [row | (row << n) for row in rows] + [row | ((row ^ full) << n) for row in rows]
        n *= 2
    return HadamardMatrix(n, tuple(rows))


def normalize(h: HadamardMatrix) -> tuple[HadamardMatrix, tuple, tuple]:
    """Negate columns to clear row 0, then rows to clear column 0.

    Returns ``(N, row_signs, col_signs)`` with ``N = D_rows H D_cols``.
    """
    n = h.n
    first = h.rows[0]
    col_signs = tuple(-1 if (first >> y) & 1 else 1 for y in range(n))
    full = (1 << n) - 1
    rows = []
    row_signs = []
    for row in h.rows:
        row ^= first
        if row & 1:
            rows.append(row ^ full)
            row_signs.append(-1)
        else:
            rows.append(row)
            row_signs.append(1)
    return HadamardMatrix(n, tuple(rows)), tuple(row_signs), col_signs


@dataclass(frozen=True)
class MonomialPair:
    row_perm: tuple
    row_signs: tuple
    col_perm: tuple
    col_signs: tuple

    @classmethod
    def identity(cls, n: int) -> MonomialPair:
        ident = tuple(range(n))
        ones = (1,) * n
        return cls(ident, ones, ident, ones)

    @classmethod
    def perms(cls, sigma: Sequence[int], tau: Sequence[int]) -> MonomialPair:
        ones = (1,) * len(sigma)
        return cls(tuple(sigma), ones, tuple(tau), ones)

    @classmethod
    def signs(cls, row_signs: Sequence[int], col_signs: Sequence[int]) -> MonomialPair:
        ident = tuple(range(len(row_signs)))
        return cls(ident, tuple(row_signs), ident, tuple(col_signs))

    @property
    def n(self) -> int:
        return len(self.row_perm)

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense ``(P, Q)``."""
        return (
            monomial_matrix(self.row_perm, self.row_signs),
            monomial_matrix(self.col_perm, self.col_signs),
        )

    def compose(self, other: MonomialPair) -> MonomialPair:
        """The pair ``(P1 P2, Q1 Q2)``; acting by it equals acting by ``self`` then ``other``."""
        rp, rs = _mono_mul(self.row_perm, self.row_signs, other.row_perm, other.row_signs)
        cp, cs = _mono_mul(self.col_perm, self.col_signs, other.col_perm, other.col_signs)
        return MonomialPair(rp, rs, cp, cs)

    def inverse(self) -> MonomialPair:
        rp, rs = _mono_inv(self.row_perm, self.row_signs)
        cp, cs = _mono_inv(self.col_perm, self.col_signs)
        return MonomialPair(rp, rs, cp, cs)


def monomial_matrix(perm: Sequence[int], signs: Sequence[int]) -> np.ndarray:
    n = len(perm)
    p = np.zeros((n, n), dtype=np.int64)
    p[list(perm), range(n)] = 1
    return np.diag(np.asarray(signs, dtype=np.int64)) @ p


def _mono_mul(p1, s1, p2, s2):
    # D1 P1 D2 P2 = D1 diag(s2 o p1^-1) P_{p1 p2}
    n = len(p1)
    inv1 = [0] * n
    for x, v in enumerate(p1):
        inv1[v] = x
    perm = tuple(p1[p2[x]] for x in range(n))
    signs = tuple(s1[z] * s2[inv1[z]] for z in range(n))
    return perm, signs


def _mono_inv(p, s):
    # (D P)^-1 = P^-1 D = diag(s o p) P^-1
    n = len(p)
    inv = [0] * n
    for x, v in enumerate(p):
        inv[v] = x
    return tuple(inv), tuple(s[p[z]] for z in range(n))


def apply_pair(pair: MonomialPair, h: HadamardMatrix) -> HadamardMatrix:
    n = h.n
    if pair.n != n:
        raise BadInput(f"pair of degree {pair.n} cannot act on order {n}")
    sigma, tau = pair.row_perm, pair.col_perm
    full = (1 << n) - 1
    col_flip = 0
    for y in range(n):
        if pair.col_signs[tau[y]] < 0:
            col_flip |= 1 << y
    rows = []
    for x in range(n):
        src = h.rows[sigma[x]]
        row = 0
        for y in range(n):
            row |= ((src >> tau[y]) & 1) << y
        row ^= col_flip
        if pair.row_signs[sigma[x]] < 0:
            row ^= full
        rows.append(row)
    return HadamardMatrix(n, tuple(rows))


def permute(h: HadamardMatrix, sigma: Sequence[int], tau: Sequence[int]) -> HadamardMatrix:
    """``P_sigma^{-1} H P_tau``, i.e. entry ``(x, y)`` is ``H[sigma x, tau y]``."""
    n = h.n
    rows = []
    for x in range(n):
        src = h.rows[sigma[x]]
        row = 0
        for y in range(n):
            row |= ((src >> tau[y]) & 1) << y
        rows.append(row)
    return HadamardMatrix(n, tuple(rows))


def _column_profiles(rows: Sequence[int], selected: Sequence[int], n: int) -> Counter:
    # multiset over columns of the bit-tuple read down the selected rows
    return Counter(
        tuple((rows[x] >> y) & 1 for x in selected) for y in range(n)
    )


def _forced_tau(h1: HadamardMatrix, h2: HadamardMatrix, sigma: Sequence[int]) -> Optional[tuple]:
    """The column map ``tau`` with ``h1[sigma x, tau y] == h2[x, y]``, if any."""
    n = h1.n
    cols1 = {}
    for c in range(n):
        cols1.setdefault(_column([h1.rows[sigma[x]] for x in range(n)], c), c)
    tau = []
    for y in range(n):
        c = cols1.get(_column(h2.rows, y))
        if c is None:
            return None
        tau.append(c)
    if len(set(tau)) != n:
        return None
    return tuple(tau)


def _perm_equivalences(
    h1: HadamardMatrix,
    h2: HadamardMatrix,
    fix: Optional[int] = None,
    first_only: bool = False,
    threads: int = 1,
) -> list[tuple]:
    """All ``(sigma, tau)`` with ``h1[sigma x, tau y] == h2[x, y]``.

    With ``fix`` set, both permutations must fix that point.  ``sigma`` is
    built row by row; a partial assignment survives only while the column
    profiles of the chosen rows of ``h1`` match those of ``h2``.
    """
    n = h1.n
    order = list(range(n))
    if fix is not None:
        order.remove(fix)
        order.insert(0, fix)

    def search(sigma: dict, used: set, depth: int, out: list):
        if depth == n:
            s = tuple(sigma[x] for x in range(n))
            tau = _forced_tau(h1, h2, s)
            if tau is not None and (fix is None or tau[fix] == fix):
                out.append((s, tau))
            return
        x = order[depth]
        chosen = order[:depth + 1]
        want = _column_profiles(h2.rows, chosen, n)
        for c in range(n):
            if c in used:
                continue
            sigma[x] = c
            if _column_profiles(h1.rows, [sigma[z] for z in chosen], n) == want:
                used.add(c)
                search(sigma, used, depth + 1, out)
                used.discard(c)
                if first_only and out:
                    return
            del sigma[x]

    if fix is not None:
        roots = [{fix: fix}]
        start = 1
    else:
        roots = [{}]
        start = 0
    if start < n and threads > 1 and not first_only:
        # split on the first free row; results are merged in branch order
        x = order[start]
        branches = []
        for root in roots:
            for c in range(n):
                if c not in root.values():
                    branches.append({**root, x: c})

        def run(branch):
            out: list = []
            used = set(branch.values())
            chosen = order[:start + 1]
            if _column_profiles(h1.rows, [branch[z] for z in chosen], n) == _column_profiles(h2.rows, chosen, n):
                search(dict(branch), used, start + 1, out)
            return out

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, branches))
        return sorted(item for part in results for item in part)

    out: list = []
    for root in roots:
        search(dict(root), set(root.values()), start, out)
        if first_only and out:
            break
    return sorted(out)


def aut_x0(h: HadamardMatrix, x0: int = 0, threads: int = 1) -> list[tuple]:
    """Sorted list of pairs ``(sigma, tau)`` fixing ``x0`` with ``P_sigma^{-1} H P_tau = H``."""
    return _perm_equivalences(h, h, fix=x0, threads=threads)


def _to_front(h: HadamardMatrix, i: int, j: int) -> HadamardMatrix:
    n = h.n
    sigma = list(range(n))
    sigma[0], sigma[i] = sigma[i], sigma[0]
    tau = list(range(n))
    tau[0], tau[j] = tau[j], tau[0]
    return permute(h, sigma, tau)


def equivalence_check(h1: HadamardMatrix, h2: HadamardMatrix) -> bool:
    """True iff ``h2`` is obtained from ``h1`` by row/column permutations and negations."""
    if h1.n != h2.n:
        raise BadInput(f"orders differ: {h1.n} vs {h2.n}")
    if h1.n > EQUIVALENCE_MAX_ORDER:
        raise OrderTooLarge(f"equivalence testing is capped at order {EQUIVALENCE_MAX_ORDER}")
    target = normalize(h2)[0]
    # any equivalence can be split into moving some (row i, col j) of h1 to
    # the corner, normalizing, and a permutation pair fixing the corner
    seen = set()
    for i in range(h1.n):
        for j in range(h1.n):
            cand = normalize(_to_front(h1, i, j))[0]
            if cand.key in seen:
                continue
            seen.add(cand.key)
            if _perm_equivalences(cand, target, fix=0, first_only=True):
                return True
    return False


def iter_sign_vectors(n: int) -> Iterator[tuple]:
    for mask in range(1 << n):
        yield tuple(-1 if (mask >> x) & 1 else 1 for x in range(n))


def from_rows(rows: Sequence[Sequence[int]]) -> HadamardMatrix:
    return verify_hadamard(np.asarray(rows))


# the four order-4 matrices listed alongside the order-4 orbit data
H0 = from_rows([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]])
H1 = from_rows([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
H2 = from_rows([[1, 1, 1, 1], [1, -1, -1, 1], [1, -1, 1, -1], [1, 1, -1, -1]])
H3 = from_rows([[1, 1, 1, 1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]])
