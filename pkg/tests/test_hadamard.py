import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadscheme.hadamard import (
    H0,
    H1,
    H2,
    H3,
    BadInput,
    BadOrder,
    HadamardMatrix,
    MonomialPair,
    NotOrthogonal,
    OrderTooLarge,
    apply_pair,
    aut_x0,
    equivalence_check,
    iter_sign_vectors,
    normalize,
    permute,
    sylvester,
    verify_hadamard,
)

from conftest import random_equivalent, random_pair


def dense_apply(pair: MonomialPair, h: HadamardMatrix) -> np.ndarray:
    p, q = pair.matrices()
    return np.linalg.inv(p).round().astype(int) @ h.to_array() @ q


def test_h0_from_listing_is_valid():
    verify_hadamard(np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]]))
    for h in (H0, H1, H2, H3):
        assert h.is_normalized()


def test_order_one():
    h = verify_hadamard(np.array([[1]]))
    assert h.n == 1


def test_all_ones_not_orthogonal():
    with pytest.raises(NotOrthogonal) as info:
        verify_hadamard(np.ones((4, 4), dtype=int))
    assert info.value.rows == (0, 1)


def test_bad_order_and_entries():
    with pytest.raises(BadOrder):
        verify_hadamard(np.ones((3, 3), dtype=int))
    with pytest.raises(BadOrder):
        verify_hadamard(np.ones((2, 3), dtype=int))
    with pytest.raises(BadInput):
        verify_hadamard(np.zeros((2, 2), dtype=int))


def test_sylvester_small():
    assert sylvester(0).to_array().tolist() == [[1]]
    assert sylvester(1).to_array().tolist() == [[1, 1], [1, -1]]


@pytest.mark.parametrize("k", range(0, 7))
def test_sylvester_is_hadamard(k):
    h = sylvester(k)
    a = h.to_array()
    assert h.n == 2 ** k
    assert np.array_equal(a @ a.T, h.n * np.eye(h.n, dtype=int))
    assert h.is_normalized()


def test_packing_round_trip():
    h = sylvester(3)
    assert HadamardMatrix.from_key(8, h.key) == h
    assert h.key < 2 ** 64
    assert np.array_equal(h.T.to_array(), h.to_array().T)
    assert np.array_equal((-h).to_array(), -h.to_array())


def test_normalize_fixed_on_h0():
    n, rs, cs = normalize(H0)
    assert n == H0
    assert rs == cs == (1, 1, 1, 1)


def test_normalize_negated_h0_dense_oracle():
    m = -H0
    n, rs, cs = normalize(m)
    dense = np.diag(rs) @ m.to_array() @ np.diag(cs)
    assert np.array_equal(dense, n.to_array())
    assert n.is_normalized()
    assert normalize(n)[0] == n


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1, 2, 4, 8]))
@settings(max_examples=60, deadline=None)
def test_normalize_idempotent_and_sign_invariant(seed, n):
    rng = random.Random(seed)
    base = sylvester({1: 0, 2: 1, 4: 2, 8: 3}[n])
    h = random_equivalent(base, rng)
    norm = normalize(h)[0]
    assert normalize(norm)[0] == norm
    rs = tuple(rng.choice((1, -1)) for _ in range(n))
    cs = tuple(rng.choice((1, -1)) for _ in range(n))
    signed = apply_pair(MonomialPair.signs(rs, cs), h)
    assert normalize(signed)[0] == norm
    verify_hadamard(norm)


def test_identity_pair():
    assert apply_pair(MonomialPair.identity(4), H0) == H0


@pytest.mark.parametrize("x", range(4))
def test_row_sign_pair_negates_row(x):
    signs = tuple(-1 if i == x else 1 for i in range(4))
    assert apply_pair(MonomialPair.signs(signs, (1,) * 4), H0) == H0.negate_row(x)


def test_apply_pair_dense_oracle(rng):
    h = sylvester(2)
    for _ in range(50):
        pair = random_pair(4, rng)
        out = apply_pair(pair, h)
        assert np.array_equal(out.to_array(), dense_apply(pair, h))
        verify_hadamard(out)


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=100, deadline=None)
def test_action_property(seed):
    rng = random.Random(seed)
    h = random_equivalent(sylvester(3), rng)
    p1, p2 = random_pair(8, rng), random_pair(8, rng)
    assert apply_pair(p2, apply_pair(p1, h)) == apply_pair(p1.compose(p2), h)
    assert apply_pair(p1.inverse(), apply_pair(p1, h)) == h


def test_compose_matches_dense_product(rng):
    for _ in range(20):
        p1, p2 = random_pair(5, rng), random_pair(5, rng)
        a1, b1 = p1.matrices()
        a2, b2 = p2.matrices()
        a, b = p1.compose(p2).matrices()
        assert np.array_equal(a, a1 @ a2) and np.array_equal(b, b1 @ b2)


def test_permute_entries():
    sigma, tau = (0, 2, 3, 1), (0, 3, 1, 2)
    out = permute(H2, sigma, tau)
    for x, y in itertools.product(range(4), repeat=2):
        assert out.entry(x, y) == H2.entry(sigma[x], tau[y])


def brute_aut_x0(h: HadamardMatrix, x0: int = 0):
    n = h.n
    perms = [p for p in itertools.permutations(range(n)) if p[x0] == x0]
    return sorted((s, t) for s in perms for t in perms if permute(h, s, t) == h)


def test_aut_x0_h0():
    assert len(aut_x0(H0)) == 6
    assert aut_x0(H0) == brute_aut_x0(H0)


def test_aut_x0_sylvester8():
    assert len(aut_x0(sylvester(3))) == 168


def test_aut_x0_sylvester2_exhaustive():
    assert aut_x0(sylvester(1)) == brute_aut_x0(sylvester(1)) == [((0, 1), (0, 1))]


def test_aut_x0_threads_deterministic():
    h = sylvester(3)
    assert aut_x0(h, threads=4) == aut_x0(h, threads=1)


@pytest.mark.parametrize("h", [H0, H1, H2, H3, sylvester(3)])
def test_aut_x0_is_group(h):
    elems = set(aut_x0(h))
    for (s1, t1), (s2, t2) in itertools.product(elems, repeat=2):
        assert (tuple(s1[i] for i in s2), tuple(t1[i] for i in t2)) in elems
    for s, t in elems:
        si = tuple(sorted(range(len(s)), key=lambda i: s[i]))
        ti = tuple(sorted(range(len(t)), key=lambda i: t[i]))
        assert (si, ti) in elems


def test_aut_x0_other_fixed_point():
    h = sylvester(3)
    for s, t in aut_x0(h, 3):
        assert s[3] == 3 and t[3] == 3


def test_equivalence_order4():
    assert equivalence_check(H0, H1)
    assert equivalence_check(H0, -H0)
    assert equivalence_check(H2, H3.T)


def test_equivalence_orders_differ():
    with pytest.raises(BadInput):
        equivalence_check(sylvester(2), sylvester(3))


def test_equivalence_too_large():
    with pytest.raises(OrderTooLarge):
        equivalence_check(sylvester(4), sylvester(4))


def test_equivalence_random_members(rng):
    h = sylvester(3)
    for _ in range(5):
        assert equivalence_check(h, random_equivalent(h, rng))


def paley12() -> HadamardMatrix:
    # Paley construction from the quadratic residues mod 11
    q = 11
    residues = {(i * i) % q for i in range(1, q)}
    chi = lambda a: 0 if a % q == 0 else (1 if a % q in residues else -1)
    s = np.array([[chi(j - i) for j in range(q)] for i in range(q)])
    core = s - np.eye(q, dtype=int)
    m = np.ones((12, 12), dtype=int)
    m[1:, 0] = -1
    m[1:, 1:] = core + 0
    m[1:, 1:] = np.where(m[1:, 1:] == 0, 1, m[1:, 1:])
    # skew-Hadamard: I + S-like core with +1 diagonal
    m[1:, 1:] = np.array([[1 if i == j else chi(j - i) for j in range(q)] for i in range(q)])
    return verify_hadamard(m)


def test_equivalence_order12(rng):
    h = paley12()
    other = random_equivalent(h, rng)
    assert equivalence_check(h, other)


def test_sign_vectors():
    assert len(list(iter_sign_vectors(3))) == 8
