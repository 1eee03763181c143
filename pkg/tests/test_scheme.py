import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadscheme.catalogue import GROUP_TABLES, builtin_order8, cyclic_table, order4_schemes
from hadscheme.scheme import (
    BadIdentity,
    NonConstantIntersection,
    NotAGroup,
    NotAPartition,
    NotClosedUnderTranspose,
    algebraic_isomorphism,
    algebraic_isomorphisms,
    relabel,
    thin_group,
    thin_residue,
    trivial,
    verify_scheme,
    wreath_product,
)


def all_small_schemes():
    out = dict(order4_schemes())
    out.update({k: f() for k, f in builtin_order8().items()})
    out.update({f"trivial{n}": trivial(n) for n in (1, 2, 3, 5)})
    out["C2"] = thin_group(cyclic_table(2))
    return out


SMALL = all_small_schemes()


def test_trivial_rank_two():
    s = verify_scheme(1 - np.eye(4, dtype=int))
    assert s.valencies == [1, 3]
    assert s.tensor[1, 1, 0] == 3


def test_cyclic_thin_scheme():
    rel = [[(y - x) % 4 for y in range(4)] for x in range(4)]
    s = verify_scheme(rel)
    assert s.valencies == [1, 1, 1, 1]
    assert set(np.unique(s.tensor)) <= {0, 1}
    assert s.is_thin()


def test_not_closed_under_transpose():
    rel = np.array([
        [0, 1, 2, 2],
        [2, 0, 1, 1],
        [1, 2, 0, 2],
        [1, 2, 2, 0],
    ])
    with pytest.raises(NotClosedUnderTranspose):
        verify_scheme(rel)


def test_missing_relation_index():
    rel = np.array([[0, 2], [2, 0]])
    with pytest.raises(NotAPartition):
        verify_scheme(rel)


def test_bad_identity():
    with pytest.raises(BadIdentity):
        verify_scheme([[1, 0], [0, 1]])
    with pytest.raises(BadIdentity):
        verify_scheme([[0, 0], [0, 0]])


def test_non_constant_intersection_reports_witness():
    # path graph 0-1-2-3 plus identity and "non-edge": not a scheme
    rel = np.array([
        [0, 1, 2, 2],
        [1, 0, 1, 2],
        [2, 1, 0, 1],
        [2, 2, 1, 0],
    ])
    with pytest.raises(NonConstantIntersection) as info:
        verify_scheme(rel)
    err = info.value
    assert err.counts[0] != err.counts[1]
    (x1, y1), (x2, y2) = err.pairs
    assert rel[x1, y1] == rel[x2, y2] == err.u


@pytest.mark.parametrize("name", sorted(SMALL))
def test_valencies_sum_to_order(name):
    s = SMALL[name]
    assert sum(s.valencies) == s.n


@pytest.mark.parametrize("name", sorted(SMALL))
def test_transpose_identity_of_intersection_numbers(name):
    s = SMALL[name]
    c, st_, v = s.tensor, s.star, s.valencies
    for a, b, u in itertools.product(range(s.r), repeat=3):
        assert c[a, b, u] * v[u] == c[st_[b], st_[a], st_[u]] * v[st_[u]]


def test_tensor_matches_direct_count():
    s = SMALL["D4"]
    rel = s.rel
    for a, b, u in itertools.product(range(s.r), repeat=3):
        x, y = map(int, np.argwhere(rel == u)[0])
        direct = sum(1 for z in range(s.n) if rel[x, z] == a and rel[z, y] == b)
        assert s.tensor[a, b, u] == direct


def test_thin_residue_of_thin_scheme_is_identity_only():
    # every s s* is the identity for a group scheme
    assert thin_residue(thin_group(cyclic_table(4))) == {0}


def test_thin_residue_trivial():
    assert thin_residue(trivial(4)) == {0, 1}
    assert thin_residue(trivial(3)) == {0, 1}
    # order 2: the non-identity relation has valency 1
    assert thin_residue(trivial(2)) == {0}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_thin_residue_is_closed_equivalence(name):
    s = SMALL[name]
    res = thin_residue(s)
    for a in res:
        for b in res:
            assert set(np.flatnonzero(s.tensor[a, b]).tolist()) <= res
    eq = np.isin(s.rel, sorted(res))
    assert eq.diagonal().all()
    assert np.array_equal(eq, eq.T)
    assert np.array_equal((eq.astype(int) @ eq.astype(int)) > 0, eq)


def test_wreath_of_two_order_two_schemes():
    w = y = trivial(2)
    got = wreath_product(w, y)
    # independent enumeration of the 16 ordered pairs, (p, q) -> 2q + p
    counts = {}
    for (p1, q1), (p2, q2) in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        if q1 == q2:
            label = ("F", int(p1 != p2))
        else:
            label = ("H", 1)
        counts[label] = counts.get(label, 0) + 1
    assert got.n == 4 and got.r == len(counts) == 3
    assert sorted(got.valencies) == sorted(c // 4 for c in counts.values()) == [1, 1, 2]
    assert got.rel[0, 1] == 1 and got.rel[0, 2] == 2


def test_wreath_with_one_point_scheme():
    w = SMALL["AS4_3"]
    assert wreath_product(w, trivial(1)) == w


def test_wreath_order_multiplies():
    assert wreath_product(trivial(4), trivial(2)).n == 8


WREATH_INPUTS = [trivial(1), trivial(2), trivial(3), SMALL["AS4_2"], SMALL["AS4_4"], thin_group(cyclic_table(2))]


@given(st.sampled_from(WREATH_INPUTS), st.sampled_from(WREATH_INPUTS))
@settings(max_examples=30, deadline=None)
def test_wreath_product_is_a_scheme(w, y):
    if w.n * y.n > 8:
        return
    s = wreath_product(w, y)
    assert s.r == w.r + y.r - 1
    verify_scheme(s.rel)


def test_generated_schemes():
    c8 = thin_group(GROUP_TABLES["C8"]())
    assert c8.r == 8 and c8.valencies == [1] * 8
    assert trivial(8).r == 2


def test_thin_group_rejects_non_groups():
    with pytest.raises(NotAGroup):
        thin_group([[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        thin_group([[1, 0], [0, 1]])
    # Latin square with identity 0 that is not associative (order 5 loop)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup):
        thin_group(loop)


@pytest.mark.parametrize("name", ["Q8", "D4", "C4xC2", "C2xC2xC2", "C8"])
def test_group_tables_are_groups(name):
    s = thin_group(GROUP_TABLES[name]())
    assert s.n == 8 and s.is_thin()


def brute_algebraic_iso(s1, s2):
    if s1.r != s2.r:
        return None
    for perm in itertools.permutations(range(s1.r)):
        p = np.array(perm)
        if np.array_equal(s1.tensor, s2.tensor[p[:, None, None], p[None, :, None], p[None, None, :]]):
            return perm
    return None


def test_algebraic_iso_self():
    s = SMALL["AS4_3"]
    assert algebraic_isomorphism(s, s) == tuple(range(s.r))


def test_algebraic_iso_c4_vs_klein():
    c4, klein = SMALL["AS4_4"], SMALL["AS4_3"]
    assert brute_algebraic_iso(c4, klein) is None
    assert algebraic_isomorphism(c4, klein) is None


def test_algebraic_iso_order_mismatch():
    assert algebraic_isomorphism(trivial(4), trivial(8)) is None


@pytest.mark.parametrize("pair", [("AS4_4", "AS4_4"), ("D4", "C4xC2"), ("Q8", "D4"), ("AS8_2", "AS8_3"), ("C8", "C8")])
def test_algebraic_iso_agrees_with_brute_force(pair):
    s1, s2 = SMALL[pair[0]], SMALL[pair[1]]
    fast = sorted(algebraic_isomorphisms(s1, s2))
    brute = [
        perm for perm in itertools.permutations(range(s1.r))
        if np.array_equal(
            s1.tensor,
            s2.tensor[np.array(perm)[:, None, None], np.array(perm)[None, :, None], np.array(perm)[None, None, :]],
        )
    ] if s1.r == s2.r else []
    assert fast == sorted(brute)


def test_relabel_preserves_structure():
    s = SMALL["AS4_4"]
    t = relabel(s, (0, 2, 1, 3))
    assert t.valencies == s.valencies
    assert relabel(t, (0, 2, 1, 3)) == s


def test_generate_scheme_entry_point():
    from hadscheme.catalogue import cyclic_table
    from hadscheme.scheme import algebraic_iso_check, generate_scheme

    assert generate_scheme("trivial", 3) == trivial(3)
    c4 = generate_scheme("thin_group", cyclic_table(4))
    assert c4.valencies == [1, 1, 1, 1]
    assert algebraic_iso_check(c4, c4) is not None
    with pytest.raises(ValueError):
        generate_scheme("cube", 3)
