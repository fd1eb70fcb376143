import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeblift.errors import NotAuxiliaryCase, SuccessorUndefined
from reeblift.lifts import minimal_heights
from reeblift.reeb import augmented_pre_reeb, pre_reeb
from reeblift.towers import deletion_A
from reeblift.type_a import (
    class_subset,
    mask_subset,
    nu_A,
    subset_classes,
    subset_mask,
    successor_A,
    verify_boolean_iso,
    verify_total_order_A,
    witness_pair_A,
)
from reeblift.weak import weak_leq_A


def test_class_subset_examples():
    assert class_subset((1, 2, 3, 4)) == 0
    assert mask_subset(class_subset((4, 1, 2, 3))) == {1, 2, 3}
    assert mask_subset(class_subset((1, 4, 2, 3))) == {2, 3}


def test_nu_A_examples():
    assert nu_A(set()) == 0
    assert nu_A({1, 2}) == 3
    assert nu_A({2}) == 2
    assert nu_A(0b101) == 5


def test_successor_A_examples():
    assert successor_A(set(), 3) == subset_mask({1})
    assert successor_A({1}, 3) == subset_mask({2})
    assert successor_A({1, 2}, 4) == subset_mask({3})
    with pytest.raises(SuccessorUndefined):
        successor_A({1, 2}, 3)


@pytest.mark.parametrize("n", range(2, 7))
def test_successor_adds_one(n):
    full = (1 << (n - 1)) - 1
    for A in range(full):
        B = successor_A(A, n)
        assert nu_A(B) == nu_A(A) + 1
        # set-level description: m = min of the complement, drop everything below m, add m
        S = mask_subset(A)
        m = min(set(range(1, n)) - S)
        assert mask_subset(B) == {i for i in S if i >= m} | {m}


def test_witness_pair_example():
    v, w = witness_pair_A({1}, 3)
    assert (v, w) == ((2, 3, 1), (1, 3, 2))
    assert not weak_leq_A(v, w) and not weak_leq_A(w, v)
    with pytest.raises(NotAuxiliaryCase):
        witness_pair_A({2}, 3)


@pytest.mark.parametrize("n", range(3, 7))
def test_witnesses_land_on_scanned_auxiliary_edges(n):
    rg = augmented_pre_reeb(deletion_A(n))
    aux = rg.edges("auxiliary")
    for A in range(1, (1 << (n - 1)) - 1, 2):
        v, w = witness_pair_A(A, n)
        assert (rg.class_of(v), rg.class_of(w)) in aux


@pytest.mark.parametrize("n,vertices,edges", [(2, 2, 1), (3, 4, 4), (4, 8, 12), (5, 16, 32)])
def test_boolean_iso(n, vertices, edges):
    rep = verify_boolean_iso(n)
    assert rep.ok, rep.failures()
    assert rep.data == {"vertices": vertices, "edges": edges}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_total_order(n):
    rep = verify_total_order_A(n)
    assert rep.ok, rep.failures()
    assert rep.data["vertices"] == 2 ** (n - 1)


def test_total_order_n3_chain():
    rg = augmented_pre_reeb(deletion_A(3))
    sub = subset_classes(rg)
    h = minimal_heights(rg)
    assert [sub[c] for c in sorted(rg.classes, key=h.get)] == [0b00, 0b01, 0b10, 0b11]


def test_rank_bounds():
    with pytest.raises(ValueError):
        verify_boolean_iso(7)
    with pytest.raises(ValueError):
        verify_total_order_A(1)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_class_subset_is_constant_on_classes(w):
    w = tuple(w)
    n = len(w)
    assert mask_subset(class_subset(w)) == set(w[w.index(n) + 1:])
    rg = pre_reeb(deletion_A(n))
    assert subset_classes(rg)[rg.class_of(w)] == class_subset(w)
