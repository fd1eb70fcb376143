import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeblift.errors import FiberNotChain, RankTooSmall
from reeblift.poset import build_poset, find_subposet_isomorphic
from reeblift.towers import (
    bottom_section,
    check_section_condition,
    deletion,
    deletion_A,
    deletion_B,
    fiber,
    format_projection,
    make_projection,
    parse_projection,
    top_section,
    validate_cylindrical,
)


def diamond_onto_chain():
    # the middle rank {1, 2} becomes a fiber; it is an antichain
    P = build_poset(range(4), [(0, 1), (0, 2), (1, 3), (2, 3)])
    Q = build_poset("ab", [("a", "b")])
    return make_projection(P, Q, {0: "b", 1: "a", 2: "a", 3: "b"})


def test_deletion_A_examples():
    pr = deletion_A(2)
    assert pr((1, 2)) == (1,) and pr((2, 1)) == (1,)
    pr3 = deletion_A(3)
    assert pr3((2, 3, 1)) == (2, 1) and pr3((2, 1, 3)) == (2, 1)
    assert fiber(deletion_A(4), (3, 2, 1)) == [(3, 2, 1, 4), (3, 2, 4, 1), (3, 4, 2, 1), (4, 3, 2, 1)]
    with pytest.raises(RankTooSmall):
        deletion_A(1)


def test_deletion_B_examples():
    pr = deletion_B(2)
    assert pr((-2, 1)) == (1,)
    assert fiber(pr, (1,)) == [(1, 2), (2, 1), (-2, 1), (1, -2)]
    assert deletion_B(3)((2, -3, -1)) == (2, -1)
    assert len(deletion_B(1).codomain) == 1
    with pytest.raises(RankTooSmall):
        deletion_B(0)


def test_fiber_type_A():
    assert fiber(deletion_A(3), (1, 2)) == [(1, 2, 3), (1, 3, 2), (3, 1, 2)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sections_type_A(n):
    pr = deletion_A(n)
    b, t = bottom_section(pr), top_section(pr)
    for v in pr.codomain.elements:
        assert b[v] == v + (n,)
        assert t[v] == (n,) + v


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sections_type_B(n):
    pr = deletion_B(n)
    b, t = bottom_section(pr), top_section(pr)
    for v in pr.codomain.elements:
        assert b[v] == v + (n,)
        assert t[v] == v + (-n,)


def test_cylindrical_examples():
    assert validate_cylindrical(deletion_A(4)).ok
    assert validate_cylindrical(deletion_B(3)).ok
    rep = validate_cylindrical(diamond_onto_chain())
    assert not rep.ok and not rep.fiber_condition
    assert rep.fiber_condition.witness == ("a", 1, 2)
    assert not rep.cover_condition
    assert not check_section_condition(diamond_onto_chain())
    with pytest.raises(FiberNotChain):
        fiber(diamond_onto_chain(), "a")


def test_short_fiber_is_reported():
    P = build_poset("xyz", [("x", "y"), ("y", "z")])
    Q = build_poset("ab", [("a", "b")])
    rep = validate_cylindrical(make_projection(P, Q, {"x": "a", "y": "a", "z": "b"}))
    assert rep.cover_condition and not rep.fiber_condition
    assert rep.fiber_condition.witness == ("b",)


def test_surjectivity_required():
    P = build_poset("xy", [("x", "y")])
    Q = build_poset("ab", [("a", "b")])
    with pytest.raises(ValueError):
        make_projection(P, Q, {"x": "a", "y": "a"})


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 1), ("B", 2), ("B", 3)])
def test_deletion_invariants(kind, n):
    pr = deletion(kind, n)
    assert validate_cylindrical(pr).ok
    size = n if kind == "A" else 2 * n
    assert {len(m) for m in pr.preimage_indices()} == {size}
    P, Q = pr.domain, pr.codomain
    b, t = bottom_section(pr), top_section(pr)
    assert len(set(b.values()) | set(t.values())) == 2 * len(Q)
    for sec in (b, t):
        assert find_subposet_isomorphic(P, Q, [sec[q] for q in Q.elements]) is not None
    up = P.up
    for i in range(len(P)):
        for j in range(len(P)):
            if up[i] >> j & 1:
                assert Q.up[pr.mapping[i]] >> pr.mapping[j] & 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_fiber_is_insertions_of_n(w):
    n = len(w)
    pr = deletion_A(n)
    base = pr(tuple(w))
    got = fiber(pr, base)
    assert got == [base[:k] + (n,) + base[k:] for k in range(n - 1, -1, -1)]


def test_projection_text_round_trip():
    pr = deletion_B(2)
    text = format_projection(pr)
    back = parse_projection(text)
    assert back.mapping == pr.mapping
    assert back.domain.labels == pr.domain.labels
    assert validate_cylindrical(back).ok
    with pytest.raises(ValueError):
        parse_projection(text + "x 1 2\n")
