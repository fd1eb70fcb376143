"""Deletion ``S_n -> S_{n-1}``: subset classes, binary valuation, successor map.

A horizontal class is the set of letters to the right of ``n``, stored as a
bitmask over ``[n-1]`` with letter ``i`` at bit ``i-1``.  The binary valuation
is then the bitmask itself.
"""

from __future__ import annotations

from typing import Iterable

from .errors import NotAuxiliaryCase, SuccessorUndefined, WitnessInvalid
from .lifts import minimal_heights
from .poset import (
    _bits,
    boolean_lattice,
    find_subposet_isomorphic,
    format_subset,
    is_total_order,
    reachability_poset,
)
from .reeb import (
    augmented_pre_reeb,
    check_acyclic,
    pre_reeb,
    verify_witnesses,
)
from .report import Report
from .towers import deletion_A
from .weak import inv_A, weak_leq_A


def subset_mask(A: Iterable[int] | int) -> int:
    if isinstance(A, int):
        return A
    m = 0
    for i in A:
        m |= 1 << (i - 1)
    return m


def mask_subset(m: int) -> frozenset:
    return frozenset(i + 1 for i in _bits(m))


def class_subset(w) -> int:
    """Letters strictly right of ``n`` in ``w``, as a bitmask."""
    n = len(w)
    return subset_mask(w[w.index(n) + 1:])


def nu_A(A) -> int:
    return subset_mask(A)


def successor_A(A, n: int) -> int:
    """``(A minus [m-1]) + {m}`` with ``m = min([n-1] minus A)``."""
    A = subset_mask(A)
    full = (1 << (n - 1)) - 1
    if A == full:
        raise SuccessorUndefined(f"{format_subset(A)} is the full set")
    m = (~A & (A + 1)).bit_length()
    return (A & ~((1 << (m - 1)) - 1)) | 1 << (m - 1)


def witness_pair_A(A, n: int) -> tuple:
    """Representatives ``(v, w)`` of ``A`` and ``s(A)`` realizing the auxiliary edge, for ``1 in A``.

    ``v = dec(complement of A) n dec(A)``, ``w = inc(complement of s(A)) n inc(s(A))``.
    """
    A = subset_mask(A)
    if not A & 1:
        raise NotAuxiliaryCase("A -> s(A) is a vertical edge when 1 is not in A")
    B = successor_A(A, n)
    rest = range(1, n)
    v = (tuple(sorted((i for i in rest if not A >> (i - 1) & 1), reverse=True)) + (n,)
         + tuple(sorted(mask_subset(A), reverse=True)))
    w = (tuple(i for i in rest if not B >> (i - 1) & 1) + (n,) + tuple(sorted(mask_subset(B))))
    problem = _witness_problem(v, w, A, B, n)
    if problem:
        raise WitnessInvalid(problem)
    return v, w


def _witness_problem(v, w, A, B, n) -> str | None:
    if class_subset(v) != A or class_subset(w) != B:
        return "witness words lie in the wrong classes"
    pv = tuple(a for a in v if a != n)
    pw = tuple(a for a in w if a != n)
    if not inv_A(pw) < inv_A(pv):
        return "pi(w) < pi(v) fails"
    if weak_leq_A(v, w) or weak_leq_A(w, v):
        return "witness words are comparable"
    return None


def subset_classes(rg) -> dict:
    """Class id -> subset bitmask, read off a representative."""
    return {c: class_subset(rg.representative(c)) for c in rg.classes}


def verify_boolean_iso(n: int) -> Report:
    """Pre-Reeb graph of ``S_n -> S_{n-1}`` versus the Hasse diagram of subsets of ``[n-1]``."""
    if not 2 <= n <= 6:
        raise ValueError("verify_boolean_iso needs 2 <= n <= 6")
    rep = Report(f"type A pre-Reeb graph, n={n}")
    pr = deletion_A(n)
    rg = pre_reeb(pr)
    P = pr.domain
    sub = subset_classes(rg)
    bad = next(((c, P.elements[i]) for c, members in enumerate(rg.partition.members)
                for i in members if class_subset(P.elements[i]) != sub[c]), None)
    rep.check("subset is constant on horizontal classes", bad is None, bad)
    rep.check(f"classes biject onto subsets of [{n - 1}] ({1 << (n - 1)})",
              sorted(sub.values()) == list(range(1 << (n - 1))), sorted(sub.values()))
    got = {(sub[a], sub[b]) for a, b in rg.edges()}
    want = {(A, A | 1 << i) for A in range(1 << (n - 1)) for i in range(n - 1) if not A >> i & 1}
    rep.check(f"edges are exactly A -> A+{{a}} ({len(want)})", got == want,
              sorted(got ^ want)[:3])
    rep.check("all edges vertical", rg.edges() == rg.edges("vertical"))
    rep.check("pre-Reeb graph acyclic", check_acyclic(rg), check_acyclic(rg).witness)
    B = boolean_lattice(n - 1)
    inv = {m: c for c, m in sub.items()}
    if len(inv) == len(B):
        reeb = reachability_poset(rg.graph)
        iso = find_subposet_isomorphic(reeb, B, [inv[m] for m in B.elements])
        rep.check("Reeb poset is the Boolean lattice", iso is not None)
    rep.data.update(vertices=len(rg.classes), edges=len(rg.edges()))
    return rep


def verify_total_order_A(n: int) -> Report:
    """Augmented pre-Reeb graph of ``S_n -> S_{n-1}`` is the chain ordered by the valuation."""
    if not 2 <= n <= 6:
        raise ValueError("verify_total_order_A needs 2 <= n <= 6")
    rep = Report(f"type A augmented pre-Reeb graph, n={n}")
    pr = deletion_A(n)
    rg = augmented_pre_reeb(pr)
    sub = subset_classes(rg)
    cls = {m: c for c, m in sub.items()}
    acyc = check_acyclic(rg)
    rep.check("augmented graph acyclic", acyc, acyc.witness)
    wit = verify_witnesses(rg)
    rep.check("stored edge witnesses valid", wit, wit.witness)
    alt = augmented_pre_reeb(pr, oracle="inversions")
    rep.check("auxiliary edges agree under the inversion oracle",
              alt.graph.edges == rg.graph.edges, sorted(alt.graph.edges ^ rg.graph.edges)[:3])
    bad = sorted((format_subset(sub[a]), format_subset(sub[b]), k)
                 for a, b, k in rg.graph.edges if not sub[b] > sub[a])
    rep.check("every edge increases nu", not bad, bad[:3])

    full = (1 << (n - 1)) - 1
    vert, aux = rg.edges("vertical"), rg.edges("auxiliary")
    missing, wrong_kind, bad_witness = [], [], []
    for A in range(full):
        B = successor_A(A, n)
        e = (cls[A], cls[B])
        if not A & 1:
            if e not in vert:
                missing.append((format_subset(A), "vertical"))
        else:
            if e not in aux:
                missing.append((format_subset(A), "auxiliary"))
            if e in vert:
                wrong_kind.append(format_subset(A))
            try:
                witness_pair_A(A, n)
            except WitnessInvalid as exc:
                bad_witness.append((format_subset(A), str(exc)))
    rep.check("nu(s(A)) = nu(A) + 1", all(nu_A(successor_A(A, n)) == A + 1 for A in range(full)))
    rep.check("successor edges present (vertical iff 1 not in A)", not missing, missing[:3])
    rep.check("successor edges with 1 in A are not vertical", not wrong_kind, wrong_kind[:3])
    rep.check("explicit auxiliary witnesses valid", not bad_witness, bad_witness[:3])

    if acyc:
        reach = reachability_poset(rg.graph)
        rep.check(f"augmented Reeb poset is a total order of size {1 << (n - 1)}",
                  is_total_order(reach) and len(reach) == 1 << (n - 1))
        mism = [(format_subset(sub[a]), format_subset(sub[b])) for a in rg.classes for b in rg.classes
                if reach.leq(a, b) != (sub[a] <= sub[b])]
        rep.check("total order is the nu order", not mism, mism[:3])
        h = minimal_heights(rg)
        rep.check("minimal heights equal nu", all(h[c] == sub[c] for c in rg.classes))
    rep.data.update(vertices=len(rg.classes), auxiliary=len(rg.edges("auxiliary")),
                    vertical=len(rg.edges("vertical")))
    return rep
