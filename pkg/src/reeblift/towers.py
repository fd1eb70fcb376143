"""Projections between posets, the type A/B deletion maps, and cylindricity checks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import FiberNotChain, RankTooSmall, UnknownElement
from .poset import Poset, _parse_poset_lines, format_poset
from .weak import weak_leq_A, weak_leq_B, weak_poset_A, weak_poset_B


@dataclass(frozen=True, eq=False)
class Projection:
    """A surjective map ``domain -> codomain`` stored as codomain indices per domain index.

    ``domain_leq``/``codomain_leq`` optionally supply an independent order
    oracle on element keys (the inversion-set comparison for weak orders).
    """

    domain: Poset
    codomain: Poset
    mapping: tuple
    kind: str | None = None
    rank: int | None = None
    domain_leq: Callable | None = None
    codomain_leq: Callable | None = None

    def __post_init__(self):
        if len(self.mapping) != len(self.domain):
            raise ValueError("mapping must assign every domain element")
        if set(self.mapping) != set(range(len(self.codomain))):
            raise ValueError("projection is not surjective")

    def __repr__(self):
        name = f"deletion_{self.kind}({self.rank})" if self.kind else "Projection"
        return f"<{name}: {len(self.domain)} -> {len(self.codomain)}>"

    def __call__(self, x):
        return self.codomain.elements[self.mapping[self.domain.idx(x)]]

    def preimage_indices(self) -> list[list[int]]:
        pre = [[] for _ in range(len(self.codomain))]
        for i, q in enumerate(self.mapping):
            pre[q].append(i)
        return pre


def make_projection(domain: Poset, codomain: Poset, fn) -> Projection:
    """Projection from a function or mapping on element keys."""
    get = fn.__getitem__ if isinstance(fn, dict) else fn
    return Projection(domain, codomain, tuple(codomain.idx(get(x)) for x in domain.elements))


def _delete(w, n):
    return tuple(a for a in w if abs(a) != n)


@lru_cache(maxsize=None)
def deletion_A(n: int) -> Projection:
    """``S_n -> S_{n-1}``, erasing the letter ``n``."""
    if n < 2:
        raise RankTooSmall("deletion_A needs n >= 2")
    P, Q = weak_poset_A(n), weak_poset_A(n - 1)
    return Projection(P, Q, tuple(Q.index[_delete(w, n)] for w in P.elements),
                      "A", n, weak_leq_A, weak_leq_A)


@lru_cache(maxsize=None)
def deletion_B(n: int) -> Projection:
    """``W_n -> W_{n-1}``, erasing the letter ``+-n``.  ``n = 1`` projects ``W_1`` to the point."""
    if n < 1:
        raise RankTooSmall("deletion_B needs n >= 1")
    P, Q = weak_poset_B(n), weak_poset_B(n - 1)
    return Projection(P, Q, tuple(Q.index[_delete(w, n)] for w in P.elements),
                      "B", n, weak_leq_B, weak_leq_B)


def deletion(kind: str, n: int) -> Projection:
    return {"A": deletion_A, "B": deletion_B}[kind](n)


def _fiber_indices(pr: Projection, qi: int, members: list[int]) -> list[int]:
    P = pr.domain
    chain = sorted(members, key=lambda i: (bin(P.down[i]).count("1"), i))
    for a, b in zip(chain, chain[1:]):
        if not P.up[a] >> b & 1:
            raise FiberNotChain(pr.codomain.elements[qi], (P.elements[a], P.elements[b]))
    return chain


def fiber(pr: Projection, q) -> list:
    """The fiber over ``q`` listed bottom to top."""
    qi = pr.codomain.idx(q)
    members = [i for i, m in enumerate(pr.mapping) if m == qi]
    return [pr.domain.elements[i] for i in _fiber_indices(pr, qi, members)]


def fiber_chains(pr: Projection) -> list[list[int]]:
    return [_fiber_indices(pr, qi, m) for qi, m in enumerate(pr.preimage_indices())]


def bottom_section(pr: Projection) -> dict:
    P, Q = pr.domain, pr.codomain
    return {Q.elements[qi]: P.elements[ch[0]] for qi, ch in enumerate(fiber_chains(pr))}


def top_section(pr: Projection) -> dict:
    P, Q = pr.domain, pr.codomain
    return {Q.elements[qi]: P.elements[ch[-1]] for qi, ch in enumerate(fiber_chains(pr))}


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CylindricityReport:
    cover_condition: Check
    fiber_condition: Check
    section_condition: Check

    @property
    def ok(self) -> bool:
        return bool(self.cover_condition and self.fiber_condition and self.section_condition)

    def __bool__(self):
        return self.ok


def check_cover_condition(pr: Projection) -> Check:
    P, Q = pr.domain, pr.codomain
    qcovers = Q.cover_set
    for i, j in P.cover_indices:
        a, b = pr.mapping[i], pr.mapping[j]
        if a != b and (a, b) not in qcovers:
            return Check(False, (P.elements[i], P.elements[j]),
                         "cover maps to neither an equality nor a cover")
    return Check(True)


def check_fiber_condition(pr: Projection) -> Check:
    P, Q = pr.domain, pr.codomain
    for qi, members in enumerate(pr.preimage_indices()):
        if len(members) < 2:
            return Check(False, (Q.elements[qi],), f"fiber has {len(members)} element(s)")
        try:
            _fiber_indices(pr, qi, members)
        except FiberNotChain as exc:
            return Check(False, (Q.elements[qi], *exc.pair), "fiber is not a chain")
    return Check(True)


def check_section_condition(pr: Projection) -> Check:
    P, Q = pr.domain, pr.codomain
    try:
        chains = fiber_chains(pr)
    except FiberNotChain as exc:
        return Check(False, (exc.base,), "sections undefined: fiber is not a chain")
    pcovers, qcovers = P.cover_set, Q.cover_set
    for name, pick in (("bottom", 0), ("top", -1)):
        sec = [ch[pick] for ch in chains]
        back = {p: q for q, p in enumerate(sec)}
        for a, b in Q.cover_indices:
            if (sec[a], sec[b]) not in pcovers:
                return Check(False, (Q.elements[a], Q.elements[b]),
                             f"{name} section does not send this cover to a cover")
        for i, j in P.cover_indices:
            if i in back and j in back and (back[i], back[j]) not in qcovers:
                return Check(False, (P.elements[i], P.elements[j]),
                             f"{name} section image is not an induced copy")
    return Check(True)


def validate_cylindrical(pr: Projection) -> CylindricityReport:
    return CylindricityReport(check_cover_condition(pr), check_fiber_condition(pr),
                              check_section_condition(pr))


def format_projection(pr: Projection) -> str:
    m = "".join(f"m {i} {q}\n" for i, q in enumerate(pr.mapping))
    return format_poset(pr.domain) + format_poset(pr.codomain) + m


def parse_projection(text: str) -> Projection:
    lines = iter(text.splitlines())
    P = _parse_poset_lines(lines)
    Q = _parse_poset_lines(lines)
    mapping = {}
    for line in lines:
        tok = line.split()
        if not tok:
            continue
        if tok[0] != "m" or len(tok) != 3:
            raise ValueError(f"bad mapping line: {line!r}")
        i, q = int(tok[1]), int(tok[2])
        if i not in P.index:
            raise UnknownElement(i)
        mapping[i] = Q.idx(q)
    return Projection(P, Q, tuple(mapping[x] for x in P.elements))
