"""Horizontal classes, pre-Reeb graphs and augmented pre-Reeb graphs of projections."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import CoverConditionViolated, NotAcyclic
from .poset import Digraph, Poset, _bits, is_acyclic, make_digraph, reachability_poset
from .towers import Check, Projection


@dataclass(frozen=True, eq=False)
class HorizontalPartition:
    """Connected components of the horizontal-cover graph.

    Class ids are ``0..k-1`` ordered by the smallest domain index in each class.
    """

    class_of: tuple
    members: tuple

    def __len__(self):
        return len(self.members)

    def representative(self, c: int) -> int:
        return self.members[c][0]


@dataclass(frozen=True, eq=False)
class ReebGraph:
    projection: Projection
    partition: HorizontalPartition
    graph: Digraph
    witnesses: dict
    augmented: bool = False

    @property
    def classes(self) -> tuple:
        return self.graph.vertices

    def class_of(self, x) -> int:
        return self.partition.class_of[self.projection.domain.idx(x)]

    def representative(self, c: int):
        return self.projection.domain.elements[self.partition.representative(c)]

    def edges(self, kind: str | None = None) -> set[tuple]:
        if kind is None:
            return self.graph.pairs()
        return self.graph.edges_of_kind(kind)


def classify_covers(pr: Projection) -> tuple[list, list]:
    """Split domain covers into ``(horizontal, vertical)`` index pairs."""
    qcovers = pr.codomain.cover_set
    horizontal, vertical = [], []
    for i, j in pr.domain.cover_indices:
        a, b = pr.mapping[i], pr.mapping[j]
        if a == b:
            vertical.append((i, j))
        elif (a, b) in qcovers:
            horizontal.append((i, j))
        else:
            P = pr.domain
            raise CoverConditionViolated((P.elements[i], P.elements[j]))
    return horizontal, vertical


def horizontal_classes(pr: Projection) -> HorizontalPartition:
    n = len(pr.domain)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in classify_covers(pr)[0]:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = [find(i) for i in range(n)]
    ids: dict = {}
    members: list = []
    class_of = []
    for i, r in enumerate(roots):
        if r not in ids:
            ids[r] = len(members)
            members.append([])
        class_of.append(ids[r])
        members[ids[r]].append(i)
    return HorizontalPartition(tuple(class_of), tuple(map(tuple, members)))


def class_labeler(pr: Projection):
    """Label classes by their parameterization when the projection is a known deletion."""
    if pr.kind == "A":
        from .type_a import class_subset
        from .poset import format_subset
        return lambda w: format_subset(class_subset(w))
    if pr.kind == "B":
        from .type_b import class_b
        return lambda w: str(class_b(w))
    return None


def _labels(pr, part, labeler):
    if labeler is None:
        labeler = class_labeler(pr)
    if labeler is None:
        return [str(c) for c in range(len(part))]
    P = pr.domain
    return [labeler(P.elements[part.representative(c)]) for c in range(len(part))]


def _vertical_edges(pr, part):
    P = pr.domain
    found = {}
    for i, j in classify_covers(pr)[1]:
        e = (part.class_of[i], part.class_of[j], "vertical")
        found.setdefault(e, (P.elements[i], P.elements[j]))
    return found


@lru_cache(maxsize=None)
def pre_reeb(pr: Projection, labeler=None) -> ReebGraph:
    """Graph on horizontal classes with an edge for every vertical cover."""
    part = horizontal_classes(pr)
    found = _vertical_edges(pr, part)
    g = make_digraph(range(len(part)), found, _labels(pr, part, labeler))
    return ReebGraph(pr, part, g, found, augmented=False)


def _scan_rows(mapping, up, down, below, class_of, start, stop):
    found = {}
    for a in range(start, stop):
        cand = below[mapping[a]] & ~(up[a] | down[a])
        ca = class_of[a]
        for b in _bits(cand):
            e = (ca, class_of[b])
            if e not in found:
                found[e] = (a, b)
    return found


def _auxiliary_by_reachability(pr: Projection, part: HorizontalPartition, jobs: int = 1) -> dict:
    P, Q = pr.domain, pr.codomain
    fib = [0] * len(Q)
    for i, q in enumerate(pr.mapping):
        fib[q] |= 1 << i
    below = []
    for q in range(len(Q)):
        m = 0
        for r in _bits(Q.down[q] & ~(1 << q)):
            m |= fib[r]
        below.append(m)
    args = (pr.mapping, P.up, P.down, below, part.class_of)
    n = len(P)
    if jobs <= 1 or n < 64:
        blocks = [_scan_rows(*args, 0, n)]
    else:
        step = -(-n // jobs)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_scan_rows, *args, s, min(n, s + step)) for s in range(0, n, step)]
            blocks = [f.result() for f in futs]
    found = {}
    for blk in blocks:
        for e, w in blk.items():
            found.setdefault(e, w)
    return {(a, b, "auxiliary"): (P.elements[i], P.elements[j]) for (a, b), (i, j) in found.items()}


def _auxiliary_by_oracle(pr: Projection, part: HorizontalPartition) -> dict:
    if pr.domain_leq is None or pr.codomain_leq is None:
        raise ValueError("projection carries no order oracle")
    P, Q = pr.domain, pr.codomain
    dleq, qleq = pr.domain_leq, pr.codomain_leq
    found = {}
    for a, v in enumerate(P.elements):
        qv = Q.elements[pr.mapping[a]]
        for b, w in enumerate(P.elements):
            qw = Q.elements[pr.mapping[b]]
            if qw == qv or not qleq(qw, qv) or dleq(v, w) or dleq(w, v):
                continue
            found.setdefault((part.class_of[a], part.class_of[b], "auxiliary"), (v, w))
    return found


@lru_cache(maxsize=None)
def augmented_pre_reeb(pr: Projection, labeler=None, oracle: str = "reachability",
                       jobs: int = 1) -> ReebGraph:
    """Pre-Reeb graph plus auxiliary edges ``[v'] -> [w']`` for every pair with
    ``pi(w') < pi(v')`` and ``v'``, ``w'`` incomparable.

    ``oracle="inversions"`` decides comparability with the projection's own
    order oracle instead of the reachability bitsets.  Self-loops are kept.
    """
    part = horizontal_classes(pr)
    found = dict(_vertical_edges(pr, part))
    if oracle == "reachability":
        found.update(_auxiliary_by_reachability(pr, part, jobs))
    elif oracle == "inversions":
        found.update(_auxiliary_by_oracle(pr, part))
    else:
        raise ValueError(f"unknown oracle {oracle!r}")
    g = make_digraph(range(len(part)), found, _labels(pr, part, labeler))
    return ReebGraph(pr, part, g, found, augmented=True)


def reeb_poset(pr: Projection) -> Poset:
    return reachability_poset(pre_reeb(pr).graph)


def augmented_reeb_poset(pr: Projection) -> Poset:
    return reachability_poset(augmented_pre_reeb(pr).graph)


def check_acyclic(rg: ReebGraph) -> Check:
    cyc = is_acyclic(rg.graph)
    if cyc is True:
        return Check(True)
    return Check(False, tuple(cyc), "directed cycle")


def require_acyclic(rg: ReebGraph) -> None:
    cyc = is_acyclic(rg.graph)
    if cyc is not True:
        raise NotAcyclic(cyc)


def verify_witnesses(rg: ReebGraph) -> Check:
    """Re-check every stored witness against the definitions."""
    pr = rg.projection
    P, Q = pr.domain, pr.codomain
    for (a, b, kind), (v, w) in sorted(rg.witnesses.items()):
        if (rg.class_of(v), rg.class_of(w)) != (a, b):
            return Check(False, (a, b, kind), "witness lies in the wrong classes")
        iv, iw = P.idx(v), P.idx(w)
        qv, qw = pr.mapping[iv], pr.mapping[iw]
        if kind == "vertical":
            if (iv, iw) not in P.cover_set or qv != qw:
                return Check(False, (v, w), "not a vertical cover")
        else:
            strictly_below = qw != qv and Q.up[qw] >> qv & 1
            if not strictly_below or P.comparable(v, w):
                return Check(False, (v, w), "not an auxiliary witness")
    return Check(True)


def format_reeb(rg: ReebGraph) -> str:
    g = rg.graph
    lines = [f"v {v} {lab.replace(' ', '')}" for v, lab in zip(g.vertices, g.labels)]
    lines += [f"g {a} {b} {k}" for a, b, k in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_reeb(text: str) -> Digraph:
    vertices, labels, edges = [], [], []
    for line in text.splitlines():
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "v" and len(tok) == 3:
            vertices.append(int(tok[1]))
            labels.append(tok[2])
        elif tok[0] == "g" and len(tok) == 4:
            edges.append((int(tok[1]), int(tok[2]), tok[3]))
        else:
            raise ValueError(f"bad graph line: {line!r}")
    return make_digraph(vertices, edges, labels)


def to_dot(g: Digraph, name: str = "R", ranks: dict | None = None) -> str:
    """DOT text; vertical edges solid, auxiliary edges dashed.

    ``ranks`` maps vertices to a layer index, emitted as ``rank=same`` groups.
    """
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    for v, lab in zip(g.vertices, g.labels):
        out.append(f'  {v} [label="{lab}"];')
    if ranks:
        layers: dict = {}
        for v in g.vertices:
            layers.setdefault(ranks[v], []).append(v)
        for r in sorted(layers):
            out.append("  { rank=same; " + " ".join(f"{v};" for v in layers[r]) + " }")
    for a, b, k in g.sorted_edges():
        style = ' [style=dashed]' if k == "auxiliary" else ""
        out.append(f"  {a} -> {b}{style};")
    out.append("}")
    return "\n".join(out) + "\n"
