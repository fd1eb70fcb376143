"""Finite posets stored as Hasse diagrams with precomputed reachability bitsets.

Elements are arbitrary hashable keys.  Internally every element has an index
``0..N-1`` and reachability is kept as one Python ``int`` bitmask per element,
so ``leq`` is a single shift-and-mask.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    MissingElement,
    NotAcyclic,
    SizeMismatch,
    UnknownElement,
)

__all__ = [
    "Poset",
    "Digraph",
    "Violation",
    "build_poset",
    "make_digraph",
    "hasse_digraph",
    "leq",
    "is_acyclic",
    "reachability_poset",
    "is_total_order",
    "boolean_lattice",
    "format_subset",
    "is_cubic_realization",
    "is_order_embedding",
    "find_subposet_isomorphic",
    "format_poset",
    "parse_poset",
    "format_coordinates",
    "parse_coordinates",
]

CoordinateMap = Mapping[Hashable, tuple]

EDGE_KINDS = ("plain", "vertical", "auxiliary")


@dataclass(frozen=True)
class Violation:
    """Failed check with a minimal witness.  Falsy, so it can stand in for ``False``."""

    reason: str
    witness: tuple = ()

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.reason}: {self.witness}"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.  Build with :func:`build_poset`."""

    __slots__ = ("elements", "labels", "index", "cover_indices", "up", "down",
                 "removed_covers", "_leq_matrix")

    def __init__(self, elements, labels, cover_indices, up, down, removed_covers=()):
        self.elements = tuple(elements)
        self.labels = tuple(labels)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.cover_indices = tuple(sorted(cover_indices))
        self.up = tuple(up)
        self.down = tuple(down)
        self.removed_covers = tuple(removed_covers)
        self._leq_matrix = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"<Poset: {len(self)} elements, {len(self.cover_indices)} covers>"

    def idx(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def label(self, x) -> str:
        return self.labels[self.idx(x)]

    @property
    def covers(self) -> list[tuple]:
        e = self.elements
        return [(e[i], e[j]) for i, j in self.cover_indices]

    @property
    def cover_set(self) -> frozenset:
        return frozenset(self.cover_indices)

    def leq(self, x, y) -> bool:
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        i, j = self.idx(x), self.idx(y)
        return bool((self.up[i] | self.down[i]) >> j & 1)

    def leq_matrix(self) -> np.ndarray:
        """Boolean matrix ``M[i, j] = (element i <= element j)``."""
        if self._leq_matrix is None:
            n = len(self)
            nbytes = (n + 7) // 8 or 1
            rows = [np.unpackbits(np.frombuffer(u.to_bytes(nbytes, "little"), dtype=np.uint8),
                                  bitorder="little")[:n] for u in self.up]
            m = np.array(rows, dtype=bool).reshape(n, n)
            m.setflags(write=False)
            self._leq_matrix = m
        return self._leq_matrix

    def successors(self) -> list[list[int]]:
        succ = [[] for _ in self.elements]
        for i, j in self.cover_indices:
            succ[i].append(j)
        return succ

    def minimal(self) -> list:
        return [x for i, x in enumerate(self.elements) if self.down[i] == 1 << i]

    def maximal(self) -> list:
        return [x for i, x in enumerate(self.elements) if self.up[i] == 1 << i]


def build_poset(elements: Iterable, covers: Iterable[tuple], labels: Sequence[str] | None = None) -> Poset:
    """Build a poset from elements and (possibly redundant) order pairs.

    Pairs implied by a longer directed path are dropped and recorded in
    ``Poset.removed_covers``.

    Raises:
        UnknownElement: a pair references an undeclared element.
        CycleDetected: the relation contains a directed cycle.
    """
    elements = list(elements)
    index: dict = {}
    for i, x in enumerate(elements):
        if x in index:
            raise ValueError(f"duplicate element id {x!r}")
        index[x] = i
    if labels is None:
        labels = [str(x) for x in elements]
    elif len(labels) != len(elements):
        raise SizeMismatch("labels and elements differ in length")
    n = len(elements)

    pairs = set()
    for a, b in covers:
        if a not in index:
            raise UnknownElement(a)
        if b not in index:
            raise UnknownElement(b)
        if a == b:
            raise CycleDetected([a])
        pairs.add((index[a], index[b]))

    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    for i, j in sorted(pairs):
        succ[i].append(j)
        pred[j].append(i)
    order = _topological_order(n, pred, lambda cyc: CycleDetected([elements[k] for k in cyc]))

    up = [0] * n
    for i in reversed(order):
        m = 1 << i
        for j in succ[i]:
            m |= up[j]
        up[i] = m
    down = [0] * n
    for j in order:
        m = 1 << j
        for i in pred[j]:
            m |= down[i]
        down[j] = m

    kept, removed = [], []
    for i, j in sorted(pairs):
        if any(k != j and up[k] >> j & 1 for k in succ[i]):
            removed.append((elements[i], elements[j]))
        else:
            kept.append((i, j))
    return Poset(elements, labels, kept, up, down, removed)


def _topological_order(n, pred, on_cycle):
    ts = graphlib.TopologicalSorter()
    for j in range(n):
        ts.add(j, *pred[j])
    try:
        return list(ts.static_order())
    except graphlib.CycleError as exc:
        # graphlib reports the cycle closed (first node repeated at the end)
        raise on_cycle(exc.args[1][:-1]) from None


def leq(p: Poset, x, y) -> bool:
    return p.leq(x, y)


@dataclass(frozen=True, eq=False)
class Digraph:
    """Directed graph with kind-tagged edges ``(src, dst, kind)``."""

    vertices: tuple
    labels: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.vertices)

    def pairs(self) -> set[tuple]:
        return {(a, b) for a, b, _ in self.edges}

    def edges_of_kind(self, kind: str) -> set[tuple]:
        return {(a, b) for a, b, k in self.edges if k == kind}

    def sorted_edges(self) -> list[tuple]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]], EDGE_KINDS.index(e[2])))

    def label(self, v) -> str:
        return self.labels[self.vertices.index(v)]

    def in_neighbors(self) -> dict:
        nb = {v: set() for v in self.vertices}
        for a, b, _ in self.edges:
            nb[b].add(a)
        return nb


def make_digraph(vertices: Iterable, edges: Iterable[tuple], labels: Sequence[str] | None = None) -> Digraph:
    """Edges are ``(src, dst)`` (kind ``plain``) or ``(src, dst, kind)``."""
    vertices = tuple(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertex id")
    vs = set(vertices)
    out = set()
    for e in edges:
        a, b, kind = (*e, "plain") if len(e) == 2 else e
        if kind not in EDGE_KINDS:
            raise ValueError(f"unknown edge kind {kind!r}")
        for v in (a, b):
            if v not in vs:
                raise UnknownElement(v)
        out.add((a, b, kind))
    if labels is None:
        labels = tuple(str(v) for v in vertices)
    return Digraph(vertices, tuple(labels), frozenset(out))


def hasse_digraph(p: Poset) -> Digraph:
    return make_digraph(p.elements, p.covers, p.labels)


def is_acyclic(g: Digraph):
    """``True``, or a directed cycle as a vertex list (each vertex has an edge to the next)."""
    ts = graphlib.TopologicalSorter()
    for v in g.vertices:
        ts.add(v)
    for a, b, _ in g.edges:
        ts.add(b, a)
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        return list(exc.args[1][:-1])
    return True


def topological_order(g: Digraph) -> list:
    ts = graphlib.TopologicalSorter()
    for v in g.vertices:
        ts.add(v)
    for a, b, _ in g.edges:
        ts.add(b, a)
    try:
        return list(ts.static_order())
    except graphlib.CycleError as exc:
        raise NotAcyclic(exc.args[1][:-1]) from None


def reachability_poset(g: Digraph) -> Poset:
    cyc = is_acyclic(g)
    if cyc is not True:
        raise NotAcyclic(cyc)
    return build_poset(g.vertices, g.pairs(), g.labels)


def is_total_order(p: Poset) -> bool:
    full = (1 << len(p)) - 1
    return all((u | d) == full for u, d in zip(p.up, p.down))


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in _bits(mask)) + "}"


def boolean_lattice(n: int) -> Poset:
    """Subsets of ``[n]`` as bitmasks (element ``i`` at bit ``i-1``), ordered by inclusion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    masks = range(1 << n)
    covers = [(m, m | 1 << i) for m in masks for i in range(n) if not m >> i & 1]
    return build_poset(masks, covers, [format_subset(m) for m in masks])


def _vectors(p: Poset, c: CoordinateMap) -> list[tuple]:
    vecs = []
    for x in p.elements:
        try:
            vecs.append(tuple(c[x]))
        except KeyError:
            raise MissingElement(x) from None
    if len({len(v) for v in vecs}) > 1:
        raise ValueError("coordinate vectors have different lengths")
    return vecs


def is_cubic_realization(p: Poset, c: CoordinateMap):
    """``True`` iff ``c`` is injective and each cover raises exactly one coordinate."""
    vecs = _vectors(p, c)
    seen: dict = {}
    for i, v in enumerate(vecs):
        if v in seen:
            return Violation("not injective", (p.elements[seen[v]], p.elements[i]))
        seen[v] = i
    for i, j in p.cover_indices:
        changed = [k for k, (a, b) in enumerate(zip(vecs[i], vecs[j])) if a != b]
        x, y = p.elements[i], p.elements[j]
        if len(changed) != 1:
            return Violation(f"cover changes {len(changed)} coordinates", (x, y))
        k = changed[0]
        if vecs[i][k] > vecs[j][k]:
            return Violation(f"cover decreases coordinate {k}", (x, y))
    return True


def is_order_embedding(p: Poset, c: CoordinateMap, block: int = 256):
    """``True`` iff ``x <= y`` exactly when ``c(x) <= c(y)`` componentwise."""
    vecs = _vectors(p, c)
    n = len(vecs)
    if n == 0:
        return True
    arr = np.array(vecs, dtype=object if _wide(vecs) else np.int64).reshape(n, -1)
    order = p.leq_matrix()
    for start in range(0, n, block):
        stop = min(n, start + block)
        coord = np.all(arr[start:stop, None, :] <= arr[None, :, :], axis=2)
        bad = np.argwhere(coord != order[start:stop])
        if len(bad):
            i, j = int(bad[0][0]) + start, int(bad[0][1])
            x, y = p.elements[i], p.elements[j]
            if order[i, j]:
                return Violation("order not preserved: x <= y but c(x) !<= c(y)", (x, y))
            return Violation("order not reflected: c(x) <= c(y) but x !<= y", (x, y))
    return True


def _wide(vecs) -> bool:
    return any(abs(a) >= 1 << 62 for v in vecs for a in v)


def find_subposet_isomorphic(p: Poset, q: Poset, candidates: Sequence):
    """Check that ``candidates[k] -> q.elements[k]`` is an isomorphism of the induced order.

    Returns the mapping ``{q element: p element}``, or ``None``.
    """
    candidates = list(candidates)
    if len(candidates) != len(q):
        raise SizeMismatch(f"{len(candidates)} candidates for a poset of size {len(q)}")
    if len(set(candidates)) != len(candidates):
        return None
    qe = q.elements
    for a, x in enumerate(candidates):
        for b, y in enumerate(candidates):
            if p.leq(x, y) != q.leq(qe[a], qe[b]):
                return None
    return dict(zip(qe, candidates))


def format_poset(p: Poset) -> str:
    lines = [f"p {len(p)} {len(p.cover_indices)}"]
    lines += [f"e {i} {lab}" for i, lab in enumerate(p.labels)]
    lines += [f"c {i} {j}" for i, j in p.cover_indices]
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    """Parse the line format written by :func:`format_poset`; element keys are the integer ids."""
    return _parse_poset_lines(iter(text.splitlines()))


def _parse_poset_lines(lines) -> Poset:
    header = None
    for line in lines:
        if line.strip():
            header = line.split()
            break
    if not header or header[0] != "p" or len(header) != 3:
        raise ValueError("expected 'p <num_elements> <num_covers>' header")
    ne, nc = int(header[1]), int(header[2])
    ids, labels, covers = [], [], []
    while len(ids) < ne or len(covers) < nc:
        tok = next(lines).split()
        if not tok:
            continue
        if tok[0] == "e" and len(tok) == 3:
            ids.append(int(tok[1]))
            labels.append(tok[2])
        elif tok[0] == "c" and len(tok) == 3:
            covers.append((int(tok[1]), int(tok[2])))
        else:
            raise ValueError(f"bad poset line: {' '.join(tok)!r}")
    return build_poset(ids, covers, labels)


def format_coordinates(p: Poset, c: CoordinateMap) -> str:
    return "".join(f"{lab}\t{','.join(map(str, c[x]))}\n" for x, lab in zip(p.elements, p.labels))


def parse_coordinates(text: str) -> dict[str, tuple]:
    out = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        label, _, vec = line.partition("\t")
        out[label] = tuple(int(t) for t in vec.split(",")) if vec else ()
    return out
