"""Compatible cubic lifts, order-embedding lifts, towers and the dimension certificate.

A lift appends one coordinate ``h([x])`` to the base coordinates of ``pi(x)``,
where ``h`` is an integer height on horizontal classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BaseNotEmbedding,
    HeightNotMonotone,
    MissingElement,
    NotABox,
    NotBoolean,
    NotCompatible,
    NotCylindrical,
    NotTotalOrder,
    RealizationFailed,
)
from .poset import (
    Digraph,
    Poset,
    boolean_lattice,
    find_subposet_isomorphic,
    format_coordinates,
    is_cubic_realization,
    is_order_embedding,
    is_total_order,
    reachability_poset,
    topological_order,
)
from .reeb import ReebGraph, augmented_pre_reeb, horizontal_classes, pre_reeb
from .towers import (
    Projection,
    bottom_section,
    check_cover_condition,
    check_fiber_condition,
    deletion,
    top_section,
)
from .weak import weak_poset_A, weak_poset_B

HeightFunction = dict


def check_heights(rg: ReebGraph | Digraph, h: HeightFunction) -> None:
    """Raise :class:`HeightNotMonotone` on the first edge where ``h`` does not strictly increase."""
    g = rg.graph if isinstance(rg, ReebGraph) else rg
    for v in g.vertices:
        if v not in h:
            raise MissingElement(v)
    for a, b, kind in g.sorted_edges():
        if not h[a] < h[b]:
            raise HeightNotMonotone((a, b, kind), (h[a], h[b]))


def is_valid_height(rg: ReebGraph | Digraph, h: HeightFunction) -> bool:
    try:
        check_heights(rg, h)
    except (HeightNotMonotone, MissingElement):
        return False
    return True


def _require_cylindrical(pr: Projection) -> None:
    for chk in (check_cover_condition(pr), check_fiber_condition(pr)):
        if not chk:
            raise NotCylindrical(f"{chk.detail}: {chk.witness}")


def _append(c_Q, pr: Projection, rg: ReebGraph, h: HeightFunction) -> dict:
    P, Q = pr.domain, pr.codomain
    cls = rg.partition.class_of
    return {x: tuple(c_Q[Q.elements[pr.mapping[i]]]) + (h[cls[i]],)
            for i, x in enumerate(P.elements)}


def extend_cubic(c_Q, pr: Projection, h: HeightFunction, rg: ReebGraph | None = None) -> dict:
    """``c_P(x) = (c_Q(pi(x)), h([x]))`` for ``h`` increasing along the pre-Reeb graph."""
    _require_cylindrical(pr)
    rg = rg or pre_reeb(pr)
    check_heights(rg, h)
    c_P = _append(c_Q, pr, rg, h)
    ok = is_cubic_realization(pr.domain, c_P)
    if not ok:
        raise RealizationFailed(str(ok))
    return c_P


def extend_order_embedding(c_Q, pr: Projection, h: HeightFunction,
                           rg: ReebGraph | None = None) -> dict:
    """Same formula as :func:`extend_cubic`; ``h`` must increase along the augmented graph."""
    _require_cylindrical(pr)
    base = is_order_embedding(pr.codomain, c_Q)
    if not base:
        raise BaseNotEmbedding(str(base))
    rg = rg or augmented_pre_reeb(pr)
    if not rg.augmented:
        raise ValueError("order-embedding lifts need the augmented pre-Reeb graph")
    check_heights(rg, h)
    c_P = _append(c_Q, pr, rg, h)
    for ok in (is_cubic_realization(pr.domain, c_P), is_order_embedding(pr.domain, c_P)):
        if not ok:
            raise RealizationFailed(str(ok))
    return c_P


def decompose(c_P, pr: Projection) -> tuple[dict, HeightFunction]:
    """Split a compatible realization into base coordinates and a class height."""
    P, Q = pr.domain, pr.codomain
    part = horizontal_classes(pr)
    vecs = []
    for x in P.elements:
        try:
            vecs.append(tuple(c_P[x]))
        except KeyError:
            raise MissingElement(x) from None
    h: dict = {}
    for c, members in enumerate(part.members):
        vals = {vecs[i][-1] for i in members}
        if len(vals) != 1:
            raise NotCompatible(f"last coordinate varies on horizontal class {c}")
        h[c] = vals.pop()
    c_Q: dict = {}
    for i, q in enumerate(pr.mapping):
        prefix = vecs[i][:-1]
        key = Q.elements[q]
        if c_Q.setdefault(key, prefix) != prefix:
            raise NotCompatible(f"base coordinates differ over {key!r}")
    check_heights(pre_reeb(pr), h)
    return c_Q, h


def minimal_heights(g: ReebGraph | Digraph) -> HeightFunction:
    """Longest-path rank: 0 on sources, else one more than the largest in-neighbour."""
    g = g.graph if isinstance(g, ReebGraph) else g
    preds = g.in_neighbors()
    h: dict = {}
    for v in topological_order(g):
        h[v] = 1 + max((h[u] for u in preds[v]), default=-1)
    return {v: h[v] for v in g.vertices}


def nu_heights(rg: ReebGraph) -> HeightFunction:
    """The binary valuation of each class of a type A or B deletion."""
    pr = rg.projection
    if pr.kind == "A":
        from .type_a import class_subset, nu_A
        return {c: nu_A(class_subset(rg.representative(c))) for c in rg.classes}
    if pr.kind == "B":
        from .type_b import class_b, nu_B
        return {c: nu_B(class_b(rg.representative(c)), pr.rank) for c in rg.classes}
    raise ValueError("nu heights are defined only for type A/B deletions")


HEIGHTS = {"nu": nu_heights, "minimal": minimal_heights}


@dataclass(frozen=True, eq=False)
class TowerRealization:
    """Order-embedding realization of ``P_L`` built one coordinate per level.

    ``levels[k]`` is the coordinate map on ``P_k`` (``levels[0]`` is the point).
    """

    kind: str
    rank: int
    projections: tuple
    graphs: tuple
    heights: tuple
    height_names: tuple
    levels: tuple

    @property
    def coords(self) -> dict:
        return self.levels[-1]

    @property
    def poset(self) -> Poset:
        return self.projections[-1].domain if self.projections else base_point(self.kind)

    @property
    def dimension(self) -> int:
        return len(self.projections)


def base_point(kind: str) -> Poset:
    return weak_poset_A(1) if kind == "A" else weak_poset_B(0)


def tower_projections(kind: str, n: int) -> list[Projection]:
    """Type A: ``S_1 <- S_2 <- ... <- S_n``.  Type B: ``W_0 <- W_1 <- ... <- W_n``."""
    start = 2 if kind == "A" else 1
    return [deletion(kind, k) for k in range(start, n + 1)]


def build_tower(kind: str, n: int, heights: str | Callable | Sequence = "minimal",
                jobs: int = 1) -> TowerRealization:
    """Lift from the point through every deletion up to rank ``n``.

    ``heights`` is ``"nu"``, ``"minimal"``, a callable ``(level, ReebGraph) ->
    HeightFunction``, or a per-level sequence of those.
    """
    if kind not in ("A", "B"):
        raise ValueError(f"unknown type {kind!r}")
    prs = tower_projections(kind, n)
    choices = list(heights) if isinstance(heights, (list, tuple)) else [heights] * len(prs)
    if len(choices) != len(prs):
        raise ValueError("one height choice per level expected")
    c = {base_point(kind).elements[0]: ()}
    levels, graphs, hs, names = [c], [], [], []
    for k, (pr, choice) in enumerate(zip(prs, choices), start=1):
        rg = augmented_pre_reeb(pr, jobs=jobs)
        if isinstance(choice, str):
            h, name = HEIGHTS[choice](rg), choice
        else:
            h, name = choice(k, rg), "custom"
        c = extend_order_embedding(c, pr, h, rg)
        levels.append(c)
        graphs.append(rg)
        hs.append(h)
        names.append(name)
    return TowerRealization(kind, n, tuple(prs), tuple(graphs), tuple(hs), tuple(names), tuple(levels))


def uniqueness_check(pr: Projection, h1: HeightFunction, h2: HeightFunction,
                     rg: ReebGraph | None = None) -> bool:
    """Whether two valid heights induce the same comparisons ``h([x]) <= h([y])`` on all pairs."""
    rg = rg or augmented_pre_reeb(pr)
    check_heights(rg, h1)
    check_heights(rg, h2)
    if not is_total_order(reachability_poset(rg.graph)):
        raise NotTotalOrder("augmented Reeb poset is not a total order")
    cls = np.array(rg.partition.class_of)
    v1 = np.array([h1[c] for c in rg.classes])[cls]
    v2 = np.array([h2[c] for c in rg.classes])[cls]
    return bool(np.array_equal(np.sign(v1[:, None] - v1[None, :]),
                               np.sign(v2[:, None] - v2[None, :])))


def same_comparisons(p: Poset, c1: dict, c2: dict) -> bool:
    """Coordinatewise comparison patterns of two realizations agree on every pair."""
    a = np.array([c1[x] for x in p.elements]).reshape(len(p), -1)
    b = np.array([c2[x] for x in p.elements]).reshape(len(p), -1)
    if a.shape != b.shape:
        return False
    return bool(np.array_equal(np.sign(a[:, None, :] - a[None, :, :]),
                               np.sign(b[:, None, :] - b[None, :, :])))


@dataclass(frozen=True)
class DimensionCertificate:
    """Corners ``X_L`` of an ``L``-box inside the top poset of a tower.

    ``corners`` maps a choice string over ``"bt"`` (one letter per level) to an element.
    """

    dimension: int
    corners: dict
    values: tuple
    boolean_map: dict


def dimension_certificate(t: TowerRealization) -> DimensionCertificate:
    L = t.dimension
    secs = [(bottom_section(pr), top_section(pr)) for pr in t.projections]
    x0 = base_point(t.kind).elements[0]
    corners = {}
    for choice in product("bt", repeat=L):
        x = x0
        for (b, top), ch in zip(secs, choice):
            x = b[x] if ch == "b" else top[x]
        corners["".join(choice)] = x
    vecs = {key: t.coords[x] for key, x in corners.items()}
    values = []
    for i in range(L):
        by_choice = {ch: {v[i] for key, v in vecs.items() if key[i] == ch} for ch in "bt"}
        if any(len(s) != 1 for s in by_choice.values()):
            raise NotABox(f"coordinate {i} is not determined by the level-{i + 1} section choice")
        lo, hi = by_choice["b"].pop(), by_choice["t"].pop()
        if not lo < hi:
            raise NotABox(f"coordinate {i} is not smaller on bottom-section corners")
        values.append((lo, hi))
    B = boolean_lattice(L)
    cands = [corners["".join("t" if m >> i & 1 else "b" for i in range(L))] for m in B.elements]
    mapping = find_subposet_isomorphic(t.poset, B, cands)
    if mapping is None:
        raise NotBoolean("corners do not induce a Boolean lattice")
    return DimensionCertificate(L, corners, tuple(values), mapping)


def format_tower_metadata(t: TowerRealization) -> str:
    return "".join(f"level {k} heights {name}\n" for k, name in enumerate(t.height_names, start=1))


def format_tower(t: TowerRealization) -> str:
    return format_coordinates(t.poset, t.coords)
