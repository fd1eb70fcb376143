"""The full verification suite for one deletion, as a single report."""

from __future__ import annotations

from .errors import RankTooLarge, RankTooSmall, ReebLiftError
from .lifts import build_tower, dimension_certificate, minimal_heights, nu_heights, uniqueness_check
from .poset import find_subposet_isomorphic, is_cubic_realization, is_order_embedding
from .reeb import augmented_pre_reeb, pre_reeb
from .report import Report
from .towers import bottom_section, deletion, top_section, validate_cylindrical
from .type_a import verify_boolean_iso, verify_total_order_A
from .type_b import counterexample_weighted_sum, verify_gamma_iso, verify_total_order_B
from .weak import MAX_RANK_A, MAX_RANK_B

VERIFY_RANKS = {"A": (2, 6), "B": (2, 4)}


def check_rank(kind: str, n: int, lo: int = 1) -> None:
    """Raise on ranks outside ``[lo, cap]`` for the type."""
    cap = MAX_RANK_A if kind == "A" else MAX_RANK_B
    if n > cap:
        raise RankTooLarge(f"type {kind} rank {n} exceeds {cap}")
    if n < lo:
        raise RankTooSmall(f"type {kind} rank must be at least {lo}")


def cylindricity_report(kind: str, n: int) -> Report:
    rep = Report(f"type {kind} deletion, n={n}: cylindricity")
    pr = deletion(kind, n)
    cr = validate_cylindrical(pr)
    for name in ("cover_condition", "fiber_condition", "section_condition"):
        chk = getattr(cr, name)
        rep.check(name.replace("_", " "), chk, (chk.detail, chk.witness))
    size = n if kind == "A" else 2 * n
    sizes = {len(m) for m in pr.preimage_indices()}
    rep.check(f"every fiber has {size} elements", sizes == {size}, sorted(sizes))
    if cr.fiber_condition:
        P, Q = pr.domain, pr.codomain
        for name, sec in (("bottom", bottom_section(pr)), ("top", top_section(pr))):
            iso = find_subposet_isomorphic(P, Q, [sec[q] for q in Q.elements])
            rep.check(f"{name} section image is an induced copy of the base", iso is not None)
    return rep


def extremes_report(kind: str, n: int) -> Report:
    """Bottom/top section classes are the unique source and sink of the augmented graph."""
    rep = Report(f"type {kind} deletion, n={n}: sources and sinks")
    pr = deletion(kind, n)
    rg = augmented_pre_reeb(pr)
    g = rg.graph
    has_in = {b for a, b in g.pairs()}
    has_out = {a for a, b in g.pairs()}
    sources = [v for v in g.vertices if v not in has_in]
    sinks = [v for v in g.vertices if v not in has_out]
    bot = {rg.class_of(x) for x in bottom_section(pr).values()}
    top = {rg.class_of(x) for x in top_section(pr).values()}
    rep.check("bottom section lies in the unique source class", sources == sorted(bot), (sources, bot))
    rep.check("top section lies in the unique sink class", sinks == sorted(top), (sinks, top))
    rep.check("pre-Reeb edges are a subset of augmented edges", pre_reeb(pr).edges() <= rg.edges())
    return rep


def tower_report(kind: str, n: int, jobs: int = 1) -> Report:
    rep = Report(f"type {kind} tower to rank {n}")
    towers = {}
    for name in ("nu", "minimal"):
        try:
            t = build_tower(kind, n, name, jobs=jobs)
        except ReebLiftError as exc:
            rep.check(f"{name}-height tower builds", False, exc)
            continue
        towers[name] = t
        rep.check(f"{name}-height tower is a cubic realization", is_cubic_realization(t.poset, t.coords))
        emb = is_order_embedding(t.poset, t.coords)
        rep.check(f"{name}-height tower is an order embedding", emb, str(emb))
    if len(towers) == 2:
        for pr, rg in zip(towers["nu"].projections, towers["nu"].graphs):
            try:
                same = uniqueness_check(pr, nu_heights(rg), minimal_heights(rg), rg)
            except ReebLiftError as exc:
                same = False
                rep.data.setdefault("uniqueness_errors", []).append(str(exc))
            rep.check(f"nu and minimal heights give the same comparisons at level {pr.rank}", same)
        try:
            cert = dimension_certificate(towers["minimal"])
            rep.check(f"section corners form a {cert.dimension}-box inducing the Boolean lattice", True)
            rep.data["certificate"] = cert
        except ReebLiftError as exc:
            rep.check("dimension certificate", False, exc)
    return rep


def verify_all(kind: str, n: int, jobs: int = 1) -> Report:
    lo, hi = VERIFY_RANKS[kind]
    if not lo <= n <= hi:
        raise (RankTooLarge if n > hi else RankTooSmall)(f"verify supports type {kind} ranks {lo}..{hi}")
    parts = [cylindricity_report(kind, n)]
    if kind == "A":
        parts += [verify_boolean_iso(n), verify_total_order_A(n)]
    else:
        parts += [verify_gamma_iso(n), verify_total_order_B(n)]
    parts += [extremes_report(kind, n), tower_report(kind, n, jobs)]
    if kind == "B":
        parts.append(counterexample_weighted_sum())
    rep = Report(f"type {kind}, rank {n}")
    for part in parts:
        rep.extend(part, tagged=True)
    return rep
