"""Deletion ``W_n -> W_{n-1}``: ``(eps, A)`` classes, the flip graph of ``F_n``,
the bit valuation, the successor map, and the ``n = 3`` weighted-sum counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import NotAuxiliaryCase, RankTooLarge, SuccessorUndefined, WitnessInvalid
from .lifts import minimal_heights
from .poset import Digraph, _bits, is_acyclic, is_total_order, make_digraph, reachability_poset
from .reeb import augmented_pre_reeb, check_acyclic, pre_reeb, verify_witnesses
from .report import Report
from .towers import deletion_B
from .weak import inv_B, weak_leq_B


@dataclass(frozen=True, order=True)
class ClassB:
    """Horizontal class ``(eps, A)``; ``A`` is split into masks of positive and
    negative letters (letter ``+-i`` at bit ``i-1``)."""

    eps: int
    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if self.pos & self.neg:
            raise ValueError("A contains both +i and -i")

    @classmethod
    def from_letters(cls, eps: int, letters=()) -> "ClassB":
        pos = neg = 0
        for a in letters:
            if a > 0:
                pos |= 1 << (a - 1)
            else:
                neg |= 1 << (-a - 1)
        return cls(eps, pos, neg)

    @property
    def absolute(self) -> int:
        return self.pos | self.neg

    @property
    def letters(self) -> tuple:
        """Signed letters of ``A`` sorted by absolute value."""
        return tuple(sorted([i + 1 for i in _bits(self.pos)] + [-(i + 1) for i in _bits(self.neg)],
                            key=abs))

    def __str__(self):
        a = ",".join(f"{x:+d}" for x in self.letters)
        return f"({'+' if self.eps > 0 else '-'},{{{a}}})"


def class_b(w) -> ClassB:
    """Sign of the letter ``+-n`` and the signed letters right of it."""
    n = len(w)
    k = next(i for i, a in enumerate(w) if abs(a) == n)
    return ClassB.from_letters(1 if w[k] > 0 else -1, w[k + 1:])


def _full(n: int) -> int:
    return (1 << (n - 1)) - 1


def n_inversion_bits(x: ClassB, n: int) -> dict:
    """Bits ``(n,i)``, ``(-n)`` and ``(n,-i)`` keyed by the inversion symbol."""
    minus = x.eps < 0
    out = {}
    for i in range(n - 1, 0, -1):
        absent = not x.absolute >> (i - 1) & 1
        out[(n, i)] = int(bool(x.pos >> (i - 1) & 1)) + int(minus and absent)
    out[(-n,)] = int(minus)
    for i in range(1, n):
        absent = not x.absolute >> (i - 1) & 1
        out[(n, -i)] = int(bool(x.neg >> (i - 1) & 1)) + int(minus and absent)
    return out


def bits_b(x: ClassB, n: int) -> str:
    """``(n,n-1) ... (n,1) (-n) (n,-1) ... (n,-(n-1))``, most significant first."""
    return "".join(str(b) for b in n_inversion_bits(x, n).values())


def nu_B(x: ClassB, n: int) -> int:
    bits = n_inversion_bits(x, n)
    nu = bits[(-n,)] << (n - 1)
    for i in range(1, n):
        nu += bits[(n, -i)] << (n - 1 - i)
        nu += bits[(n, i)] << (n - 1 + i)
    return nu


def successor_case(x: ClassB, n: int) -> str:
    if x.eps > 0:
        return "A1" if x.absolute == _full(n) else "A2"
    if x.pos:
        return "B1"
    if x.neg:
        return "B2"
    raise SuccessorUndefined("(-,{}) is the maximal class")


def successor_B(x: ClassB, n: int) -> ClassB:
    case = successor_case(x, n)
    full = _full(n)
    if case == "A1":
        return ClassB(-1, x.pos, x.neg)
    if case == "A2":
        m = (full & ~x.absolute).bit_length()
        keep = (1 << m) - 1
        return ClassB(1, x.pos, (x.neg & keep) | 1 << (m - 1))
    if case == "B1":
        k = x.pos.bit_length()
        above_free = full & ~((1 << k) - 1) & ~x.absolute
        return ClassB(-1, (x.pos & ~(1 << (k - 1))) | above_free, x.neg)
    s0 = (x.absolute & -x.absolute).bit_length()
    above_free = full & ~((1 << s0) - 1) & ~x.absolute
    return ClassB(1, 1 << (s0 - 1) | above_free, 0)


def is_special_successor(x: ClassB, n: int) -> bool:
    """Whether ``x -> s(x)`` is a plain pre-Reeb edge (A1, A2 with N empty, B1 with M empty)."""
    case = successor_case(x, n)
    if case == "A1":
        return True
    if case == "A2":
        m = (_full(n) & ~x.absolute).bit_length()
        return not x.neg >> m
    if case == "B1":
        k = x.pos.bit_length()
        return not (_full(n) & ~x.absolute) >> k
    return False


def enumerate_classes(n: int) -> list[ClassB]:
    """All ``2 * 3^(n-1)`` classes."""
    if n > 5:
        raise RankTooLarge(f"type B rank {n} exceeds 5")
    if n < 1:
        raise ValueError("rank must be at least 1")
    out = []
    for eps in (1, -1):
        for states in product((0, 1, -1), repeat=n - 1):
            out.append(ClassB.from_letters(eps, [s * (i + 1) for i, s in enumerate(states) if s]))
    return out


def successor_chain(n: int) -> list[ClassB]:
    x = ClassB(1)
    chain = [x]
    limit = 2 * 3 ** (n - 1)
    while x != ClassB(-1) and len(chain) <= limit:
        x = successor_B(x, n)
        chain.append(x)
    return chain


# Orientations of F_n.  Edge 0 is LR, edge 2i-1 is Li, edge 2i is iR.  Bit set =
# edge reversed relative to the base orientation L->R, L->i, i->R.

def orientation_edges(n: int) -> list[tuple]:
    edges = [("L", "R")]
    for i in range(1, n):
        edges += [("L", i), (i, "R")]
    return edges


def arcs(o: int, n: int) -> list[tuple]:
    return [(b, a) if o >> k & 1 else (a, b) for k, (a, b) in enumerate(orientation_edges(n))]


def is_acyclic_orientation(o: int, n: int) -> bool:
    """No vertex ``i`` with ``H -> i -> T``, where ``T -> H`` is the orientation of ``LR``."""
    T, H = ("R", "L") if o & 1 else ("L", "R")
    a = set(arcs(o, n))
    return not any((H, i) in a and (i, T) in a for i in range(1, n))


def acyclic_orientations(n: int) -> list[int]:
    return [o for o in range(1 << (2 * n - 1)) if is_acyclic_orientation(o, n)]


def describe_orientation(o: int, n: int) -> str:
    return ", ".join(f"{a}->{b}" for a, b in arcs(o, n))


def gamma_f(n: int) -> Digraph:
    """Flip graph on acyclic orientations: reverse one edge currently directed as in the base."""
    if not 1 <= n <= 5:
        raise RankTooLarge(f"gamma_f supports 1 <= n <= 5, got {n}")
    verts = acyclic_orientations(n)
    vs = set(verts)
    edges = [(o, o | 1 << k) for o in verts for k in range(2 * n - 1)
             if not o >> k & 1 and o | 1 << k in vs]
    return make_digraph(verts, edges, [describe_orientation(o, n) for o in verts])


def phi(x: ClassB, n: int) -> int:
    T, H = ("L", "R") if x.eps > 0 else ("R", "L")
    a = {(T, H)}
    for i in range(1, n):
        if x.pos >> (i - 1) & 1:
            a |= {(T, i), (H, i)}
        elif x.neg >> (i - 1) & 1:
            a |= {(i, T), (i, H)}
        else:
            a |= {(T, i), (i, H)}
    return sum(1 << k for k, e in enumerate(orientation_edges(n)) if e not in a)


def phi_inverse(o: int, n: int) -> ClassB:
    T, H = ("R", "L") if o & 1 else ("L", "R")
    a = set(arcs(o, n))
    letters = []
    for i in range(1, n):
        if (T, i) in a and (i, H) in a:
            continue
        if (T, i) in a and (H, i) in a:
            letters.append(i)
        elif (i, T) in a and (i, H) in a:
            letters.append(-i)
        else:
            raise ValueError(f"orientation {describe_orientation(o, n)} is not acyclic")
    return ClassB.from_letters(1 if T == "L" else -1, letters)


def expected_pre_reeb_edges(n: int) -> set[tuple]:
    """The three edge families of the pre-Reeb graph on ``(eps, A)`` classes."""
    edges = set()
    for x in enumerate_classes(n):
        if x.eps > 0:
            for i in range(n - 1):
                if not x.absolute >> i & 1:
                    edges.add((x, ClassB(1, x.pos | 1 << i, x.neg)))
                    edges.add((x, ClassB(1, x.pos, x.neg | 1 << i)))
            if x.absolute == _full(n):
                edges.add((x, ClassB(-1, x.pos, x.neg)))
        else:
            for i in _bits(x.pos):
                edges.add((x, ClassB(-1, x.pos & ~(1 << i), x.neg)))
            for i in _bits(x.neg):
                edges.add((x, ClassB(-1, x.pos, x.neg & ~(1 << i))))
    return edges


def classes_of(rg) -> dict:
    return {c: class_b(rg.representative(c)) for c in rg.classes}


def _inc(letters):
    return tuple(sorted(letters))


def _dec(letters):
    return tuple(sorted(letters, reverse=True))


def witness_generators_B(x: ClassB, n: int) -> tuple:
    """Explicit representatives ``(u, w)`` of ``x`` and ``s(x)`` for a non-plain successor edge."""
    case = successor_case(x, n)
    if is_special_successor(x, n):
        raise NotAuxiliaryCase(f"{x} -> s(x) is a pre-Reeb edge (case {case})")
    idx = range(1, n)
    has = lambda mask, i: bool(mask >> (i - 1) & 1)  # noqa: E731
    if case == "A2":
        m = (_full(n) & ~x.absolute).bit_length()
        P = [i for i in idx if has(x.pos, i)]
        Q = [i for i in idx if i < m and has(x.neg, i)]
        C = [i for i in idx if i < m and not has(x.absolute, i)]
        N = [i for i in idx if i > m and has(x.neg, i)]
        u = _inc(C) + (-m, n) + _inc(P) + _dec([-i for i in N]) + _dec([-i for i in Q])
        w = _inc(C) + _inc(N) + (n, -m) + _inc(P) + _dec([-i for i in Q])
    elif case == "B1":
        k = x.pos.bit_length()
        C = [i for i in idx if i < k and not has(x.absolute, i)]
        M = [i for i in idx if i > k and not has(x.absolute, i)]
        alpha = tuple(a for a in x.letters if a != k)
        u = _inc(C) + _inc(M) + (-n, k) + alpha
        w = _inc(C) + (k, -n) + _inc(M) + alpha
    else:
        s0 = (x.absolute & -x.absolute).bit_length()
        D = [i for i in idx if i > s0 and has(x.neg, i)]
        C = [i for i in idx if i > s0 and not has(x.absolute, i)]
        low = tuple(range(1, s0))
        u = low + _inc(C) + (-n, -s0) + _inc([-d for d in D])
        w = _inc([-d for d in D]) + low + (n, s0) + _inc(C)
    problem = _witness_problem(u, w, x, successor_B(x, n), n)
    if problem:
        raise WitnessInvalid(f"{x} (case {case}): {problem}")
    return u, w


def _witness_problem(u, w, x, y, n) -> str | None:
    if class_b(u) != x or class_b(w) != y:
        return "witness words lie in the wrong classes"
    pu = tuple(a for a in u if abs(a) != n)
    pw = tuple(a for a in w if abs(a) != n)
    if not inv_B(pw) < inv_B(pu):
        return "pi(w) < pi(u) fails"
    if weak_leq_B(u, w) or weak_leq_B(w, u):
        return "witness words are comparable"
    return None


def verify_gamma_iso(n: int) -> Report:
    """The map to orientations is a directed-graph isomorphism from the pre-Reeb graph to the flip graph."""
    if not 2 <= n <= 4:
        raise ValueError("verify_gamma_iso needs 2 <= n <= 4")
    rep = Report(f"type B pre-Reeb graph vs flip graph, n={n}")
    pr = deletion_B(n)
    rg = pre_reeb(pr)
    P = pr.domain
    xs = classes_of(rg)
    bad = next(((c, P.elements[i]) for c, members in enumerate(rg.partition.members)
                for i in members if class_b(P.elements[i]) != xs[c]), None)
    rep.check("(eps, A) is constant on horizontal classes", bad is None, bad)
    count = 2 * 3 ** (n - 1)
    rep.check(f"classes biject onto (eps, A) pairs ({count})",
              sorted(xs.values()) == sorted(enumerate_classes(n)), len(set(xs.values())))
    got = {(xs[a], xs[b]) for a, b in rg.edges()}
    want = expected_pre_reeb_edges(n)
    rep.check("edges are exactly the three pre-Reeb families", got == want,
              [(str(a), str(b)) for a, b in sorted(got ^ want)[:3]])

    G = gamma_f(n)
    img = {c: phi(x, n) for c, x in xs.items()}
    rep.check(f"phi is a bijection onto acyclic orientations ({len(G)})",
              sorted(img.values()) == sorted(G.vertices) and len(G) == count)
    rep.check("phi_inverse inverts phi", all(phi_inverse(img[c], n) == x for c, x in xs.items()))
    mapped = {(img[a], img[b]) for a, b in rg.edges()}
    gedges = G.pairs()
    fwd = sorted(mapped - gedges)
    back = sorted(gedges - mapped)
    rep.check("every pre-Reeb edge maps to a flip", not fwd,
              [(describe_orientation(a, n), describe_orientation(b, n)) for a, b in fwd[:2]])
    rep.check("every flip comes from a pre-Reeb edge", not back,
              [(describe_orientation(a, n), describe_orientation(b, n)) for a, b in back[:2]])
    rep.check("flip graph acyclic", is_acyclic(G) is True)
    profile = rank_profile(n)
    rep.data.update(vertices=len(G), edges=len(gedges), profile=profile)
    if n == 3:
        rep.check("rank profile of the flip graph is 1,4,4,4,4,1", profile == [1, 4, 4, 4, 4, 1], profile)
    return rep


def rank_profile(n: int) -> list[int]:
    """Number of acyclic orientations by number of edges reversed from the base."""
    counts = [0] * (2 * n)
    for o in acyclic_orientations(n):
        counts[bin(o).count("1")] += 1
    return counts


def verify_total_order_B(n: int) -> Report:
    if not 2 <= n <= 4:
        raise ValueError("verify_total_order_B needs 2 <= n <= 4")
    rep = Report(f"type B augmented pre-Reeb graph, n={n}")
    pr = deletion_B(n)
    rg = augmented_pre_reeb(pr)
    xs = classes_of(rg)
    cls = {x: c for c, x in xs.items()}
    nu = {c: nu_B(x, n) for c, x in xs.items()}

    bad = next((w for w in pr.domain.elements
                if bits_b(class_b(w), n) != "".join(str(int(s in inv_B(w))) for s in n_inversion_bits(ClassB(1), n))),
               None)
    rep.check("class bits equal the n-inversions of every representative", bad is None, bad)
    acyc = check_acyclic(rg)
    rep.check("augmented graph acyclic", acyc, acyc.witness)
    wit = verify_witnesses(rg)
    rep.check("stored edge witnesses valid", wit, wit.witness)
    alt = augmented_pre_reeb(pr, oracle="inversions")
    rep.check("auxiliary edges agree under the inversion oracle",
              alt.graph.edges == rg.graph.edges, sorted(alt.graph.edges ^ rg.graph.edges)[:3])
    badv = sorted((str(xs[a]), str(xs[b]), k) for a, b, k in rg.graph.edges if not nu[b] > nu[a])
    rep.check("every edge increases nu", not badv, badv[:3])

    chain = successor_chain(n)
    count = 2 * 3 ** (n - 1)
    rep.check(f"successor chain visits all {count} classes once, (+,{{}}) to (-,{{}})",
              len(chain) == count == len(set(chain)) and chain[-1] == ClassB(-1),
              [str(x) for x in chain[:3]])
    vals = [nu_B(x, n) for x in chain]
    rep.check("nu strictly increases along the successor chain",
              all(a < b for a, b in zip(vals, vals[1:])), vals)
    vert, aux = rg.edges("vertical"), rg.edges("auxiliary")
    missing, bad_w = [], []
    for x, y in zip(chain, chain[1:]):
        e = (cls[x], cls[y])
        if is_special_successor(x, n):
            if e not in vert:
                missing.append((str(x), "vertical"))
        else:
            if e not in aux:
                missing.append((str(x), "auxiliary"))
            try:
                witness_generators_B(x, n)
            except WitnessInvalid as exc:
                bad_w.append(str(exc))
    rep.check("all successor edges present in the augmented graph", not missing, missing[:3])
    rep.check("explicit auxiliary witnesses valid", not bad_w, bad_w[:3])
    top = nu_B(ClassB(-1), n)
    rep.check(f"nu at (-,{{}}) equals 2^(2n-1)-1 = {2 ** (2 * n - 1) - 1}", top == 2 ** (2 * n - 1) - 1, top)
    if acyc:
        reach = reachability_poset(rg.graph)
        rep.check(f"augmented Reeb poset is a total order of size {count}",
                  is_total_order(reach) and len(reach) == count)
        mism = [(str(xs[a]), str(xs[b])) for a in rg.classes for b in rg.classes
                if reach.leq(a, b) != (nu[a] <= nu[b])]
        rep.check("total order is the nu order", not mism, mism[:3])
        h = minimal_heights(rg)
        rep.check("minimal heights are positions along the successor chain",
                  all(h[cls[x]] == k for k, x in enumerate(chain)))
    rep.data.update(vertices=len(rg.classes), auxiliary=len(aux), vertical=len(vert), nu_max=top)
    return rep


def symbol_str(s: tuple) -> str:
    return f"({s[0]})" if len(s) == 1 else f"({s[0]},{s[1]})"


@dataclass(frozen=True)
class TableRow:
    index: int
    cls: ClassB
    inversions: tuple
    nu: int
    height: int

    def format(self) -> str:
        inv = "{" + ",".join(symbol_str(s) for s in self.inversions) + "}"
        eps = "+" if self.cls.eps > 0 else "-"
        a = "{" + ",".join(f"{x:+d}" for x in self.cls.letters) + "}"
        return f"{self.index} {eps} {a} {inv} {self.nu} {self.height}"


def table_rows(n: int = 3) -> list[TableRow]:
    """Classes along the augmented total order with their n-inversions, nu and minimal height."""
    rg = augmented_pre_reeb(deletion_B(n))
    xs = classes_of(rg)
    h = minimal_heights(rg)
    rows = []
    for c in sorted(rg.classes, key=lambda c: h[c]):
        x = xs[c]
        inv = tuple(s for s, b in n_inversion_bits(x, n).items() if b)
        rows.append(TableRow(h[c], x, inv, nu_B(x, n), h[c]))
    return rows


def format_table(n: int = 3) -> str:
    return "".join(r.format() + "\n" for r in table_rows(n))


def parse_table(text: str) -> list[tuple]:
    """Rows of a table file as ``(index, eps, A, inversion-set text, nu, height)``."""
    out = []
    for line in text.splitlines():
        tok = line.split()
        if tok:
            out.append((int(tok[0]), tok[1], tok[2], tok[3], int(tok[4]), int(tok[5])))
    return out


SOLVE_LINES = (1, 2, 4, 5)
CONSISTENT_LINES = (3, 6, 7)
BREAK_LINE = 8


def counterexample_weighted_sum() -> Report:
    """Minimal heights at ``n = 3`` are not a weighted sum of 3-inversions."""
    rows = table_rows(3)
    rep = Report("type B weighted-sum counterexample, n=3")
    weights: dict = {}
    for k in SOLVE_LINES:
        row = rows[k]
        unknown = [s for s in row.inversions if s not in weights]
        if not rep.check(f"line {k} has exactly one unknown weight", len(unknown) == 1, unknown):
            return rep
        weights[unknown[0]] = row.height - sum(weights.get(s, 0) for s in row.inversions if s != unknown[0])
    for k in CONSISTENT_LINES:
        row = rows[k]
        total = sum(weights[s] for s in row.inversions)
        rep.check(f"line {k}: weighted sum {total} equals minimal height {row.height}",
                  total == row.height, (total, row.height))
    row = rows[BREAK_LINE]
    total = sum(weights[s] for s in row.inversions)
    rep.check(f"line {BREAK_LINE}: weighted sum {total} differs from minimal height {row.height}",
              total != row.height, (total, row.height))
    rep.data.update(weights={symbol_str(s): v for s, v in weights.items()},
                    line8=(total, row.height), line8_inversions=tuple(map(symbol_str, row.inversions)))
    return rep
