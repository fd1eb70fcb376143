"""Right weak orders on S_n (type A) and on signed permutations W_n (type B).

Words are tuples of nonzero ints.  Type-B letters use the signed order
``-n < ... < -1 < 1 < ... < n``, which is just integer order on the letters.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .errors import RankTooLarge, TypeMismatch
from .poset import Poset, build_poset

MAX_RANK_A = 7
MAX_RANK_B = 5

Word = tuple


def format_word(w: Word) -> str:
    return " ".join(map(str, w))


def parse_word(s: str) -> Word:
    return tuple(int(t) for t in s.replace(",", " ").split())


def word_label(w: Word) -> str:
    """Whitespace-free form used as a poset label."""
    return ",".join(map(str, w)) if w else "()"


def parse_word_label(s: str) -> Word:
    return () if s == "()" else tuple(int(t) for t in s.split(","))


def perms(n: int) -> list[Word]:
    """All permutations of ``1..n`` in lexicographic order."""
    if n > MAX_RANK_A:
        raise RankTooLarge(f"type A rank {n} exceeds {MAX_RANK_A}")
    if n < 1:
        raise ValueError("rank must be at least 1")
    return list(permutations(range(1, n + 1)))


def signed_perms(n: int) -> list[Word]:
    """All ``2^n n!`` signed permutations; ``n = 0`` gives the empty word."""
    if n > MAX_RANK_B:
        raise RankTooLarge(f"type B rank {n} exceeds {MAX_RANK_B}")
    if n < 0:
        raise ValueError("rank must be nonnegative")
    return [tuple(s * a for s, a in zip(signs, p))
            for p in permutations(range(1, n + 1))
            for signs in product((1, -1), repeat=n)]


def covers_A(w: Word) -> list[Word]:
    out = []
    for k in range(len(w) - 1):
        if w[k] < w[k + 1]:
            out.append(w[:k] + (w[k + 1], w[k]) + w[k + 2:])
    return out


def covers_B(w: Word) -> list[Word]:
    out = covers_A(w)
    if w and w[0] > 0:
        out.append((-w[0],) + w[1:])
    return out


@lru_cache(maxsize=None)
def weak_poset_A(n: int) -> Poset:
    ws = perms(n)
    return build_poset(ws, [(w, v) for w in ws for v in covers_A(w)], [word_label(w) for w in ws])


@lru_cache(maxsize=None)
def weak_poset_B(n: int) -> Poset:
    ws = signed_perms(n)
    return build_poset(ws, [(w, v) for w in ws for v in covers_B(w)], [word_label(w) for w in ws])


@lru_cache(maxsize=None)
def inv_A(w: Word) -> frozenset:
    """Symbols ``(j, i)``, ``i < j``, with ``j`` left of ``i`` in ``w``."""
    return frozenset((a, b) for k, a in enumerate(w) for b in w[k + 1:] if a > b)


@lru_cache(maxsize=None)
def inv_B(w: Word) -> frozenset:
    """Type-B inversion symbols ``(-i,)``, ``(j, -i)`` and ``(j, i)`` of a signed word.

    ``(-i,)`` is present iff the letter ``-i`` occurs, for every ``i`` in ``[n]``.
    """
    pos = {abs(a): k for k, a in enumerate(w)}
    neg = {abs(a) for a in w if a < 0}
    out = {(-i,) for i in neg}
    n = len(w)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            # (+-i) before -j: contributes to both (j,-i) and (j,i)
            i_before_neg_j = j in neg and pos[i] < pos[j]
            if i_before_neg_j or (i in neg and pos[j] < pos[i]):
                out.add((j, -i))
            if i_before_neg_j or (i not in neg and pos[j] < pos[i]):
                out.add((j, i))
    return frozenset(out)


def _kind(u: Word, v: Word, kind: str | None) -> str:
    if len(u) != len(v):
        raise TypeMismatch(f"ranks differ: {len(u)} vs {len(v)}")
    signed = any(a < 0 for a in u + v)
    if kind is None:
        return "B" if signed else "A"
    if kind == "A" and signed:
        raise TypeMismatch("negative letters in a type-A word")
    return kind


def weak_leq_by_inversions(u: Word, v: Word, kind: str | None = None) -> bool:
    """``Inv(u) <= Inv(v)``.

    Without ``kind``, words with a negative letter are read as type B.  For
    all-positive words both readings agree.
    """
    inv = inv_B if _kind(u, v, kind) == "B" else inv_A
    return inv(u) <= inv(v)


def weak_leq_A(u: Word, v: Word) -> bool:
    return weak_leq_by_inversions(u, v, "A")


def weak_leq_B(u: Word, v: Word) -> bool:
    return weak_leq_by_inversions(u, v, "B")


def lehmer_code(w: Word) -> tuple:
    """Coordinate ``j-2`` counts letters smaller than ``j`` lying right of ``j`` (``j = 2..n``)."""
    pos = {a: k for k, a in enumerate(w)}
    return tuple(sum(1 for i in range(1, j) if pos[i] > pos[j]) for j in range(2, len(w) + 1))
