"""Independent oracles shared by the test modules.

Nothing here goes through the package's bitset reachability: orders are
recomputed by breadth-first search over cover lists.
"""

from collections import deque
from itertools import permutations, product

import pytest


def closure(elements, succ):
    """Map each element to the set of elements reachable from it (reflexively)."""
    out = {}
    for x in elements:
        seen = {x}
        todo = deque([x])
        while todo:
            y = todo.popleft()
            for z in succ(y):
                if z not in seen:
                    seen.add(z)
                    todo.append(z)
        out[x] = seen
    return out


def swaps(w):
    return [w[:k] + (w[k + 1], w[k]) + w[k + 2:] for k in range(len(w) - 1) if w[k] < w[k + 1]]


def swaps_and_flip(w):
    out = swaps(w)
    if w and w[0] > 0:
        out.append((-w[0],) + w[1:])
    return out


def all_perms(n):
    return list(permutations(range(1, n + 1)))


def all_signed(n):
    return [tuple(s * a for s, a in zip(signs, p)) for p in permutations(range(1, n + 1))
            for signs in product((1, -1), repeat=n)]


def length_B(w):
    """Coxeter length of a signed permutation in window notation."""
    n = len(w)
    neg = sum(1 for a in w if a < 0)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if -w[i] > w[j])
    return neg + inv + nsp


@pytest.fixture(scope="session")
def weak_closure_A():
    return {n: closure(all_perms(n), swaps) for n in range(1, 6)}


@pytest.fixture(scope="session")
def weak_closure_B():
    return {n: closure(all_signed(n), swaps_and_flip) for n in range(1, 5)}


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request, capsys):
    """Record one PASS/FAIL line per acceptance criterion and fail the test on FAIL."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(k, title, failures):
        line = f"{'PASS' if not failures else 'FAIL'} criterion {k:>2}: {title}"
        if failures:
            line += f" ({failures[0]})"
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert not failures, failures

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[-1])):
            terminalreporter.write_line(line)
