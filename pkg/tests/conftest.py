import itertools

import pytest

from partite_eppa.core import Tournament

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(number, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return _record


def small_tournaments(max_k, max_parts=None):
    """Every tournament on 1..k (k <= max_k) with canonically numbered parts."""
    for k in range(1, max_k + 1):
        for part_of in itertools.product(range(1, k + 1), repeat=k):
            # parts numbered in order of first appearance
            seen = []
            for p in part_of:
                if p not in seen:
                    seen.append(p)
            if seen != list(range(1, len(seen) + 1)):
                continue
            n = len(seen)
            if max_parts is not None and n > max_parts:
                continue
            pairs = [(x, y) for x, y in itertools.combinations(range(1, k + 1), 2)
                     if part_of[x - 1] != part_of[y - 1]]
            for bits in itertools.product((0, 1), repeat=len(pairs)):
                edges = frozenset((y, x) if b else (x, y) for (x, y), b in zip(pairs, bits))
                yield Tournament(tuple(part_of), edges, n)


@pytest.fixture
def edge12():
    return Tournament.from_parts([[1], [2]], [(1, 2)])


@pytest.fixture
def transitive3():
    return Tournament.from_parts([[1], [2], [3]], [(1, 2), (1, 3), (2, 3)])
