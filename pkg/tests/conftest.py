import random

import pytest

from mortality.core import Nfa


def pair_nfa():
    # a floods from state 0, b floods from state 1: immortal, yet not total
    return Nfa.from_map(2, ("a", "b"), {("a", 0): {0, 1}, ("b", 1): {0, 1}})


def cerny(n):
    """Cycle a plus a letter b merging state 0 into state 1."""
    a = {("a", q): {(q + 1) % n} for q in range(n)}
    b = {("b", q): {q} for q in range(n)}
    b[("b", 0)] = {1}
    return Nfa.from_map(n, ("a", "b"), {**a, **b})


def random_nfa(rng, n, m, density=0.35):
    delta = tuple(
        tuple(sum(1 << t for t in range(n) if rng.random() < density) for _ in range(n))
        for _ in range(m)
    )
    return Nfa(n, tuple("abcdefgh"[:m]), delta)


def random_dfa(rng, n, m, partial=True):
    options = n + 1 if partial else n
    delta = []
    for _ in range(m):
        row = []
        for _ in range(n):
            t = rng.randrange(options)
            row.append(0 if t == n else 1 << t)
        delta.append(tuple(row))
    return Nfa(n, tuple("abcdefgh"[:m]), tuple(delta))


@pytest.fixture
def pair():
    return pair_nfa()


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import lines

    summary = lines()
    if summary:
        terminalreporter.section("acceptance criteria")
        for line in summary:
            terminalreporter.write_line(line)
