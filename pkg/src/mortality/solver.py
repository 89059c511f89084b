"""Breadth-first search over the powerset of states.

Every search here is a level-synchronous BFS whose frontier is an ``int64``
array of state-set bitmasks.  Discovery order within a level follows
(parent position, letter index), which is exactly the order a FIFO queue
visiting letters in declared order would produce, so witnesses are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import MAX_STATES, Dfa, Nfa, as_dfa, members
from .errors import CapacityError, TooLarge

SATURATED = (1 << 64) - 1
D1_MAX_STATES = 12


@dataclass
class SearchTrace:
    visited: int = 1
    depth: int = 0
    frontier_sizes: list[int] = field(default_factory=lambda: [1])


@dataclass
class SolveResult:
    mortal: bool
    threshold: int | None = None
    witness: tuple[int, ...] | None = None
    shortest_count: int | None = None
    count_overflow: bool = False
    trace: SearchTrace = field(default_factory=SearchTrace, repr=False)

    @property
    def verdict(self) -> str:
        return "mortal" if self.mortal else "immortal"


@dataclass
class SyncResult:
    """Shortest word collapsing the automaton to the single state ``state``."""

    threshold: int
    witness: tuple[int, ...]
    state: int
    shortest_count: int | None = None
    count_overflow: bool = False
    trace: SearchTrace = field(default_factory=SearchTrace, repr=False)


@dataclass
class _Hit:
    depth: int
    node: int
    witness: tuple[int, ...]
    count: int | None
    overflow: bool


def _check_capacity(nfa: Nfa) -> None:
    if nfa.n > MAX_STATES:
        raise CapacityError(f"{nfa.n} states exceeds capacity {MAX_STATES}")


def _sum_counts(inverse: np.ndarray, weights: np.ndarray, size: int):
    """Per-node sums of path counts, saturating at 2**64 - 1."""
    approx = np.bincount(inverse, weights=weights.astype(np.float64), minlength=size)
    if size == 0 or approx.max() < 2.0**63:
        out = np.zeros(size, dtype=np.uint64)
        np.add.at(out, inverse, weights)
        return out, False
    exact = [0] * size
    for i, c in zip(inverse.tolist(), weights.tolist()):
        exact[i] += int(c)
    overflow = any(x >= SATURATED for x in exact)
    return np.array([min(x, SATURATED) for x in exact], dtype=np.uint64), overflow


def _bfs(
    nfa: Nfa,
    start: int,
    goal: Callable[[np.ndarray], np.ndarray] | None,
    applicable: Sequence[int] | None = None,
    count: bool = False,
    trace: SearchTrace | None = None,
    keep_nodes: list | None = None,
) -> _Hit | None:
    """Search from ``start`` until a node satisfying ``goal`` is discovered.

    ``applicable[a]`` restricts letter ``a`` to sets contained in that mask.
    Returns ``None`` once every reachable set is exhausted.
    """
    _check_capacity(nfa)
    trace = trace if trace is not None else SearchTrace()
    m = nfa.m
    frontier = np.array([start], dtype=np.int64)
    if keep_nodes is not None:
        keep_nodes.append(frontier)
    if goal is not None and goal(frontier)[0]:
        return _Hit(0, start, (), 1 if count else None, False)

    visited = np.zeros(1 << nfa.n, dtype=bool)
    visited[start] = True
    counts = np.ones(1, dtype=np.uint64) if count else None
    overflow = False
    levels: list[tuple[np.ndarray, np.ndarray]] = []
    letter_ids = np.arange(m, dtype=np.int64)

    while frontier.size:
        images = np.empty((frontier.size, m), dtype=np.int64)
        for a in range(m):
            col = nfa.image_array(frontier, a)
            if applicable is not None:
                col = np.where(frontier & ~np.int64(applicable[a]), -1, col)
            images[:, a] = col
        flat = images.ravel()
        ok = flat >= 0
        ok[ok] = ~visited[flat[ok]]
        edge_pos = np.flatnonzero(ok)
        targets = flat[edge_pos]
        uniq, first, inverse = np.unique(targets, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        new = uniq[order]
        first_pos = edge_pos[first[order]]
        parent = first_pos // m
        letter = letter_ids[first_pos % m]
        if count:
            rank = np.empty_like(order)
            rank[order] = np.arange(order.size)
            new_counts, of = _sum_counts(
                rank[inverse], counts[edge_pos // m], new.size
            )
            overflow |= of
        visited[new] = True
        levels.append((parent, letter))
        trace.depth += 1
        trace.visited += int(new.size)
        trace.frontier_sizes.append(int(new.size))
        if keep_nodes is not None and new.size:
            keep_nodes.append(new)
        if goal is not None and new.size:
            hits = np.flatnonzero(goal(new))
            if hits.size:
                idx = int(hits[0])
                witness = _reconstruct(levels, idx)
                total = None
                if count:
                    total = sum(int(new_counts[h]) for h in hits)
                    if total >= SATURATED:
                        overflow = True
                        total = SATURATED
                return _Hit(trace.depth, int(new[idx]), witness, total, overflow)
        frontier = new
        if count:
            counts = new_counts
    # the last appended level was empty
    trace.depth -= 1
    trace.frontier_sizes.pop()
    return None


def _reconstruct(levels, idx: int) -> tuple[int, ...]:
    word = []
    for parent, letter in reversed(levels):
        word.append(int(letter[idx]))
        idx = int(parent[idx])
    return tuple(reversed(word))


def _is_empty(nodes: np.ndarray) -> np.ndarray:
    return nodes == 0


def _is_singleton(nodes: np.ndarray) -> np.ndarray:
    return (nodes != 0) & ((nodes & (nodes - 1)) == 0)


def solve_mortality(nfa: Nfa | Dfa, count_shortest: bool = False) -> SolveResult:
    """Shortest mortal word by BFS from the full state set to the empty set."""
    nfa = nfa.nfa if isinstance(nfa, Dfa) else nfa
    trace = SearchTrace()
    hit = _bfs(nfa, nfa.full, _is_empty, count=count_shortest, trace=trace)
    if hit is None:
        return SolveResult(False, trace=trace)
    return SolveResult(
        True,
        threshold=hit.depth,
        witness=hit.witness,
        shortest_count=hit.count,
        count_overflow=hit.overflow,
        trace=trace,
    )


def is_mortal_word(nfa: Nfa | Dfa, word: Sequence[int]) -> bool:
    nfa = nfa.nfa if isinstance(nfa, Dfa) else nfa
    return nfa.image_word(nfa.full, word) == 0


def reachable_subsets(nfa: Nfa, start: int | None = None) -> np.ndarray:
    """All sets reachable from ``start`` (default: the full set), in BFS order."""
    nodes: list[np.ndarray] = []
    _bfs(nfa, nfa.full if start is None else start, None, keep_nodes=nodes)
    return np.concatenate(nodes)


def _sync_result(hit: _Hit | None, trace: SearchTrace) -> SyncResult | None:
    if hit is None:
        return None
    return SyncResult(
        hit.depth,
        hit.witness,
        hit.node.bit_length() - 1,
        shortest_count=hit.count,
        count_overflow=hit.overflow,
        trace=trace,
    )


def solve_careful_sync(dfa: Dfa | Nfa, count_shortest: bool = False) -> SyncResult | None:
    """Shortest carefully synchronizing word, or ``None`` if there is none.

    A letter may only be applied to a set if it is defined on every member.
    """
    dfa = as_dfa(dfa)
    trace = SearchTrace()
    hit = _bfs(
        dfa.nfa,
        dfa.nfa.full,
        _is_singleton,
        applicable=dfa.defined,
        count=count_shortest,
        trace=trace,
    )
    return _sync_result(hit, trace)


def solve_reset_threshold(dfa: Dfa | Nfa, count_shortest: bool = False) -> SyncResult | None:
    """Shortest synchronizing word of a complete DFA, or ``None``."""
    dfa = as_dfa(dfa)
    dfa.require_complete()
    trace = SearchTrace()
    hit = _bfs(dfa.nfa, dfa.nfa.full, _is_singleton, count=count_shortest, trace=trace)
    return _sync_result(hit, trace)


def solve_d1_directing(nfa: Nfa | Dfa) -> SyncResult | None:
    """Shortest word sending every state to the same singleton, or ``None``.

    Searches over tuples holding the image of each individual start state.
    A tuple with an empty entry can never become directing and is dropped.
    """
    nfa = nfa.nfa if isinstance(nfa, Dfa) else nfa
    if nfa.n > D1_MAX_STATES:
        raise TooLarge(f"D1-directing search is limited to {D1_MAX_STATES} states")
    trace = SearchTrace()

    def directing(t: tuple[int, ...]) -> bool:
        first = t[0]
        return first != 0 and first & (first - 1) == 0 and all(x == first for x in t)

    start = tuple(1 << q for q in range(nfa.n))
    if directing(start):
        return SyncResult(0, (), 0, trace=trace)
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], int] | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            for a in range(nfa.m):
                child = tuple(nfa.image(x, a) for x in node)
                if 0 in child or child in parent:
                    continue
                parent[child] = (node, a)
                nxt.append(child)
                if directing(child):
                    trace.depth += 1
                    trace.visited = len(parent)
                    trace.frontier_sizes.append(len(nxt))
                    word = []
                    cur = child
                    while parent[cur] is not None:
                        cur, letter = parent[cur]
                        word.append(letter)
                    word.reverse()
                    return SyncResult(len(word), tuple(word), members(child[0])[0], trace=trace)
        if nxt:
            trace.depth += 1
            trace.frontier_sizes.append(len(nxt))
        frontier = nxt
    trace.visited = len(parent)
    return None
