"""Exhaustive and seeded random search for extremal thresholds on small automata.

Random mode draws every (letter, state) image independently and uniformly
from the class's options with ``numpy.random.default_rng(seed)`` (PCG64):
a subset for NFAs, a state or "undefined" for partial DFAs, a state for
complete DFAs.  All samples are drawn up front, so the report does not
depend on how candidates are split across workers.
"""

from __future__ import annotations

import itertools
import math
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import MAX_STATES, Nfa, serialize
from .errors import BudgetExceeded, UsageError
from .solver import solve_careful_sync, solve_mortality, solve_reset_threshold

CLASSES = ("nfa", "dfa-partial", "dfa-complete")
MODES = ("exhaustive", "random")
OBJECTIVES = ("mortality", "reset", "careful")
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SearchSpec:
    states: int
    letters: int
    cls: str = "nfa"
    mode: str = "exhaustive"
    objective: str = "mortality"
    seed: int | None = None
    samples: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    prune_isomorphs: bool = False

    def __post_init__(self):
        if not 1 <= self.states <= MAX_STATES:
            raise UsageError(f"states must be in [1, {MAX_STATES}]")
        if not 1 <= self.letters <= len(string.ascii_lowercase):
            raise UsageError("letters must be in [1, 26]")
        if self.cls not in CLASSES:
            raise UsageError(f"class must be one of {', '.join(CLASSES)}")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {', '.join(MODES)}")
        if self.objective not in OBJECTIVES:
            raise UsageError(f"objective must be one of {', '.join(OBJECTIVES)}")
        if self.objective == "reset" and self.cls != "dfa-complete":
            raise UsageError("reset threshold needs class dfa-complete")
        if self.objective == "careful" and self.cls == "nfa":
            raise UsageError("careful synchronization needs a DFA class")
        if self.mode == "random" and (self.seed is None or self.samples < 1):
            raise UsageError("random mode needs a seed and a positive sample count")
        if self.workers < 1:
            raise UsageError("workers must be positive")

    @property
    def options(self) -> tuple[int, ...]:
        n = self.states
        if self.cls == "nfa":
            return tuple(range(1 << n))
        singles = tuple(1 << q for q in range(n))
        return (0,) + singles if self.cls == "dfa-partial" else singles

    @property
    def size(self) -> int:
        """Number of solver calls the search would make."""
        if self.mode == "random":
            return self.samples
        return len(self.options) ** (self.states * self.letters)


@dataclass(frozen=True)
class SearchReport:
    spec: SearchSpec
    best: int | None
    witness: str | None
    optima: int
    evaluated: int

    def render(self) -> str:
        head = self.witness or ""
        best = "none" if self.best is None else str(self.best)
        return f"{head}best={best} evaluated={self.evaluated} optima={self.optima}\n"


def letter_names(m: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:m])


def _build(spec: SearchSpec, cells: tuple[int, ...]) -> Nfa:
    n = spec.states
    delta = tuple(tuple(cells[a * n:(a + 1) * n]) for a in range(spec.letters))
    return Nfa(n, letter_names(spec.letters), delta)


def objective_value(spec: SearchSpec, nfa: Nfa) -> int | None:
    if spec.objective == "mortality":
        return solve_mortality(nfa).threshold
    if spec.objective == "reset":
        res = solve_reset_threshold(nfa)
    else:
        res = solve_careful_sync(nfa)
    return None if res is None else res.threshold


def _permute(cells: tuple[int, ...], perm: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = [0] * len(cells)
    for idx, mask in enumerate(cells):
        a, q = divmod(idx, n)
        image = 0
        for t in range(n):
            if mask >> t & 1:
                image |= 1 << perm[t]
        out[a * n + perm[q]] = image
    return tuple(out)


def is_canonical(cells: tuple[int, ...], n: int) -> bool:
    """True iff no state relabelling gives a lexicographically smaller table."""
    return all(
        _permute(cells, perm, n) >= cells for perm in itertools.permutations(range(n))
    )


def _candidates(spec: SearchSpec, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    opts = spec.options
    cells = spec.states * spec.letters
    if spec.mode == "random":
        picks = _random_picks(spec)[start:stop]
        for row in picks:
            yield tuple(opts[i] for i in row)
        return
    base = len(opts)
    for index in range(start, stop):
        digits = []
        for _ in range(cells):
            index, d = divmod(index, base)
            digits.append(opts[d])
        yield tuple(reversed(digits))


def _random_picks(spec: SearchSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    return rng.integers(0, len(spec.options), size=(spec.samples, spec.states * spec.letters))


def _run_chunk(spec: SearchSpec, start: int, stop: int):
    best = None
    witness = None
    optima = evaluated = 0
    for cells in _candidates(spec, start, stop):
        if spec.prune_isomorphs and not is_canonical(cells, spec.states):
            continue
        nfa = _build(spec, cells)
        evaluated += 1
        value = objective_value(spec, nfa)
        if value is None:
            continue
        if best is None or value > best:
            best, witness, optima = value, serialize(nfa), 1
        elif value == best:
            optima += 1
            text = serialize(nfa)
            if text < witness:
                witness = text
    return best, witness, optima, evaluated


def _merge(parts) -> tuple[int | None, str | None, int, int]:
    best = max((p[0] for p in parts if p[0] is not None), default=None)
    evaluated = sum(p[3] for p in parts)
    if best is None:
        return None, None, 0, evaluated
    winners = [p for p in parts if p[0] == best]
    return best, min(p[1] for p in winners), sum(p[2] for p in winners), evaluated


def search(spec: SearchSpec) -> SearchReport:
    total = spec.size
    if total > spec.budget:
        raise BudgetExceeded(total, spec.budget)
    chunks = max(1, min(spec.workers, total))
    step = math.ceil(total / chunks)
    bounds = [(i, min(i + step, total)) for i in range(0, total, step)]
    if spec.workers == 1 or len(bounds) == 1:
        parts = [_run_chunk(spec, lo, hi) for lo, hi in bounds]
    else:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            futures = [pool.submit(_run_chunk, spec, lo, hi) for lo, hi in bounds]
            parts = [f.result() for f in futures]
    best, witness, optima, evaluated = _merge(parts)
    return SearchReport(spec, best, witness, optima, evaluated)


def upper_bound(spec: SearchSpec) -> int:
    n = spec.states
    if spec.objective == "mortality" and spec.cls != "nfa":
        return n * (n + 1) // 2
    return 2**n - 1


def verify_bounds(report: SearchReport) -> bool:
    return report.best is None or report.best <= upper_bound(report.spec)
