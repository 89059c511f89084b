"""Binary-counter bookkeeping over designated tracker states.

``bin`` of a state set reads the tracker states q1..qk as binary digits,
most significant first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Nfa
from .families import FamilyInstance
from .solver import reachable_subsets
from .errors import UsageError


@dataclass(frozen=True)
class BinTracker:
    nfa: Nfa
    states: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise UsageError("tracker states must be distinct")
        if any(not 0 <= q < self.nfa.n for q in self.states):
            raise UsageError("tracker state out of range")

    @classmethod
    def for_instance(cls, instance: FamilyInstance) -> "BinTracker":
        return cls(instance.nfa, instance.tracker())

    @property
    def k(self) -> int:
        return len(self.states)

    @property
    def mask(self) -> int:
        return sum(1 << q for q in self.states)


def bin_value(tracker: BinTracker, active: int) -> int:
    value = 0
    for q in tracker.states:
        value = (value << 1) | ((active >> q) & 1)
    return value


def _bin_array(tracker: BinTracker, active: np.ndarray) -> np.ndarray:
    value = np.zeros_like(active)
    for q in tracker.states:
        value = (value << 1) | ((active >> q) & 1)
    return value


@dataclass(frozen=True)
class TraceRow:
    length: int
    active: int
    bin: int
    letter: int | None  # the letter whose application produced this row


def trace(nfa: Nfa, tracker: BinTracker, word: Sequence[int]) -> list[TraceRow]:
    active = nfa.full
    rows = [TraceRow(0, active, bin_value(tracker, active), None)]
    for i, a in enumerate(word, start=1):
        active = nfa.image(active, a)
        rows.append(TraceRow(i, active, bin_value(tracker, active), a))
    return rows


@dataclass
class DecrementReport:
    ok: bool
    checked: int
    # (subset, letter, bin before, bin after) of the first violation
    violation: tuple[int, int, int, int] | None = None


def check_decrement(nfa: Nfa, tracker: BinTracker) -> DecrementReport:
    """Check bin(S . a) >= bin(S) - 1 for every reachable S and letter a."""
    subsets = reachable_subsets(nfa)
    before = _bin_array(tracker, subsets)
    bad_at = None
    for a in range(nfa.m):
        after = _bin_array(tracker, nfa.image_array(subsets, a))
        bad = np.flatnonzero(after < before - 1)
        if bad.size:
            i = int(bad[0])
            cand = (i, a, int(subsets[i]), int(before[i]), int(after[i]))
            if bad_at is None or (i, a) < bad_at[:2]:
                bad_at = cand
    checked = int(subsets.size) * nfa.m
    if bad_at is None:
        return DecrementReport(True, checked)
    i, a, subset, lo, hi = bad_at
    return DecrementReport(False, checked, (subset, a, lo, hi))


@dataclass
class CheckpointReport:
    positions: list[int] = field(default_factory=list)  # prefix lengths
    values: list[int] = field(default_factory=list)
    resets: list[int] = field(default_factory=list)  # prefix lengths of full reactivations
    violations: list[int] = field(default_factory=list)  # index into positions

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def steps(self) -> list[int]:
        return [b - a for a, b in zip(self.values, self.values[1:])]


def _reactivations(rows: list[TraceRow], reset_mask: int) -> list[int]:
    out = []
    prev_full = True
    for row in rows[1:]:
        now_full = row.active & reset_mask == reset_mask
        if now_full and not prev_full:
            out.append(row.length)
        prev_full = now_full
    return out


def _judge(report: CheckpointReport) -> CheckpointReport:
    for i in range(1, len(report.positions)):
        lo, hi = report.positions[i - 1], report.positions[i]
        if any(lo < r <= hi for r in report.resets):
            continue
        if report.values[i] < report.values[i - 1] - 1:
            report.violations.append(i)
    return report


def check_checkpoints_ternary(instance: FamilyInstance, word: Sequence[int]) -> CheckpointReport:
    """bin at every prefix ending in ``c s``; consecutive values may drop by at most one
    unless Q and f were all reactivated in between."""
    if instance.family != "ternary":
        raise UsageError("checkpoint check needs a ternary instance")
    nfa = instance.nfa
    tracker = BinTracker.for_instance(instance)
    rows = trace(nfa, tracker, word)
    c, s = nfa.letter_index("c"), nfa.letter_index("s")
    report = CheckpointReport(resets=_reactivations(rows, tracker.mask | instance.states("f")))
    for i in range(2, len(rows)):
        if word[i - 2] == c and word[i - 1] == s:
            report.positions.append(i)
            report.values.append(rows[i].bin)
    return _judge(report)


def check_checkpoints_binary(instance: FamilyInstance, word: Sequence[int]) -> CheckpointReport:
    """bin at the first prefix of every maximal run during which p0 is active."""
    if instance.family != "binary":
        raise UsageError("checkpoint check needs a binary instance")
    nfa = instance.nfa
    tracker = BinTracker.for_instance(instance)
    rows = trace(nfa, tracker, word)
    p0 = instance.states("p0")
    report = CheckpointReport(resets=_reactivations(rows, tracker.mask | instance.states("f")))
    was_active = False
    for row in rows:
        active = bool(row.active & p0)
        if active and not was_active and row.length > 0:
            report.positions.append(row.length)
            report.values.append(row.bin)
        was_active = active
    return _judge(report)
