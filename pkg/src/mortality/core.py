"""Automaton data model, subset images and the line-based text format.

State sets are plain ``int`` bitmasks: bit ``q`` is set iff state ``q`` is a
member.  An :class:`Nfa` maps every (letter, state) pair to such a mask; the
empty mask means "no transition".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CapacityError,
    IncompleteDfa,
    MissingHeader,
    NotDeterministic,
    ParseError,
    UsageError,
)

MAX_STATES = 26
_CHUNK = 8

Word = tuple  # tuple of letter indices


def stateset(states: Iterable[int]) -> int:
    mask = 0
    for q in states:
        if q < 0:
            raise UsageError(f"negative state index {q}")
        mask |= 1 << q
    return mask


def members(mask: int) -> list[int]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return out


def full_set(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Nfa:
    """An NFA without initial or final states.

    ``delta[a][q]`` is the bitmask of successors of state ``q`` under the
    letter with index ``a``.
    """

    n: int
    letters: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("an automaton needs at least one state")
        if self.n > MAX_STATES:
            raise CapacityError(f"{self.n} states exceeds capacity {MAX_STATES}")
        if not self.letters:
            raise UsageError("an automaton needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise UsageError(f"duplicate letter names in {self.letters}")
        for name in self.letters:
            if not name or any(ch.isspace() or ch in ",:#" for ch in name):
                raise UsageError(f"invalid letter name {name!r}")
        if len(self.delta) != len(self.letters):
            raise UsageError("delta must have one row per letter")
        limit = full_set(self.n)
        for a, row in enumerate(self.delta):
            if len(row) != self.n:
                raise UsageError(f"delta row for letter {self.letters[a]} has wrong length")
            for q, target in enumerate(row):
                if target & ~limit or target < 0:
                    raise UsageError(
                        f"transition ({self.letters[a]}, {q}) targets a state >= {self.n}"
                    )

    @classmethod
    def from_map(
        cls,
        n: int,
        letters: Sequence[str],
        transitions: Mapping[tuple[str, int], Iterable[int]],
    ) -> "Nfa":
        """Build from ``{(letter name, state): targets}``; absent pairs are empty."""
        letters = tuple(letters)
        index = {name: a for a, name in enumerate(letters)}
        rows = [[0] * n for _ in letters]
        for (name, q), targets in transitions.items():
            if name not in index:
                raise UsageError(f"unknown letter {name!r}")
            if not 0 <= q < n:
                raise UsageError(f"state {q} out of range")
            rows[index[name]][q] = stateset(targets)
        return cls(n, letters, tuple(tuple(r) for r in rows))

    @property
    def m(self) -> int:
        return len(self.letters)

    @property
    def full(self) -> int:
        return full_set(self.n)

    def letter_index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise UsageError(f"unknown letter {name!r}") from None

    def word(self, names: Iterable[str]) -> Word:
        """Translate letter names into a word of letter indices."""
        return tuple(self.letter_index(x) for x in names)

    def spell(self, word: Sequence[int]) -> list[str]:
        return [self.letters[a] for a in word]

    @cached_property
    def _chunk_tables(self) -> list[list[list[int]]]:
        # tables[a][c][byte] = union of images of the states encoded by `byte`
        # in chunk c; an image is then a handful of lookups.
        chunks = (self.n + _CHUNK - 1) // _CHUNK
        tables = []
        for row in self.delta:
            per_letter = []
            for c in range(chunks):
                base = c * _CHUNK
                width = min(_CHUNK, self.n - base)
                table = [0] * (1 << _CHUNK)
                for byte in range(1, 1 << width):
                    low = byte & -byte
                    table[byte] = table[byte ^ low] | row[base + low.bit_length() - 1]
                per_letter.append(table)
            tables.append(per_letter)
        return tables

    @cached_property
    def _np_tables(self) -> list[list[np.ndarray]]:
        return [
            [np.asarray(t, dtype=np.int64) for t in per_letter]
            for per_letter in self._chunk_tables
        ]

    def image(self, s: int, a: int) -> int:
        """Union of the images of the states of ``s`` under letter ``a``."""
        if not 0 <= a < len(self.letters):
            raise UsageError(f"letter index {a} out of range")
        out = 0
        for table in self._chunk_tables[a]:
            if s == 0:
                break
            out |= table[s & 0xFF]
            s >>= _CHUNK
        return out

    def image_array(self, s: np.ndarray, a: int) -> np.ndarray:
        """Vectorised :meth:`image` over an ``int64`` array of state sets."""
        tables = self._np_tables[a]
        out = tables[0][s & 0xFF]
        for c in range(1, len(tables)):
            out = out | tables[c][(s >> (c * _CHUNK)) & 0xFF]
        return out

    def image_word(self, s: int, word: Sequence[int]) -> int:
        for a in word:
            s = self.image(s, a)
        return s


def image(nfa: Nfa, s: int, a: int) -> int:
    return nfa.image(s, a)


def image_word(nfa: Nfa, s: int, word: Sequence[int]) -> int:
    return nfa.image_word(s, word)


def is_total(nfa: Nfa) -> bool:
    return all(t != 0 for row in nfa.delta for t in row)


def is_sink(nfa: Nfa, q: int) -> bool:
    if not 0 <= q < nfa.n:
        raise UsageError(f"state {q} out of range")
    return all(row[q] == 1 << q for row in nfa.delta)


class Dfa:
    """Read-only deterministic view over an :class:`Nfa` (partiality allowed)."""

    def __init__(self, nfa: Nfa):
        # state-major scan: the reported violation is the lowest state
        for q in range(nfa.n):
            for a, row in enumerate(nfa.delta):
                t = row[q]
                if t & (t - 1):
                    raise NotDeterministic(nfa.letters[a], q)
        self.nfa = nfa

    @property
    def n(self) -> int:
        return self.nfa.n

    @property
    def letters(self) -> tuple[str, ...]:
        return self.nfa.letters

    def step(self, q: int, a: int) -> int | None:
        t = self.nfa.delta[a][q]
        return t.bit_length() - 1 if t else None

    @cached_property
    def defined(self) -> tuple[int, ...]:
        """Per letter, the mask of states on which it is defined."""
        return tuple(
            stateset(q for q, t in enumerate(row) if t) for row in self.nfa.delta
        )

    def is_complete(self) -> bool:
        return all(d == self.nfa.full for d in self.defined)

    def require_complete(self) -> None:
        for a, row in enumerate(self.nfa.delta):
            for q, t in enumerate(row):
                if not t:
                    raise IncompleteDfa(self.letters[a], q)

    def __eq__(self, other):
        return isinstance(other, Dfa) and other.nfa == self.nfa

    def __hash__(self):
        return hash(self.nfa)

    def __repr__(self):
        return f"Dfa({self.nfa!r})"


def as_dfa(nfa: Nfa) -> Dfa:
    return nfa if isinstance(nfa, Dfa) else Dfa(nfa)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse(text: str) -> Nfa:
    """Parse the line-based automaton format.

    ::

        nfa states=2 letters=a,b
        a 0: 0 1
        b 1: 0 1
    """
    header = None
    rows: dict[tuple[int, int], int] = {}
    n = 0
    letters: tuple[str, ...] = ()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if header is None:
            header = lineno
            n, letters = _parse_header(line, lineno)
            index = {name: a for a, name in enumerate(letters)}
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError(lineno, "expected '<letter> <state>: <targets>'")
        parts = head.split()
        if len(parts) != 2:
            raise ParseError(lineno, "expected '<letter> <state>' before ':'")
        name, state = parts
        if name not in index:
            raise ParseError(lineno, f"unknown letter {name!r}")
        q = _parse_index(state, n, lineno)
        key = (index[name], q)
        if key in rows:
            raise ParseError(lineno, f"duplicate row for letter {name!r}, state {q}")
        rows[key] = stateset(_parse_index(t, n, lineno) for t in tail.split())
    if header is None:
        raise MissingHeader(1, "missing 'nfa states=<n> letters=<names>' header")
    delta = tuple(
        tuple(rows.get((a, q), 0) for q in range(n)) for a in range(len(letters))
    )
    try:
        return Nfa(n, letters, delta)
    except (UsageError, CapacityError) as exc:
        raise ParseError(header, str(exc)) from None


def _parse_header(line: str, lineno: int) -> tuple[int, tuple[str, ...]]:
    parts = line.split()
    if not parts or parts[0] != "nfa":
        raise MissingHeader(lineno, "missing 'nfa states=<n> letters=<names>' header")
    fields = {}
    for part in parts[1:]:
        key, eq, value = part.partition("=")
        if not eq or key in fields:
            raise ParseError(lineno, f"bad header field {part!r}")
        fields[key] = value
    if set(fields) != {"states", "letters"}:
        raise ParseError(lineno, "header needs exactly 'states=' and 'letters='")
    try:
        n = int(fields["states"])
    except ValueError:
        raise ParseError(lineno, f"bad state count {fields['states']!r}") from None
    if n < 1:
        raise ParseError(lineno, "state count must be positive")
    if n > MAX_STATES:
        raise ParseError(lineno, f"{n} states exceeds capacity {MAX_STATES}")
    letters = tuple(fields["letters"].split(","))
    if any(not x for x in letters):
        raise ParseError(lineno, "empty letter name")
    return n, letters


def _parse_index(token: str, n: int, lineno: int) -> int:
    try:
        q = int(token)
    except ValueError:
        raise ParseError(lineno, f"bad state index {token!r}") from None
    if not 0 <= q < n:
        raise ParseError(lineno, f"state {q} out of range [0, {n})")
    return q


def serialize(nfa: Nfa | Dfa) -> str:
    """Render ``nfa`` with one row per (letter, state) pair, empty rows included."""
    nfa = nfa.nfa if isinstance(nfa, Dfa) else nfa
    lines = [f"nfa states={nfa.n} letters={','.join(nfa.letters)}"]
    for a, name in enumerate(nfa.letters):
        for q in range(nfa.n):
            targets = " ".join(str(t) for t in members(nfa.delta[a][q]))
            lines.append(f"{name} {q}: {targets}".rstrip())
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    return Dfa(parse(text))
