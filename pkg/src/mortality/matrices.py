"""Boolean-matrix view of automata.

Row ``i`` of a :class:`BoolMatrix` is stored as a bitmask whose bit ``h`` is
entry ``(i, h)``.  Products are full matrix products, computed row by row,
so :func:`product_is_zero` does not share a code path with subset images.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Dfa, Nfa
from .errors import ParseError, UsageError


@dataclass(frozen=True)
class BoolMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise UsageError(f"expected {self.n} rows, got {len(self.rows)}")
        if any(r >> self.n for r in self.rows):
            raise UsageError("row has entries beyond the dimension")

    @classmethod
    def from_array(cls, array) -> "BoolMatrix":
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise UsageError(f"matrix must be square, got shape {a.shape}")
        rows = tuple(
            sum(1 << h for h in range(a.shape[1]) if a[i, h] > 0) for i in range(a.shape[0])
        )
        return cls(a.shape[0], rows)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    def to_array(self) -> np.ndarray:
        return np.array(
            [[(r >> h) & 1 for h in range(self.n)] for r in self.rows], dtype=np.uint8
        )

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        i, j = ij
        return bool((self.rows[i] >> j) & 1)

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        if other.n != self.n:
            raise UsageError("dimension mismatch")
        out = []
        for row in self.rows:
            acc = 0
            j = 0
            while row:
                if row & 1:
                    acc |= other.rows[j]
                row >>= 1
                j += 1
            out.append(acc)
        return BoolMatrix(self.n, tuple(out))

    def __add__(self, other: "BoolMatrix") -> "BoolMatrix":
        if other.n != self.n:
            raise UsageError("dimension mismatch")
        return BoolMatrix(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_positive(self) -> bool:
        full = (1 << self.n) - 1
        return all(r == full for r in self.rows)


@dataclass(frozen=True)
class MatrixSet:
    n: int
    matrices: tuple[BoolMatrix, ...]
    letters: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.matrices:
            raise UsageError("a matrix set needs at least one matrix")
        for m in self.matrices:
            if m.n != self.n:
                raise UsageError(f"matrix of dimension {m.n} in a set of dimension {self.n}")
        if self.letters is not None and len(self.letters) != len(self.matrices):
            raise UsageError("one letter name per matrix required")

    def __len__(self):
        return len(self.matrices)


def nfa_to_matrices(nfa: Nfa | Dfa) -> MatrixSet:
    nfa = nfa.nfa if isinstance(nfa, Dfa) else nfa
    mats = tuple(BoolMatrix(nfa.n, row) for row in nfa.delta)
    return MatrixSet(nfa.n, mats, nfa.letters)


def matrices_to_nfa(ms: MatrixSet) -> Nfa:
    letters = ms.letters or tuple(f"a{j}" for j in range(1, len(ms) + 1))
    return Nfa(ms.n, letters, tuple(m.rows for m in ms.matrices))


def product(ms: MatrixSet, word: Sequence[int]) -> BoolMatrix:
    acc = BoolMatrix.identity(ms.n)
    for a in word:
        if not 0 <= a < len(ms):
            raise UsageError(f"letter index {a} out of range")
        acc = acc @ ms.matrices[a]
    return acc


def product_is_zero(ms: MatrixSet, word: Sequence[int]) -> bool:
    return product(ms, word).is_zero()


def wielandt_bound(n: int) -> int:
    return n * n - 2 * n + 2


def exponent(m: BoolMatrix) -> int | None:
    """Least t with every entry of m**t positive, or ``None`` if not primitive."""
    power = m
    for t in range(1, wielandt_bound(m.n) + 1):
        if power.is_positive():
            return t
        power = power @ m
    return None


def sum_matrix(dfa: Dfa | Nfa) -> BoolMatrix:
    dfa = dfa if isinstance(dfa, Dfa) else Dfa(dfa)
    dfa.require_complete()
    ms = nfa_to_matrices(dfa.nfa)
    total = ms.matrices[0]
    for m in ms.matrices[1:]:
        total = total + m
    return total


def parse_matrices(text: str) -> MatrixSet:
    """Parse ``matrices n=<n> count=<m>`` followed by m blank-line separated blocks.

    Entries are nonnegative integers, thresholded to positive/zero.  A comment
    ``# letters: a,b`` restores letter names.
    """
    letters = None
    header = None
    blocks: list[list[tuple[int, list[int]]]] = []
    current: list[tuple[int, list[int]]] = []
    n = count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith("letters:"):
            letters = tuple(x.strip() for x in comment[len("letters:"):].split(","))
        line = body.strip()
        if header is None:
            if not line:
                continue
            header = lineno
            n, count = _matrix_header(line, lineno)
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        try:
            values = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(lineno, "matrix entries must be integers") from None
        if len(values) != n or any(v < 0 for v in values):
            raise ParseError(lineno, f"expected {n} nonnegative integers")
        current.append((lineno, values))
        if len(current) == n:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    if header is None:
        raise ParseError(1, "missing 'matrices n=<n> count=<m>' header")
    for block in blocks:
        if len(block) != n:
            raise ParseError(block[0][0], f"matrix block has {len(block)} rows, expected {n}")
    if len(blocks) != count:
        raise ParseError(header, f"header announces {count} matrices, found {len(blocks)}")
    mats = tuple(BoolMatrix.from_array([v for _, v in block]) for block in blocks)
    try:
        return MatrixSet(n, mats, letters)
    except UsageError as exc:
        raise ParseError(header, str(exc)) from None


def _matrix_header(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    fields = dict(p.partition("=")[::2] for p in parts[1:])
    if parts[0] != "matrices" or set(fields) != {"n", "count"}:
        raise ParseError(lineno, "expected 'matrices n=<n> count=<m>'")
    try:
        n, count = int(fields["n"]), int(fields["count"])
    except ValueError:
        raise ParseError(lineno, "n and count must be integers") from None
    if n < 1 or count < 1:
        raise ParseError(lineno, "n and count must be positive")
    return n, count


def serialize_matrices(ms: MatrixSet) -> str:
    lines = [f"matrices n={ms.n} count={len(ms)}"]
    if ms.letters is not None:
        lines.append(f"# letters: {','.join(ms.letters)}")
    for i, m in enumerate(ms.matrices):
        if i:
            lines.append("")
        lines.extend(" ".join(str(x) for x in row) for row in m.to_array().tolist())
    return "\n".join(lines) + "\n"
