"""Extremal automata families and their canonical mortal words.

State layouts (index order):

* ``linear(n)``:   q1..qn
* ``ternary(k)``:  p0..pk, q1..qk, f           (2k + 2 states, letters s, d, c)
* ``binary(k)``:   p0..p(k-1), r0..rk, q1..qk, f (3k + 2 states, letters s, d)
* ``dfa-tail(k)``: q1..qk, p1..pk              (2k states, letters a, b)
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MAX_STATES, Dfa, Nfa, full_set, stateset
from .errors import StrategyError, UsageError

FAMILIES = ("linear", "ternary", "binary", "dfa-tail")


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    param: int
    nfa: Nfa
    names: tuple[str, ...]

    def state(self, name: str) -> int:
        return self.names.index(name)

    def states(self, *names: str) -> int:
        return stateset(self.state(x) for x in names)

    def tracker(self) -> tuple[int, ...]:
        """The states whose activity encodes the tracked binary number."""
        if self.family == "linear":
            return tuple(range(self.param))
        if self.family in ("ternary", "binary"):
            return tuple(self.state(f"q{i}") for i in range(1, self.param + 1))
        raise UsageError(f"family {self.family!r} has no counter")


def _rows(n: int, letters: str | tuple[str, ...], fill) -> Nfa:
    letters = tuple(letters)
    delta = tuple(tuple(fill(a, q) for q in range(n)) for a in range(len(letters)))
    return Nfa(n, letters, delta)


def _check(param: int, lo: int, states: int, what: str) -> None:
    if param < lo:
        raise UsageError(f"{what} must be at least {lo}, got {param}")
    if states > MAX_STATES:
        raise UsageError(f"{what}={param} needs {states} states, capacity is {MAX_STATES}")


def gen_linear(n: int) -> FamilyInstance:
    """n states, n letters; the shortest mortal word has length 2**n - 1."""
    _check(n, 1, n, "n")
    everything = full_set(n)

    def fill(j, i):
        if i == j == n - 1:
            return 0
        if i == j:
            return everything & ~full_set(i + 1)
        if j < i:
            return everything
        return 1 << i

    nfa = _rows(n, tuple(f"a{j}" for j in range(1, n + 1)), fill)
    return FamilyInstance("linear", n, nfa, tuple(f"q{i}" for i in range(1, n + 1)))


def canonical_word_linear(n: int) -> tuple[int, ...]:
    """w_n = a_n and w_i = w_{i+1} a_i w_{i+1}; returns w_1 as letter indices."""
    if n < 1:
        raise UsageError("n must be positive")
    word = (n - 1,)
    for i in range(n - 2, -1, -1):
        word = word + (i,) + word
    return word


def gen_ternary(k: int) -> FamilyInstance:
    """2k + 2 states over {s, d, c}."""
    _check(k, 2, 2 * k + 2, "k")
    names = [f"p{i}" for i in range(k + 1)] + [f"q{i}" for i in range(1, k + 1)] + ["f"]
    n = len(names)
    p = lambda i: 1 << i  # noqa: E731
    q = lambda i: 1 << (k + i)  # noqa: E731
    f = 1 << (2 * k + 1)
    Q = stateset(range(k + 1, 2 * k + 1))
    everything = full_set(n)
    s_row = [p(i + 1) for i in range(k)] + [q(1)]
    s_row += [q(i + 1) for i in range(1, k)] + [Q | f, f]
    d_row = [everything] + [stateset(range(k + 1, k + 1 + i)) | f for i in range(1, k)] + [f]
    # d on an active f re-activates every state
    d_row += [p(i) | f for i in range(1, k)] + [0, everything]
    c_row = [everything] * (k + 1) + [q(i) | p(0) for i in range(1, k)] + [0, 0]
    nfa = Nfa(n, ("s", "d", "c"), (tuple(s_row), tuple(d_row), tuple(c_row)))
    return FamilyInstance("ternary", k, nfa, tuple(names))


def gen_binary(k: int) -> FamilyInstance:
    """3k + 2 states over {s, d}."""
    _check(k, 2, 3 * k + 2, "k")
    names = [f"p{i}" for i in range(k)] + [f"r{i}" for i in range(k + 1)]
    names += [f"q{i}" for i in range(1, k + 1)] + ["f"]
    n = len(names)
    p = lambda i: 1 << i  # noqa: E731
    r = lambda i: 1 << (k + i)  # noqa: E731
    q = lambda i: 1 << (2 * k + i)  # noqa: E731
    f = 1 << (3 * k + 1)
    Q = stateset(range(2 * k + 1, 3 * k + 1))
    everything = full_set(n)
    s_row = [p(i + 1) for i in range(k - 1)] + [r(0)]
    s_row += [r(i + 1) for i in range(k)] + [q(1)]
    s_row += [q(i + 1) for i in range(1, k)] + [Q | f, f]
    d_row = [everything] * k
    d_row += [p(i) | stateset(range(2 * k + 1, 2 * k + 1 + i)) for i in range(k)] + [0]
    d_row += [r(i) for i in range(1, k)] + [0, p(0)]
    nfa = Nfa(n, ("s", "d"), (tuple(s_row), tuple(d_row)))
    return FamilyInstance("binary", k, nfa, tuple(names))


def gen_dfa_tail(k: int) -> FamilyInstance:
    """Binary DFA with 2k states: an a-cycle on q1..qk and an a-tail p1..pk."""
    _check(k, 2, 2 * k, "k")
    q = lambda i: 1 << (i - 1)  # noqa: E731
    p = lambda i: 1 << (k + i - 1)  # noqa: E731
    a_row = [q(i + 1) for i in range(1, k)] + [q(1)]
    a_row += [p(i + 1) for i in range(1, k)] + [0]
    b_row = [p(1), q(k)] + [q(i - 1) for i in range(3, k + 1)] + [q(1)] * k
    nfa = Nfa(2 * k, ("a", "b"), (tuple(a_row), tuple(b_row)))
    Dfa(nfa)
    names = tuple(f"q{i}" for i in range(1, k + 1)) + tuple(f"p{i}" for i in range(1, k + 1))
    return FamilyInstance("dfa-tail", k, nfa, names)


def canonical_word_dfa_tail(k: int) -> tuple[int, ...]:
    """a^k b a^k a b a^k (a a b a^k)^(k-2), with a = 0 and b = 1."""
    if k < 2:
        raise UsageError("k must be at least 2")
    a, b = (0,), (1,)
    ak = a * k
    return ak + b + ak + a + b + ak + (a + a + b + ak) * (k - 2)


def generate(family: str, param: int) -> FamilyInstance:
    try:
        gen = {
            "linear": gen_linear,
            "ternary": gen_ternary,
            "binary": gen_binary,
            "dfa-tail": gen_dfa_tail,
        }[family]
    except KeyError:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    return gen(param)


def canonical_word(instance: FamilyInstance) -> tuple[int, ...]:
    if instance.family == "linear":
        return canonical_word_linear(instance.param)
    if instance.family == "dfa-tail":
        return canonical_word_dfa_tail(instance.param)
    return canonical_word_counter(instance)


class _Runner:
    def __init__(self, instance: FamilyInstance):
        self.nfa = instance.nfa
        self.active = self.nfa.full
        self.word: list[int] = []
        # generous: the counter needs about (states) letters per decrement
        self.limit = (instance.nfa.n + 2) * (1 << (instance.param + 1))

    def apply(self, letter: str) -> None:
        a = self.nfa.letter_index(letter)
        self.active = self.nfa.image(self.active, a)
        self.word.append(a)
        if len(self.word) > self.limit:
            raise StrategyError("counting strategy did not terminate")

    def shift_until(self, done, bound: int) -> None:
        for _ in range(bound):
            if done(self.active):
                return
            self.apply("s")
        if not done(self.active):
            raise StrategyError(f"shift did not reach the expected shape: {self.active:b}")


def canonical_word_counter(instance: FamilyInstance) -> tuple[int, ...]:
    """Mortal word produced by running the counting procedure on the active set."""
    if instance.family == "ternary":
        return _ternary_word(instance)
    if instance.family == "binary":
        return _binary_word(instance)
    raise UsageError(f"no counter strategy for family {instance.family!r}")


def _ternary_word(inst: FamilyInstance) -> tuple[int, ...]:
    k = inst.param
    run = _Runner(inst)
    P = stateset(range(k + 1))
    qk = inst.states(f"q{k}")
    full = run.nfa.full
    run.shift_until(lambda act: not act & P, k + 2)
    while True:
        run.shift_until(lambda act: act & qk, 2 * k + 1)
        if run.active & P:
            raise StrategyError("left half still active before c")
        run.apply("c")
        if run.active == 0:
            return tuple(run.word)
        run.shift_until(lambda act: act & qk, k + 1)
        run.apply("d")
        if run.active == full:
            raise StrategyError("d reset the counter")


def _binary_word(inst: FamilyInstance) -> tuple[int, ...]:
    k = inst.param
    run = _Runner(inst)
    P = stateset(range(k))
    R = stateset(range(k, 2 * k + 1))
    qk = inst.states(f"q{k}")
    rk = inst.states(f"r{k}")
    full = run.nfa.full
    run.shift_until(lambda act: not act & (P | R), 2 * k + 2)
    while bin(run.active).count("1") > 1:
        run.shift_until(lambda act: act & qk, 3 * k + 1)
        if run.active & P:
            raise StrategyError("left part still active before d")
        run.apply("d")
        if run.active == full:
            raise StrategyError("d reset the counter")
    # counter is zero: one state of P or R remains; walk it to r_k, which d kills
    if bin(run.active).count("1") != 1 or not run.active & (P | R):
        raise StrategyError(f"unexpected residue {run.active:b}")
    run.shift_until(lambda act: act == rk, 2 * k + 1)
    run.apply("d")
    if run.active:
        raise StrategyError("final d did not kill the residue")
    return tuple(run.word)


def lift_careful_to_mortality(dfa: Dfa | Nfa, p: int, letter: str = "r") -> Nfa:
    """NFA over the DFA's letters plus ``letter`` whose mortal words carry
    a carefully synchronizing factor.

    Undefined transitions become transitions to every state; the new letter
    kills ``p`` and sends every other state to every state.
    """
    nfa = dfa.nfa if isinstance(dfa, Dfa) else dfa
    Dfa(nfa)
    if not 0 <= p < nfa.n:
        raise UsageError(f"state {p} out of range")
    if letter in nfa.letters:
        raise UsageError(f"letter {letter!r} already in the alphabet")
    everything = nfa.full
    delta = tuple(tuple(t if t else everything for t in row) for row in nfa.delta)
    extra = tuple(0 if q == p else everything for q in range(nfa.n))
    return Nfa(nfa.n, nfa.letters + (letter,), delta + (extra,))
