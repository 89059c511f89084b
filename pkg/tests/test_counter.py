import pytest

from mortality.core import Nfa, members
from mortality.counter import (
    BinTracker,
    bin_value,
    check_checkpoints_binary,
    check_checkpoints_ternary,
    check_decrement,
    trace,
)
from mortality.errors import UsageError
from mortality.families import canonical_word, canonical_word_linear, gen_binary, gen_linear, gen_ternary

from oracles import relation, run


def test_bin_value_msb_first():
    inst = gen_ternary(3)
    t = BinTracker.for_instance(inst)
    assert bin_value(t, inst.states("q1")) == 0b100
    assert bin_value(t, inst.states("q3", "f", "p0")) == 0b001
    assert bin_value(t, inst.nfa.full) == 0b111
    assert t.k == 3 and t.mask == inst.states("q1", "q2", "q3")


def test_tracker_validation():
    nfa = gen_linear(3).nfa
    with pytest.raises(UsageError):
        BinTracker(nfa, (0, 0))
    with pytest.raises(UsageError):
        BinTracker(nfa, (5,))
    with pytest.raises(UsageError):
        gen_linear(3).__class__("dfa-tail", 2, nfa, ("x", "y", "z")).tracker()


def test_trace_rows_match_oracle():
    inst = gen_linear(4)
    word = canonical_word_linear(4)
    rows = trace(inst.nfa, BinTracker.for_instance(inst), word)
    rel = relation(inst.nfa)
    assert len(rows) == len(word) + 1 and rows[0].letter is None
    for row in rows:
        expected = run(rel, frozenset(range(4)), word[: row.length])
        assert set(members(row.active)) == expected


def test_linear_counts_down_by_one():
    n = 6
    inst = gen_linear(n)
    rows = trace(inst.nfa, BinTracker(inst.nfa, tuple(range(n))), canonical_word_linear(n))
    assert [r.bin for r in rows] == list(range(2**n - 1, -1, -1))


@pytest.mark.parametrize("n", range(1, 11))
def test_decrement_linear(n):
    inst = gen_linear(n)
    report = check_decrement(inst.nfa, BinTracker.for_instance(inst))
    assert report.ok and report.violation is None and report.checked > 0


def test_decrement_fails_on_ternary():
    # the left half can reach sets whose d-image drops the counter by more than one
    inst = gen_ternary(4)
    report = check_decrement(inst.nfa, BinTracker.for_instance(inst))
    assert not report.ok
    subset, letter, before, after = report.violation
    assert (letter, before, after) == (inst.nfa.letter_index("s"), 14, 7)
    assert bin_value(BinTracker.for_instance(inst), inst.nfa.image(subset, letter)) == after


def test_decrement_detects_planted_jump():
    # one letter clears the top digit: 0b11 -> 0b00 would be -3
    nfa = Nfa(2, ("x",), ((0, 0),))
    report = check_decrement(nfa, BinTracker(nfa, (0, 1)))
    assert not report.ok and report.violation == (0b11, 0, 3, 0)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_ternary_checkpoints_step_by_one(k):
    inst = gen_ternary(k)
    report = check_checkpoints_ternary(inst, canonical_word(inst))
    assert report.ok and not report.resets
    assert set(report.steps) == {-1}
    assert len(report.positions) >= 2


def test_ternary_checkpoints_k2():
    inst = gen_ternary(2)
    report = check_checkpoints_ternary(inst, canonical_word(inst))
    assert report.values == [1] and report.ok


def test_ternary_adversarial_word_records_reset():
    inst = gen_ternary(3)
    word = inst.nfa.word("ssss" "c" "d" "ss")
    report = check_checkpoints_ternary(inst, word)
    assert report.positions == [] and report.resets == [6]


def test_ternary_checkpoint_detects_jump():
    inst = gen_ternary(3)
    # a hand-made report mimics a drop of two without any reset in between
    from mortality.counter import CheckpointReport, _judge

    rep = _judge(CheckpointReport(positions=[4, 9], values=[5, 3], resets=[]))
    assert rep.violations == [1] and not rep.ok
    rep = _judge(CheckpointReport(positions=[4, 9], values=[5, 3], resets=[7]))
    assert rep.ok
    with pytest.raises(UsageError):
        check_checkpoints_ternary(gen_binary(2), ())
    with pytest.raises(UsageError):
        check_checkpoints_binary(inst, ())


@pytest.mark.parametrize("k", [2, 3, 4])
def test_binary_checkpoints_hold(k):
    inst = gen_binary(k)
    report = check_checkpoints_binary(inst, canonical_word(inst))
    assert report.ok
    assert report.positions
