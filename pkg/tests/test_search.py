import pytest

from mortality.core import parse
from mortality.errors import BudgetExceeded, UsageError
from mortality.search import (
    SearchSpec,
    is_canonical,
    objective_value,
    search,
    upper_bound,
    verify_bounds,
)

from oracles import bfs_threshold, defined_on, shortest_by_enumeration, singleton


def empty(states):
    return not states


@pytest.mark.parametrize(
    "kwargs, best",
    [
        (dict(states=2, letters=2, cls="dfa-partial"), 3),
        (dict(states=2, letters=1, cls="dfa-partial"), 2),
        (dict(states=2, letters=1, cls="nfa"), 2),
        (dict(states=2, letters=2, cls="nfa"), 3),
        (dict(states=3, letters=1, cls="nfa"), 3),
    ],
)
def test_exhaustive_small_optima(kwargs, best):
    report = search(SearchSpec(**kwargs))
    assert report.best == best
    assert verify_bounds(report)
    nfa = parse(report.witness)
    assert bfs_threshold(nfa) == best


def test_one_letter_two_state_nfa_cannot_exceed_two():
    # independent enumeration over the 16 one-letter tables
    best = 0
    for cells in range(16):
        from mortality.core import Nfa

        nfa = Nfa(2, ("a",), ((cells & 3, cells >> 2),))
        t = shortest_by_enumeration(nfa, empty, 3)
        best = max(best, t or 0)
    assert best == 2


def test_exhaustive_counts():
    report = search(SearchSpec(states=2, letters=2, cls="dfa-partial"))
    assert report.evaluated == 81 and report.optima == 4


def test_pruning_keeps_the_optimum():
    full = search(SearchSpec(states=3, letters=2, cls="dfa-partial"))
    pruned = search(SearchSpec(states=3, letters=2, cls="dfa-partial", prune_isomorphs=True))
    assert full.best == pruned.best == 6
    assert pruned.evaluated < full.evaluated


def test_reset_and_careful_objectives():
    reset = search(SearchSpec(states=3, letters=2, cls="dfa-complete", objective="reset"))
    assert reset.best == 4 == (3 - 1) ** 2
    careful = search(SearchSpec(states=3, letters=2, cls="dfa-partial", objective="careful"))
    assert careful.best == 4
    w = parse(careful.witness)
    assert bfs_threshold(w, singleton, defined_on) == 4


def test_random_mode_is_worker_independent():
    spec = dict(states=4, letters=2, cls="nfa", mode="random", seed=7, samples=300)
    one = search(SearchSpec(**spec, workers=1)).render()
    three = search(SearchSpec(**spec, workers=3)).render()
    assert one == three
    other = search(SearchSpec(**{**spec, "seed": 8})).render()
    assert other != one


def test_budget():
    with pytest.raises(BudgetExceeded):
        search(SearchSpec(states=3, letters=2, cls="nfa", budget=1000))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(states=0, letters=1),
        dict(states=2, letters=0),
        dict(states=2, letters=1, cls="nope"),
        dict(states=2, letters=1, objective="reset", cls="nfa"),
        dict(states=2, letters=1, objective="careful"),
        dict(states=2, letters=1, mode="random"),
        dict(states=2, letters=1, workers=0),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(UsageError):
        SearchSpec(**kwargs)


def test_is_canonical():
    # 0 -> 1 relabels to 1 -> 0, whose table (0, 0b01) is the smaller one
    assert is_canonical((0, 0b01), 2)
    assert not is_canonical((0b10, 0), 2)
    assert is_canonical((0b11, 0b11), 2)


def test_render_shape():
    report = search(SearchSpec(states=1, letters=1, cls="dfa-partial"))
    text = report.render()
    assert text.endswith("best=1 evaluated=2 optima=1\n")
    assert text.startswith("nfa states=1 letters=a\n")


def test_upper_bound_and_objective():
    spec = SearchSpec(states=3, letters=2, cls="dfa-partial")
    assert upper_bound(spec) == 6
    assert upper_bound(SearchSpec(states=3, letters=2)) == 7
    nfa = parse("nfa states=1 letters=a\n")
    assert objective_value(SearchSpec(states=1, letters=1), nfa) == 1
