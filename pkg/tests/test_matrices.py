import itertools

import numpy as np
import pytest

from mortality.core import Nfa
from mortality.errors import IncompleteDfa, ParseError, UsageError
from mortality.families import gen_linear
from mortality.matrices import (
    BoolMatrix,
    MatrixSet,
    exponent,
    matrices_to_nfa,
    nfa_to_matrices,
    parse_matrices,
    product,
    product_is_zero,
    serialize_matrices,
    sum_matrix,
    wielandt_bound,
)

from conftest import cerny, random_nfa
from oracles import matrix_power_exponent, relation, run


def test_pair_matrices(pair):
    ms = nfa_to_matrices(pair)
    assert ms.matrices[0].to_array().tolist() == [[1, 1], [0, 0]]
    assert ms.matrices[1].to_array().tolist() == [[0, 0], [1, 1]]
    assert ms.letters == ("a", "b")
    assert matrices_to_nfa(ms) == pair


def test_pair_products_never_vanish(pair):
    ms = nfa_to_matrices(pair)
    for length in range(1, 7):
        for w in itertools.product(range(2), repeat=length):
            assert not product_is_zero(ms, w)


def test_product_matches_integer_matmul(rng):
    for _ in range(50):
        nfa = random_nfa(rng, rng.randint(1, 5), 2)
        ms = nfa_to_matrices(nfa)
        word = [rng.randrange(2) for _ in range(rng.randint(0, 6))]
        acc = np.eye(nfa.n, dtype=np.int64)
        for a in word:
            acc = np.minimum(acc @ ms.matrices[a].to_array().astype(np.int64), 1)
        assert product(ms, word).to_array().tolist() == acc.tolist()


def test_row_of_product_is_image(rng):
    for _ in range(50):
        nfa = random_nfa(rng, rng.randint(1, 5), 3)
        rel = relation(nfa)
        word = [rng.randrange(3) for _ in range(rng.randint(0, 6))]
        p = product(nfa_to_matrices(nfa), word)
        for i in range(nfa.n):
            expected = run(rel, frozenset([i]), word)
            assert {h for h in range(nfa.n) if p[i, h]} == expected


def test_linear_canonical_product_is_zero():
    from mortality.families import canonical_word_linear

    ms = nfa_to_matrices(gen_linear(5).nfa)
    word = canonical_word_linear(5)
    assert product_is_zero(ms, word)
    assert not product_is_zero(ms, word[:-1])


def test_matrix_ops():
    a = BoolMatrix.from_array([[0, 2], [0, 0]])
    assert a.rows == (0b10, 0)
    assert (a @ a).is_zero()
    assert (a + BoolMatrix.identity(2)).to_array().tolist() == [[1, 1], [0, 1]]
    with pytest.raises(UsageError):
        BoolMatrix.from_array([[1, 0, 0]])
    with pytest.raises(UsageError):
        a @ BoolMatrix.identity(3)
    with pytest.raises(UsageError):
        MatrixSet(2, ())
    with pytest.raises(UsageError):
        product(MatrixSet(2, (a,)), [1])


def test_wielandt_bound():
    assert [wielandt_bound(n) for n in (1, 2, 3, 4, 5)] == [1, 2, 5, 10, 17]


def wielandt_matrix(n):
    # cycle 0 -> 1 -> ... -> n-1 -> 0 plus the chord n-1 -> 1
    rows = [1 << (i + 1) for i in range(n - 1)] + [0b11]
    return BoolMatrix(n, tuple(rows))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_wielandt_extremal_exponent(n):
    m = wielandt_matrix(n)
    assert exponent(m) == wielandt_bound(n)
    assert matrix_power_exponent(m.to_array().tolist(), 60) == wielandt_bound(n)


def test_cycle_with_self_loop_is_not_extremal():
    n = 4
    rows = [1 << ((i + 1) % n) for i in range(n)]
    rows[0] |= 1
    m = BoolMatrix(n, tuple(rows))
    assert exponent(m) == 2 * n - 2 == matrix_power_exponent(m.to_array().tolist(), 60)


def test_non_primitive():
    cycle = BoolMatrix(3, (0b010, 0b100, 0b001))
    assert exponent(cycle) is None
    assert matrix_power_exponent(cycle.to_array().tolist(), 30) is None


def test_exponent_random_matches_oracle(rng):
    for _ in range(80):
        n = rng.randint(1, 5)
        arr = [[int(rng.random() < 0.4) for _ in range(n)] for _ in range(n)]
        assert exponent(BoolMatrix.from_array(arr)) == matrix_power_exponent(arr, wielandt_bound(n))


def test_sum_matrix_cerny():
    s = sum_matrix(cerny(4))
    assert exponent(s) is not None and exponent(s) <= wielandt_bound(4)
    with pytest.raises(IncompleteDfa):
        sum_matrix(Nfa(2, ("a",), ((0b10, 0),)))


def test_format_roundtrip(rng, pair):
    for _ in range(30):
        nfa = random_nfa(rng, rng.randint(1, 5), rng.randint(1, 3))
        ms = nfa_to_matrices(nfa)
        assert parse_matrices(serialize_matrices(ms)) == ms
    unnamed = MatrixSet(2, nfa_to_matrices(pair).matrices)
    assert parse_matrices(serialize_matrices(unnamed)) == unnamed


def test_parse_thresholds_integers():
    text = "matrices n=2 count=2\n3 0\n0 1\n\n0 0\n7 2\n"
    ms = parse_matrices(text)
    assert ms.matrices[0].rows == (0b01, 0b10)
    assert ms.matrices[1].rows == (0, 0b11)
    assert matrices_to_nfa(ms).letters == ("a1", "a2")


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("matrices n=2\n", 1),
        ("matrices n=2 count=1\n1 0\n", 2),
        ("matrices n=2 count=1\n1 x\n0 1\n", 2),
        ("matrices n=2 count=1\n1 0 1\n0 1\n", 2),
        ("matrices n=2 count=2\n1 0\n0 1\n", 1),
        ("matrices n=2 count=1\n1 -1\n0 1\n", 2),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_matrices(text)
    assert exc.value.line == line
