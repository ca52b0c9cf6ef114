from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klrwb.root_datum import (
    QPolynomial,
    QuiverError,
    a_count,
    enumerate_words,
    load_quiver,
    new_quiver,
    parse_weight,
    q_polynomial,
    quiver_dir,
    reflect_orientation,
    resolve_quiver,
    sink_source_status,
    standard_quiver,
    swap,
    weights_of_height,
    weyl_reflect,
    word_count,
)


def test_a2_cartan():
    q = new_quiver(["1", "2"], [("1", "2")])
    assert q.cartan == ((2, -1), (-1, 2))


def test_kronecker_cartan():
    q = new_quiver(["1", "2"], [("1", "2"), ("1", "2")])
    assert q.cartan[0][1] == -2


def test_loop_is_rejected():
    with pytest.raises(QuiverError):
        new_quiver(["1"], [("1", "1")])


def test_unknown_vertex_and_duplicates_are_rejected():
    with pytest.raises(QuiverError):
        new_quiver(["1", "2"], [("1", "3")])
    with pytest.raises(QuiverError):
        new_quiver(["1", "1"], [])


def test_sink_source_status(a2):
    assert sink_source_status(a2, 1) == "sink"
    assert sink_source_status(a2, 0) == "source"
    assert sink_source_status(standard_quiver("A1xA1"), 0) == "isolated"
    assert sink_source_status(standard_quiver("A3"), 1) == "neither"


def test_reflect_orientation(a2, kron):
    assert reflect_orientation(a2, 1) == new_quiver(["1", "2"], [("2", "1")])
    assert reflect_orientation(kron, 0) == new_quiver(["1", "2"], [("2", "1"), ("2", "1")])
    assert reflect_orientation(reflect_orientation(a2, 1), 1) == a2


def test_weyl_reflect(a2, kron):
    assert weyl_reflect(a2, 0, (1, 1)) == ((0, 1), True)
    assert weyl_reflect(kron, 0, (0, 1)) == ((2, 1), True)
    assert weyl_reflect(a2, 0, (1, 0)) == ((-1, 0), False)


def test_enumerate_words(a2, sl2):
    assert enumerate_words((1, 1)) == [(0, 1), (1, 0)]
    assert enumerate_words((2,)) == [(0, 0)]
    assert len(enumerate_words((2, 1))) == 3


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_word_count_is_multinomial(beta):
    beta = tuple(beta)
    words = enumerate_words(beta)
    expected = factorial(sum(beta))
    for c in beta:
        expected //= factorial(c)
    assert len(words) == word_count(beta) == expected
    assert words == sorted(set(words))


def test_q_polynomials(a2):
    assert q_polynomial(a2, (0, 1), 1) == QPolynomial(-1, 1)
    assert q_polynomial(a2, (1, 0), 1) == QPolynomial(1, 1)
    assert q_polynomial(standard_quiver("A1xA1"), (0, 1), 1) == QPolynomial(1, 0)
    assert q_polynomial(standard_quiver("sl2"), (0, 0), 1) == QPolynomial(0, 0)


def test_q_polynomial_expansion(a2):
    # -(u - v) = v - u
    assert q_polynomial(a2, (0, 1), 1).expand() == {(1, 0): -1, (0, 1): 1}


@pytest.mark.parametrize("name", ["A2", "A3", "Kronecker"])
def test_q_swap_symmetry(name):
    """``Q_{sigma m}(v, u) = Q_m(u, v)`` for every adjacent pair."""
    q = standard_quiver(name)
    for beta in weights_of_height(q.rank, 2):
        for m in enumerate_words(beta):
            p = q_polynomial(q, m, 1)
            assert q_polynomial(q, swap(m, 1), 1).swapped() == p
            if m[0] != m[1] and q.adjacent(m[0], m[1]):
                assert p.power == a_count(q, m, 1) == q.edges(m[0], m[1])


def test_parse_weight(a2):
    assert parse_weight(a2, "1,2") == (1, 2)
    assert parse_weight(a2, "0") == (0, 0)
    with pytest.raises(QuiverError):
        parse_weight(a2, "1,2,3")


def test_bundled_quivers_match_standard():
    for name in ["sl2", "A1xA1", "A2", "A3", "Kronecker"]:
        assert load_quiver(quiver_dir() / f"{name}.json") == standard_quiver(name)
    bad = resolve_quiver("A2_corrupted_Q")
    assert bad.q_sign_flips == frozenset({(0, 1)})


def test_fingerprint_distinguishes_sign_flip(a2):
    assert a2.fingerprint() != resolve_quiver("A2_corrupted_Q").fingerprint()
