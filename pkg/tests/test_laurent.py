from hypothesis import given
from hypothesis import strategies as st

from klrwb.laurent import LaurentPoly, TruncatedSeries, quantum_factorial, quantum_integer

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
t = LaurentPoly.monomial(1)


def test_multiply_by_t():
    assert (LaurentPoly({-1: 1, 1: 1}) * t) == LaurentPoly({0: 1, 2: 1})


def test_bar_of_quantum_two_is_itself():
    two = LaurentPoly({-1: 1, 1: 1})
    assert two.bar() == two
    assert two.is_bar_invariant()


def test_quantum_two_squared():
    assert quantum_integer(2) ** 2 == LaurentPoly({-2: 1, 0: 2, 2: 1})


def test_quantum_factorials():
    assert quantum_factorial(0) == LaurentPoly.one()
    assert quantum_factorial(2) == LaurentPoly({-1: 1, 1: 1})
    # (t^-1 + t)(t^-2 + 1 + t^2) expanded by hand
    assert quantum_factorial(3) == LaurentPoly({-3: 1, -1: 2, 1: 2, 3: 1})
    assert quantum_factorial(4).at_one() == 24


def test_zero_terms_are_dropped():
    p = LaurentPoly({0: 1, 2: 0}) - LaurentPoly({0: 1})
    assert not p
    assert p == LaurentPoly.zero()
    assert len(LaurentPoly({1: 2, 3: 0})) == 1


def test_exact_div():
    p = quantum_integer(2) * quantum_integer(3)
    assert p.exact_div(quantum_integer(3)) == quantum_integer(2)
    assert LaurentPoly({0: 1, 1: 1}).exact_div(LaurentPoly({0: 2})) is None


def test_json_round_trip():
    p = LaurentPoly({-2: 1, 0: 3})
    assert p.to_json() == {"-2": 1, "0": 3}
    assert LaurentPoly.from_json(p.to_json()) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b - b == a


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()
    assert a.bar().bar() == a


@given(polys, st.integers(-4, 4))
def test_shift_is_multiplication_by_monomial(a, k):
    assert a.shift(k) == a * LaurentPoly.monomial(k)


def test_truncated_series_reads_zero_below_support_and_refuses_above_bound():
    s = TruncatedSeries.from_dict({-2: 1, 0: 3}, bound=4)
    assert s[-10] == 0 and s[-2] == 1 and s[4] == 0
    try:
        s[5]
    except KeyError:
        pass
    else:
        raise AssertionError("degree above the bound must not read as zero")


def test_truncated_series_add_and_compare():
    a = TruncatedSeries.from_dict({0: 1, 2: 1}, bound=4)
    b = TruncatedSeries.from_dict({1: 2}, bound=4)
    assert (a + b).as_dict() == {0: 1, 1: 2, 2: 1}
    assert not a.same_values(TruncatedSeries.from_dict({0: 1, 2: 1}, bound=6))
