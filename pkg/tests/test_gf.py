import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcodes.errors import FieldMismatchError
from groupcodes.gf import field_of_order, make_field, parse_field, primitive_element

from oracles import oracle_tables

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]


def test_construction_examples():
    assert make_field(2).q == 2
    assert make_field(11).q == 11
    F8 = make_field(2, 3)
    assert F8.q == 8 and F8.label == "2^3"


def test_prime_field_arithmetic():
    F = make_field(11)
    assert F.add(5, 9) == 3
    assert F.inv(2) == 6


def test_f8_reduction():
    # x * x^2 = x^3 = x + 1 modulo x^3 + x + 1; reps: x = 2, x^2 = 4, x + 1 = 3
    F = make_field(2, 3)
    assert F.modulus == (1, 1, 0, 1)
    assert F.mul(2, 4) == 3


@pytest.mark.parametrize("q,expected", [(2, 1), (11, 2), (7, 3)])
def test_primitive_element(q, expected):
    F = field_of_order(q)
    assert F.primitive_rep == expected
    assert int(primitive_element(F)) == expected


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_sympy_oracle(q):
    F = field_of_order(q)
    add, mul = oracle_tables(F)
    t = F.tables
    assert (t.add == add).all()
    assert (t.mul == mul).all()


@pytest.mark.parametrize("q", ORDERS)
def test_modulus_irreducible_and_generator(q):
    F = field_of_order(q)
    if F.m > 1:
        # no roots in small subfields: the log table would be short otherwise
        assert len({F.exp(e) for e in range(q - 1)}) == q - 1
    assert F.mult_order(F.primitive_rep) == q - 1


def test_power_conventions():
    F = field_of_order(9)
    assert F.power(0, 0) == 1
    assert F.power(0, 3) == 0
    with pytest.raises(ZeroDivisionError):
        F.power(0, -1)
    for a in range(1, 9):
        assert F.power(a, 8) == 1
        assert F.mul(F.power(a, -1), a) == 1


def test_validation_errors():
    with pytest.raises(ValueError):
        make_field(6)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        field_of_order(12)
    with pytest.raises(ValueError):
        make_field(2, 20)
    F = field_of_order(5)
    with pytest.raises(ValueError):
        F.validate(5)
    with pytest.raises(ValueError):
        F.log(0)
    with pytest.raises(FieldMismatchError):
        F(1) + field_of_order(7)(1)


def test_parse_field_forms():
    assert parse_field("8") is parse_field("2^3")
    assert parse_field(" 13 ").q == 13


def test_element_wrapper():
    F = field_of_order(7)
    a, b = F(3), F(5)
    assert int(a + b) == 1
    assert int(a * b) == 1
    assert int(a / b) == F.div(3, 5)
    assert int(-a) == 4
    assert int(a**6) == 1
    assert a.multiplicative_order() == 6


field_and_elems = st.sampled_from(ORDERS).flatmap(
    lambda q: st.tuples(st.just(field_of_order(q)), *[st.integers(0, q - 1)] * 3)
)


@settings(max_examples=300, deadline=None)
@given(field_and_elems)
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp(F.log(a)) == a
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=200, deadline=None)
@given(field_and_elems, st.integers(-30, 30), st.integers(0, 30))
def test_power_laws(data, e1, e2):
    F, a, _, _ = data
    if a == 0:
        return
    assert F.mul(F.power(a, e1), F.power(a, e2)) == F.power(a, e1 + e2)
    # Frobenius is additive
    _, b, _, _ = data
    assert F.power(F.add(a, b), F.p) == F.add(F.power(a, F.p), F.power(b, F.p))
