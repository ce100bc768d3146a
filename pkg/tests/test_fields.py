from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from incalg import (
    FieldMismatchError,
    InfiniteFieldError,
    ParseError,
    PrimeField,
    format_field,
    parse_field,
)

from conftest import F2, F3, F5, PRIME_FIELDS, Q, scalars


def test_modular_addition():
    assert F3.scalar(2) + F3.scalar(2) == F3.scalar(1)


def test_rational_addition():
    assert Q.scalar(Fraction(1, 2)) + Q.scalar(Fraction(1, 3)) == Q.scalar(Fraction(5, 6))


def test_additive_identity():
    for field in (F2, F3, Q):
        a = field.scalar(1)
        assert a + field.zero == a


def test_modular_multiplication():
    assert F5.scalar(3) * F5.scalar(4) == F5.scalar(2)


def test_multiplicative_identity_and_annihilator():
    for field in (F3, F5, Q):
        a = field.scalar(2)
        assert a * field.one == a
        assert a * field.zero == field.zero


def test_inverses():
    assert F3.scalar(2).inverse() == F3.scalar(2)
    assert F5.scalar(3).inverse() == F5.scalar(2)
    assert Q.scalar(Fraction(-2, 3)).inverse() == Q.scalar(Fraction(-3, 2))


def test_inverse_of_zero_is_a_distinct_error():
    with pytest.raises(ZeroDivisionError):
        F3.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        Q.zero.inverse()


def test_enumerate_prime_fields():
    assert [s.value for s in F2.elements()] == [0, 1]
    assert [s.value for s in F3.elements()] == [0, 1, 2]


def test_enumerate_rationals_rejected():
    with pytest.raises(InfiniteFieldError):
        Q.elements()


def test_primality_validation():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(2**31)  # above the cap
    assert PrimeField(2**31 - 1).p == 2**31 - 1  # largest allowed prime


def test_cardinality_regimes():
    assert F2.cardinality == 2
    assert F3.cardinality == 3
    assert Q.cardinality is None
    assert F2.characteristic == 2 and Q.characteristic == 0


def test_cross_field_operations_rejected():
    with pytest.raises(FieldMismatchError):
        F2.scalar(1) + F3.scalar(1)
    with pytest.raises(FieldMismatchError):
        Q.scalar(1) * F3.scalar(1)


def test_scalar_canonical_representation():
    assert F3.scalar(5).value == 2
    assert F3.scalar(-1).value == 2
    assert Q.scalar(Fraction(2, 4)).value == Fraction(1, 2)


def test_field_literals():
    assert parse_field("Fp 3") == F3
    assert parse_field("Q") == Q
    assert format_field(F5) == "Fp 5"
    assert format_field(Q) == "Q"
    with pytest.raises(ParseError):
        parse_field("Fp 4")
    with pytest.raises(ParseError):
        parse_field("GF 9")


def test_scalar_serialization_round_trip():
    assert F3.format_scalar(F3.scalar(2)) == "2"
    assert F3.parse_scalar("2") == F3.scalar(2)
    s = Q.scalar(Fraction(-3, 2))
    assert Q.format_scalar(s) == "-3/2"
    assert Q.parse_scalar("-3/2") == s
    assert Q.format_scalar(Q.scalar(2)) == "2/1"
    assert Q.parse_scalar("2") == Q.scalar(2)


@given(data=st.data(), field=st.sampled_from(PRIME_FIELDS + [Q]))
def test_field_axioms(data, field):
    a = data.draw(scalars(field))
    b = data.draw(scalars(field))
    c = data.draw(scalars(field))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == field.zero
    if b:
        assert b * b.inverse() == field.one


def test_inverse_involution_exhaustive():
    for field in PRIME_FIELDS:  # p in {2, 3, 5, 7}
        for a in field.elements()[1:]:
            assert a.inverse().inverse() == a
