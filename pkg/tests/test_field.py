from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadwiger.core.field import (
    FieldScalar,
    RationalInterval,
    SurdScalar,
    field_arith,
    field_enclosure,
    field_sign,
    format_rational,
    parse_rational,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
scalars = st.builds(FieldScalar, rationals, rationals, rationals, rationals)

mpmath.mp.dps = 80


def _mp(x: FieldScalar) -> mpmath.mpf:
    a, b, c, d = (mpmath.mpf(v.numerator) / v.denominator for v in x.coefficients)
    return a + b * mpmath.sqrt(2) + c * mpmath.sqrt(3) + d * mpmath.sqrt(6)


def test_sign_of_one_plus_sqrt2_minus_sqrt3() -> None:
    assert field_sign(FieldScalar(1, 1, -1, 0)) == 1


def test_sign_of_zero_is_zero() -> None:
    assert field_sign(FieldScalar()) == 0


def test_sqrt2_times_sqrt3_is_sqrt6() -> None:
    product = field_arith(FieldScalar(0, 1), FieldScalar(0, 0, 1), "mul")
    assert product == FieldScalar(0, 0, 0, 1)


def test_sqrt6_squared_is_six() -> None:
    assert FieldScalar(0, 0, 0, 1).square() == FieldScalar(6)


def test_near_cancellation_is_still_decided() -> None:
    # 99^2 * 2 = 19602 and 140^2 = 19600, so 99*sqrt2 - 140 is tiny and positive
    assert FieldScalar(-140, 99).sign() == 1
    assert FieldScalar(140, -99).sign() == -1


def test_unknown_operation_is_rejected() -> None:
    with pytest.raises(ValueError):
        field_arith(FieldScalar(1), FieldScalar(2), "pow")


def test_division_by_zero() -> None:
    with pytest.raises(ZeroDivisionError):
        FieldScalar(1) / FieldScalar(0)


def test_rational_tokens() -> None:
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("+7") == Fraction(7)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_to_text_has_four_reduced_tokens() -> None:
    assert FieldScalar(Fraction(2, 4), 0, Fraction(-3, 9), 1).to_text() == "1/2 0 -1/3 1"


def test_sqrt_exact() -> None:
    assert FieldScalar(Fraction(9, 4)).sqrt_exact() == FieldScalar(Fraction(3, 2))
    assert FieldScalar(Fraction(1, 2)).sqrt_exact() == FieldScalar(0, Fraction(1, 2))
    assert FieldScalar(3).sqrt_exact() == FieldScalar(0, 0, 1)
    assert FieldScalar(5).sqrt_exact() is None
    assert FieldScalar(-1).sqrt_exact() is None


def test_enclosure_width_and_containment() -> None:
    x = FieldScalar(0, 1)
    box = field_enclosure(x, 64)
    assert box.width <= Fraction(1, 2**64)
    assert box.lo * box.lo <= 2 <= box.hi * box.hi


def test_rational_enclosure_is_a_point() -> None:
    assert field_enclosure(FieldScalar(Fraction(1, 3)), 8) == RationalInterval.point(Fraction(1, 3))


def test_surd_sign_compares_squares() -> None:
    # 1 - sqrt(2) and -1 + sqrt(3)
    assert SurdScalar(FieldScalar(1), FieldScalar(-1), FieldScalar(2)).sign() == -1
    assert SurdScalar(FieldScalar(-1), FieldScalar(1), FieldScalar(3)).sign() == 1


def test_surd_radicands_must_agree() -> None:
    x = SurdScalar(FieldScalar(0), FieldScalar(1), FieldScalar(5))
    y = SurdScalar(FieldScalar(0), FieldScalar(1), FieldScalar(7))
    with pytest.raises(ValueError):
        _ = x + y


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_laws(x: FieldScalar, y: FieldScalar, z: FieldScalar) -> None:
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == FieldScalar()


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_inverse(x: FieldScalar) -> None:
    if x.is_zero():
        return
    assert x * x.inverse() == FieldScalar(1)


@settings(max_examples=100, deadline=None)
@given(scalars)
def test_sign_agrees_with_high_precision_oracle(x: FieldScalar) -> None:
    value = _mp(x)
    if x.is_zero():
        assert field_sign(x) == 0
        return
    assert value != 0
    assert field_sign(x) == (1 if value > 0 else -1)


@settings(max_examples=60, deadline=None)
@given(scalars, st.integers(min_value=8, max_value=200))
def test_enclosure_contains_oracle_value(x: FieldScalar, bits: int) -> None:
    box = x.enclosure(bits)
    value = _mp(x)
    lo = mpmath.mpf(box.lo.numerator) / box.lo.denominator
    hi = mpmath.mpf(box.hi.numerator) / box.hi.denominator
    assert lo <= value <= hi
    assert box.width <= Fraction(1, 2**bits)
