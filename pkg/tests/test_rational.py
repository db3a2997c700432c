from fractions import Fraction

import pytest

from cliflat.rational import Q, RationalParseError, as_q, format_q, parse_q


@pytest.mark.parametrize("text, value", [("0", Q(0)), ("-3", Q(-3)), ("2/3", Q(2, 3)), ("-7/12", Q(-7, 12))])
def test_strict_roundtrip(text, value):
    assert parse_q(text) == value
    assert format_q(value) == text


@pytest.mark.parametrize("text", ["2/4", "1/1", "-0", "+1", "1/-2", "0/5", "1.5", "", "x", "3/0"])
def test_strict_rejects_noncanonical(text):
    with pytest.raises(RationalParseError):
        parse_q(text)


@pytest.mark.parametrize("text, value", [("2/4", Q(1, 2)), ("1/-2", Q(-1, 2)), (" 6/3 ", Q(2)), ("+5", Q(5))])
def test_lenient_normalizes(text, value):
    assert parse_q(text, strict=False) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "nan"])
def test_lenient_still_rejects_inexact(text):
    with pytest.raises(RationalParseError):
        parse_q(text, strict=False)


def test_as_q_rejects_float():
    with pytest.raises(TypeError):
        as_q(0.5)
    assert as_q(Fraction(3, 9)) == Q(1, 3)
    assert as_q("4/6") == Q(2, 3)
