"""Exact rationals.

All coefficients in the package are ``gmpy2.mpq`` values: always reduced,
denominator positive, arbitrary precision.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

__all__ = ["Q", "RationalParseError", "as_q", "format_q", "parse_q"]

Q = mpq

_CANONICAL = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


class RationalParseError(ValueError):
    pass


def as_q(value) -> mpq:
    """Coerce an int, Fraction, mpq or rational string to ``mpq``.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(value, float):
        raise TypeError(f"float {value!r} is not an exact rational")
    if isinstance(value, str):
        return parse_q(value, strict=False)
    return mpq(value)


def format_q(q) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_q(text: str, strict: bool = True) -> mpq:
    """Parse ``"p"`` or ``"p/q"``.

    With ``strict`` the text must be the canonical rendering produced by
    :func:`format_q` (reduced, positive denominator, no ``/1``). Otherwise any
    integer ratio is accepted and normalized. Decimal points are always
    rejected.
    """
    if not isinstance(text, str):
        raise RationalParseError(f"expected a rational string, got {type(text).__name__}")
    s = text.strip()
    if strict:
        m = _CANONICAL.match(s)
        if m is None:
            raise RationalParseError(f"malformed rational {text!r}")
        sign, num, den = m.groups()
        if sign and num == "0":
            raise RationalParseError(f"non-canonical rational {text!r}")
        q = mpq(int(sign + num), int(den) if den else 1)
        if format_q(q) != s:
            raise RationalParseError(f"non-canonical rational {text!r} (expected {format_q(q)!r})")
        return q
    m = re.match(r"^([+-]?[0-9]+)(?:/([+-]?[0-9]+))?$", s)
    if m is None:
        raise RationalParseError(f"not an exact rational: {text!r}")
    num, den = m.groups()
    d = int(den) if den is not None else 1
    if d == 0:
        raise RationalParseError(f"zero denominator in {text!r}")
    return mpq(int(num), d)
