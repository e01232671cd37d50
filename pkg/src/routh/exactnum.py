"""Exact rational helpers.

Every number in the package is a :class:`fractions.Fraction`. Fractions are
immutable and always kept in lowest terms with a positive denominator, which
is exactly the canonical form we need; this module only adds the strict
``"p/q"`` text codec and a few thin wrappers with the error behaviour the
rest of the code relies on.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

ExactRational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


class RationalParseError(ValueError):
    """Raised for text that is not an exact ``p/q`` or integer literal."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    # U+2212 shows up when values are copied from typeset documents
    cleaned = text.strip().replace("−", "-")
    m = _RATIONAL_RE.match(cleaned)
    if m is None:
        raise RationalParseError(f"not an exact rational: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value


def render(value: Fraction) -> str:
    """Canonical text form: ``p/q``, or just ``p`` when ``q == 1``."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def add(a, b) -> Fraction:
    return as_rational(a) + as_rational(b)


def sub(a, b) -> Fraction:
    return as_rational(a) - as_rational(b)


def mul(a, b) -> Fraction:
    return as_rational(a) * as_rational(b)


def div(a, b) -> Fraction:
    """Exact quotient; ``ZeroDivisionError`` when ``b == 0``."""
    b = as_rational(b)
    if b == 0:
        raise ZeroDivisionError(f"division of {render(as_rational(a))} by zero")
    return as_rational(a) / b


def qpow(a, e: int) -> Fraction:
    if not isinstance(e, int) or e < 0:
        raise ValueError("exponent must be a non-negative integer")
    # Fraction(0) ** 0 is already 1, but be explicit about it
    if e == 0:
        return Fraction(1)
    return as_rational(a) ** e


def cmp(a, b) -> int:
    """Return -1, 0 or 1 by exact comparison."""
    a, b = as_rational(a), as_rational(b)
    return (a > b) - (a < b)


def sign(a) -> int:
    return cmp(a, 0)
