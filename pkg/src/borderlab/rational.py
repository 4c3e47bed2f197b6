"""Parsing and rendering of exact rationals.

The wire format for every number in this package is a string: either an
integer literal ("3", "-2") or a fraction "p/q".  All arithmetic stays in
:class:`fractions.Fraction`; decimals are rendered for display only.
"""

from __future__ import annotations

import decimal
from fractions import Fraction

DECIMAL_DIGITS = 30


def parse_rational(value) -> Fraction:
    """Parse an int, a Fraction, or a 'p/q' / integer-literal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as 'p/q', or plain 'p' when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Correctly rounded decimal rendering with `digits` significant digits."""
    value = Fraction(value)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return str(d)
