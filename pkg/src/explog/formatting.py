"""Decimal rendering of exact values, rounded half-even or truncated."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpfr

__all__ = ["exact_fraction", "format_fixed", "format_significant"]


def exact_fraction(value) -> Fraction:
    """Exact rational image of an int, Fraction, float or ``mpfr``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, type(mpfr(0))):
        value = mpfr(value)  # floats convert exactly at the default 53 bits
    num, den = value.as_integer_ratio()
    return Fraction(int(num), int(den))


def _round_half_even(q: Fraction) -> int:
    floor = q.numerator // q.denominator
    rem = q - floor
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and floor % 2):
        floor += 1
    return floor


def _truncate(q: Fraction) -> int:
    return q.numerator // q.denominator if q >= 0 else -((-q.numerator) // q.denominator)


def format_fixed(value, places: int, truncate: bool = False) -> str:
    """``value`` with exactly ``places`` decimals.

    Rounding is decided on the exact rational value, so a true tie such as
    ``0.60525`` at four places goes to the even neighbour.  With
    ``truncate`` the digits are cut toward zero instead.
    """
    scaled = exact_fraction(value) * 10 ** places
    units = _truncate(scaled) if truncate else _round_half_even(scaled)
    sign = "-" if units < 0 else ""
    digits = str(abs(units)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_significant(value, digits: int = 20, truncate: bool = False) -> str:
    """Fixed-point text carrying ``digits`` significant digits."""
    q = exact_fraction(value)
    if q == 0:
        return "0." + "0" * (digits - 1)
    mag = abs(q)
    exponent = len(str(mag.numerator // mag.denominator)) - 1 if mag >= 1 else 0
    if mag < 1:
        while mag * 10 ** (-exponent) < 1:
            exponent -= 1
    places = max(digits - 1 - exponent, 0)
    text = format_fixed(q, places, truncate)
    # Rounding up can add a leading digit (9.99 -> 10.0); drop one place then.
    if len(text.lstrip("-").replace(".", "").lstrip("0")) > digits and places > 0:
        text = format_fixed(q, places - 1, truncate)
    return text
