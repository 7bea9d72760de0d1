"""Exact rational plumbing: parsing, formatting and coercion helpers.

All exact arithmetic in the package rides on :class:`fractions.Fraction`.
Serialized form is the reduced string ``"p/q"`` (denominator always written,
so ``Fraction(1)`` round-trips as ``"1/1"``).
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"3/7"`` and Fractions to Fraction.

    Floats are rejected: they silently encode binary round-off, which would
    defeat the exactness guarantees everywhere downstream.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Reduced ``"p/q"`` form, denominator included even when it is 1."""
    f = as_fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; raises ValueError on malformed input."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}: {exc}") from None
