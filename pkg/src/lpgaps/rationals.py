"""Exact rational scalars and their canonical text form.

Every solver in this package computes over ``Rational``, an alias of
:class:`fractions.Fraction`: arbitrary precision, reduced form, positive
denominator. No floating point appears on any correctness-critical path,
so "optimal", "infeasible" and "violated by x" are exact statements.

Text form is ``p/q`` in base 10, with ``/q`` omitted when q is 1. That
is the encoding used by all file formats and reports.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(numerator: int, denominator: int = 1) -> Rational:
    """Canonical fraction numerator/denominator (reduced, denominator > 0)."""
    try:
        return Fraction(numerator, denominator)
    except ZeroDivisionError:
        raise ValidationError("rational denominator must be nonzero") from None


def rat_cmp(a: Rational, b: Rational) -> int:
    """Exact three-way comparison: -1 if a < b, 0 if equal, 1 if a > b."""
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def format_rational(value: Rational) -> str:
    """Render as "p/q", omitting "/q" for integers."""
    return str(Fraction(value))


def parse_rational(text: str) -> Rational:
    """Parse "p/q", plain integer, or decimal text back to the exact value."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational literal: {text!r}") from None


def is_integral(value: Rational) -> bool:
    return value.denominator == 1
