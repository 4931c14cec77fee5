"""
Exact rational helpers.
Every weight, height, exponent and valuation in the project is a Fraction;
the only float that ever appears is INFINITY (val(0), unreachable tropical terms).
"""

import math
import re
from fractions import Fraction
from typing import Union

INFINITY = math.inf

# A rational or +inf
ExtendedRational = Union[Fraction, float]

_DECIMAL_RE = re.compile(r'^[+-]?(\d+(\.\d*)?|\.\d+)$')
_RATIO_RE = re.compile(r'^[+-]?\d+/\d+$')


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational literal.

    Accepts integers, decimals ("0.125") and ratios ("7/2"). Decimals are
    converted exactly, never through float.

    Args:
        text: Literal to parse

    Returns:
        The exact value as a Fraction

    Raises:
        ValueError: If the literal is not a rational number
    """
    text = text.strip()
    if _RATIO_RE.match(text):
        numerator, denominator = text.split('/')
        if int(denominator) == 0:
            raise ValueError(f"Zero denominator in {text!r}")
        return Fraction(int(numerator), int(denominator))
    if _DECIMAL_RE.match(text):
        return Fraction(text)
    raise ValueError(f"Not an exact rational literal: {text!r}")


def parse_extended(text: str) -> ExtendedRational:
    """Parse a rational literal or one of "inf", "+inf", "infinity"."""
    if text.strip().lower() in ('inf', '+inf', 'infinity'):
        return INFINITY
    return parse_rational(text)


def format_rational(value: Union[ExtendedRational, int]) -> str:
    """Render an exact value as "p/q", an integer string, or "inf"."""
    if is_infinite(value):
        return 'inf'
    if isinstance(value, float):
        raise TypeError(f"Refusing to format inexact value {value!r}")
    return str(Fraction(value))


def is_infinite(value) -> bool:
    return isinstance(value, float) and value == INFINITY
