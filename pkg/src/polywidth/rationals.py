"""Parsing and formatting of exact rationals.

Accepted input is "p/q" or "p" with integer p, q.  Decimal and scientific
notation are rejected: a float literal silently rounds, and every value in
this package must survive serialization bit-exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import RationalFormatError

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction, rejecting anything inexact."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise RationalFormatError(
            f"not an exact rational (expected 'p' or 'p/q'): {text!r}"
        )
    num = int(m.group(1))
    den = m.group(2)
    if den is None:
        return Fraction(num)
    if int(den) == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(num, int(den))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
