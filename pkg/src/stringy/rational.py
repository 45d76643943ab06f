"""Exact rational scalars.

All arithmetic in this package is exact.  The scalar type is the standard
library ``Fraction``, which is always reduced to lowest terms and keeps a
positive denominator, so canonicalization is idempotent by construction.
Helpers here cover the wire format ("p/q" strings, never decimals) and the
common denominator used by the lattice substitution.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import SchemaError

Rat = Fraction

_RAT_PATTERN = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rat(text: str) -> Fraction:
    """Parse an exact rational from a "p/q" or "p" string.

    Decimal or exponent notation is rejected: the wire format never carries
    floating point.
    """
    if not isinstance(text, str) or not _RAT_PATTERN.match(text.strip()):
        raise SchemaError(f"not an exact rational: {text!r} (expected 'p' or 'p/q')")
    return Fraction(text.strip())


def format_rat(value: Fraction | int) -> str:
    """Canonical string form: reduced, denominator omitted when it is 1."""
    return str(Fraction(value))


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators, 1 for an empty collection."""
    result = 1
    for value in values:
        result = lcm(result, Fraction(value).denominator)
    return result
