"""Exact rational helpers.

All probabilities in the package are ``gmpy2.mpq`` values: exact, always
reduced, and fast enough for the bit-doubling recurrences. They compare and
hash equal to ``fractions.Fraction``.
"""
from __future__ import annotations

import re

import gmpy2
from gmpy2 import mpq, mpz

from .errors import UsageError

__all__ = ["mpq", "Q", "parse_rational", "fmt", "decimal", "floor_dyadic", "ceil_dyadic"]

_RATIONAL_RE = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+)$")


def Q(x) -> mpq:
    """Coerce ints, Fractions, mpq and "p/q" strings to mpq."""
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a rational")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def parse_rational(text: str) -> mpq:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise UsageError(f"malformed rational {text!r}")
    try:
        return mpq(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}") from exc


def fmt(x) -> str:
    """Render as "p/q" (or "p" for integers)."""
    return str(Q(x))


def decimal(x, digits: int = 12) -> str:
    """Decimal rendering to ``digits`` significant digits."""
    x = Q(x)
    # 4 guard bits per requested digit keeps the binary rounding invisible
    return format(gmpy2.mpfr(x, 4 * digits + 16), f".{digits}g")


def floor_dyadic(x: mpq, bits: int) -> mpq:
    """Largest multiple of 2**-bits that is <= x."""
    x = Q(x)
    return mpq(gmpy2.f_div(x.numerator << bits, x.denominator), mpz(1) << bits)


def ceil_dyadic(x: mpq, bits: int) -> mpq:
    """Smallest multiple of 2**-bits that is >= x."""
    x = Q(x)
    return mpq(gmpy2.c_div(x.numerator << bits, x.denominator), mpz(1) << bits)
