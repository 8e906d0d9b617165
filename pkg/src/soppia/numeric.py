"""Exact decimal and rational arithmetic helpers.

Scores, weights, and money travel as `decimal.Decimal` parsed from strings,
so threshold comparisons are exact. Ratios that may not terminate (band
positions, thirds of an interval, shares of a total) are computed as
`fractions.Fraction` and materialized to short decimals only at the edge.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

from .errors import ParseError

# Decimal places used when materializing a non-terminating ratio.
RATIO_PLACES = 4

# Working precision for aggregate arithmetic. Far above any realistic
# operand width, so sums and products stay exact.
WORKING_PRECISION = 50


def dec(value: object, *, field: str | None = None) -> Decimal:
    """Parse a decimal from a string or int.

    Floats are rejected outright: binary floats would smuggle rounding
    error into threshold comparisons, which is why JSON documents carry
    decimals as strings in the first place.
    """
    if isinstance(value, Decimal):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"expected a string decimal, got {value!r}", field=field)
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, str):
        try:
            parsed = Decimal(value.strip())
        except InvalidOperation as exc:
            raise ParseError(f"not a decimal: {value!r}", field=field) from exc
        if not parsed.is_finite():
            raise ParseError(f"not a finite decimal: {value!r}", field=field)
        return parsed
    raise ParseError(
        f"expected a string decimal, got {type(value).__name__}", field=field
    )


def mul(a: Decimal, b: Decimal) -> Decimal:
    """Exact product of two decimals."""
    with localcontext() as ctx:
        ctx.prec = WORKING_PRECISION
        return a * b


def dsum(values) -> Decimal:
    """Exact sum of decimals; the result is identical in any order."""
    with localcontext() as ctx:
        ctx.prec = WORKING_PRECISION
        total = Decimal(0)
        for value in values:
            total += value
        return total


def quant(value: Decimal, places: int) -> Decimal:
    """Round half-even to a fixed number of decimal places."""
    return value.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)


def frac_to_decimal(
    value: Fraction, max_places: int = RATIO_PLACES, min_places: int = 1
) -> Decimal:
    """Materialize a rational as a short decimal.

    The result is exact whenever the value terminates within
    ``max_places``; otherwise it is rounded half-even at ``max_places``.
    Trailing zeros are trimmed down to ``min_places``.
    """
    scaled = value * 10**max_places
    if scaled.denominator == 1:
        units = scaled.numerator
    else:
        units = round(scaled)
    places = max_places
    while places > min_places and units % 10 == 0:
        units //= 10
        places -= 1
    with localcontext() as ctx:
        ctx.prec = WORKING_PRECISION
        return Decimal(units).scaleb(-places)
