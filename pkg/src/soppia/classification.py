"""Severity band classification and compensation recommendation.

A weighted total lands in exactly one half-open band [lo, hi). Within the
band, its position fraction (0 at the floor, 1 at the ceiling; the top
band's ceiling is the highest achievable total) selects a third: lower,
middle, or upper. The band supplies a baseline-multiplier ceiling; the
recommendation narrows the band's multiplier interval to the matching
third and proposes its midpoint.

Totals below the first band floor can occur because the minimum
achievable total is not required to reach it. They classify into the
first band with ``below_scale`` set, rather than erroring.

Thirds and midpoints rarely terminate in decimal, so they are computed
as exact rationals and materialized to short decimals at the edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction

from .errors import IncompleteCaseError, RangeError
from .numeric import frac_to_decimal, mul
from .schema import ClassificationBand, CriteriaSchema
from .scoring import Money, ScoreBreakdown


class Third(str, Enum):
    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"


_THIRD_ORDER = {Third.LOWER: 0, Third.MIDDLE: 1, Third.UPPER: 2}


def third_rank(third: Third) -> int:
    return _THIRD_ORDER[third]


@dataclass(frozen=True)
class Classification:
    band_label: str
    band_lo: Decimal
    band_hi: Decimal | None
    position_fraction: Decimal
    third: Third
    below_scale: bool


@dataclass(frozen=True)
class DecimalInterval:
    """A half-open-over / closed-under multiplier range (lo, hi]."""

    lo: Decimal
    hi: Decimal


@dataclass(frozen=True)
class CompensationRecommendation:
    multiplier_interval: DecimalInterval
    third_interval: DecimalInterval
    recommended_multiplier: Decimal
    recommended_amount: Money
    band_cap_amount: Money


def _band_for_total(schema: CriteriaSchema, total: Decimal) -> tuple[int, bool]:
    """Index of the band a total falls in, plus the below-scale flag."""
    first = schema.bands[0]
    if total < first.score_lo:
        return 0, True
    for index, band in enumerate(schema.bands):
        if band.score_hi is None:
            if total >= band.score_lo:
                return index, False
        elif band.score_lo <= total < band.score_hi:
            return index, False
    # A validated schema covers every achievable total, so the only way
    # here is a total beyond a bounded top band; clamp to the last band.
    return len(schema.bands) - 1, False


def _position(
    schema: CriteriaSchema, band: ClassificationBand, total: Decimal, below_scale: bool
) -> Fraction:
    if below_scale:
        return Fraction(0)
    ceiling = band.score_hi if band.score_hi is not None else schema.max_total
    span = Fraction(ceiling) - Fraction(band.score_lo)
    if span <= 0:
        return Fraction(0)
    offset = Fraction(total) - Fraction(band.score_lo)
    position = offset / span
    if position < 0:
        return Fraction(0)
    if position > 1:
        return Fraction(1)
    return position


def _third_of(position: Fraction) -> Third:
    if position < Fraction(1, 3):
        return Third.LOWER
    if position < Fraction(2, 3):
        return Third.MIDDLE
    return Third.UPPER


def classify_total(schema: CriteriaSchema, total: Decimal) -> Classification:
    """Classify an arbitrary weighted total against a schema's bands."""
    index, below_scale = _band_for_total(schema, total)
    band = schema.bands[index]
    position = _position(schema, band, total, below_scale)
    return Classification(
        band_label=band.label,
        band_lo=band.score_lo,
        band_hi=band.score_hi,
        position_fraction=frac_to_decimal(position),
        third=_third_of(position),
        below_scale=below_scale,
    )


def classify(schema: CriteriaSchema, breakdown: ScoreBreakdown) -> Classification:
    """Classify a complete breakdown; partial cases are refused."""
    if not breakdown.complete:
        raise IncompleteCaseError(
            "cannot classify an incomplete case: every schema criterion "
            "must be assessed"
        )
    return classify_total(schema, breakdown.weighted_total)


def _places_for(span: Fraction) -> int:
    """Decimal places needed so a sixth of the span survives rounding."""
    places = 4
    while places < 12 and Fraction(1, 10**places) * 6 > span:
        places += 1
    return places


def recommend_compensation(
    schema: CriteriaSchema, classification: Classification, baseline: Money
) -> CompensationRecommendation:
    """Turn a classification into a concrete multiplier and amount.

    The band's multiplier interval is (previous cap, own cap], floored at
    zero for the first band. The recommendation is the midpoint of the
    third matching the classification, applied exactly to the baseline.
    """
    if baseline.amount <= 0:
        raise RangeError("baseline amount must be positive", field="baseline.amount")
    index = schema.band_index(classification.band_label)
    band = schema.bands[index]
    floor = schema.bands[index - 1].multiplier_cap if index > 0 else Decimal(0)

    lo = Fraction(floor)
    hi = Fraction(band.multiplier_cap)
    span = hi - lo
    third_index = third_rank(classification.third)
    third_lo = lo + span * Fraction(third_index, 3)
    third_hi = lo + span * Fraction(third_index + 1, 3)
    midpoint = (third_lo + third_hi) / 2

    places = _places_for(span)
    recommended_multiplier = frac_to_decimal(midpoint, places)
    return CompensationRecommendation(
        multiplier_interval=DecimalInterval(
            lo=frac_to_decimal(lo, places), hi=frac_to_decimal(hi, places)
        ),
        third_interval=DecimalInterval(
            lo=frac_to_decimal(third_lo, places), hi=frac_to_decimal(third_hi, places)
        ),
        recommended_multiplier=recommended_multiplier,
        recommended_amount=Money(
            amount=mul(recommended_multiplier, baseline.amount),
            currency=baseline.currency,
        ),
        band_cap_amount=Money(
            amount=mul(band.multiplier_cap, baseline.amount),
            currency=baseline.currency,
        ),
    )


def classification_to_dict(classification: Classification) -> dict:
    return {
        "band_label": classification.band_label,
        "band_interval": {
            "score_lo": str(classification.band_lo),
            "score_hi": None
            if classification.band_hi is None
            else str(classification.band_hi),
        },
        "position_fraction": str(classification.position_fraction),
        "third": classification.third.value,
        "below_scale": classification.below_scale,
    }


def recommendation_to_dict(recommendation: CompensationRecommendation) -> dict:
    return {
        "multiplier_interval": {
            "lo": str(recommendation.multiplier_interval.lo),
            "hi": str(recommendation.multiplier_interval.hi),
        },
        "third_interval": {
            "lo": str(recommendation.third_interval.lo),
            "hi": str(recommendation.third_interval.hi),
        },
        "recommended_multiplier": str(recommendation.recommended_multiplier),
        "recommended_amount": {
            "amount": str(recommendation.recommended_amount.amount),
            "currency": recommendation.recommended_amount.currency,
        },
        "band_cap_amount": {
            "amount": str(recommendation.band_cap_amount.amount),
            "currency": recommendation.band_cap_amount.currency,
        },
    }
