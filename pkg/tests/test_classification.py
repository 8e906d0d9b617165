from __future__ import annotations

from decimal import Decimal

import pytest

from soppia import (
    Money,
    Third,
    classify,
    classify_total,
    recommend_compensation,
    score_case,
)
from soppia.classification import (
    classification_to_dict,
    recommendation_to_dict,
    third_rank,
)
from soppia.errors import IncompleteCaseError, RangeError

from helpers import make_case, uniform_presences

BRL_3000 = Money(amount=Decimal("3000"), currency="BRL")

BOUNDARY_TABLE = [
    ("14.6", "Mild", True),
    ("32.99", "Mild", False),
    ("33", "Medium", False),
    ("50.99", "Medium", False),
    ("51", "Severe", False),
    ("68.99", "Severe", False),
    ("69", "Very Severe", False),
    ("73", "Very Severe", False),
]


@pytest.mark.parametrize("total,band,below", BOUNDARY_TABLE)
def test_band_boundaries_are_half_open(clt, total, band, below):
    classification = classify_total(clt, Decimal(total))
    assert classification.band_label == band
    assert classification.below_scale is below


def test_below_scale_pins_position_to_zero(clt):
    classification = classify_total(clt, Decimal("14.6"))
    assert classification.position_fraction == Decimal("0")
    assert classification.third is Third.LOWER
    assert classification.band_lo == Decimal("15")
    assert classification.band_hi == Decimal("33")


def test_position_fraction_is_exact(clt):
    classification = classify_total(clt, Decimal("43.8"))
    # (43.8 - 33) / (51 - 33) = 0.6 exactly.
    assert classification.position_fraction == Decimal("0.6")
    assert classification.third is Third.MIDDLE


def test_band_start_is_lower_third(clt):
    classification = classify_total(clt, Decimal("33"))
    assert classification.position_fraction == Decimal("0")
    assert classification.third is Third.LOWER


def test_third_boundary_at_one_third_is_middle(clt):
    # 39 sits exactly one third into Medium; 1/3 has no finite decimal
    # expansion, so only exact rational comparison gets this right.
    assert classify_total(clt, Decimal("39")).third is Third.MIDDLE
    assert classify_total(clt, Decimal("38.99")).third is Third.LOWER


def test_third_boundary_at_two_thirds_is_upper(clt):
    assert classify_total(clt, Decimal("45")).third is Third.UPPER
    assert classify_total(clt, Decimal("44.99")).third is Third.MIDDLE


def test_top_band_uses_max_total_as_ceiling(clt):
    classification = classify_total(clt, Decimal("73.0"))
    assert classification.band_label == "Very Severe"
    # The band stays unbounded; max_total is only the effective ceiling.
    assert classification.band_hi is None
    assert classification.position_fraction == Decimal("1")
    assert classification.third is Third.UPPER
    # Midway between 69 and the 73.0 ceiling: (71 - 69) / (73 - 69) = 0.5.
    midway = classify_total(clt, Decimal("71"))
    assert midway.position_fraction == Decimal("0.5")
    assert midway.third is Third.MIDDLE


def test_position_clamps_above_max_total(clt):
    classification = classify_total(clt, Decimal("90"))
    assert classification.band_label == "Very Severe"
    assert classification.position_fraction == Decimal("1")


def test_third_rank_orders_thirds():
    assert third_rank(Third.LOWER) < third_rank(Third.MIDDLE) < third_rank(Third.UPPER)


def test_classify_requires_complete_case(clt):
    presences = uniform_presences(3, 3)
    del presences["XII"]
    breakdown = score_case(clt, make_case(presences))
    with pytest.raises(IncompleteCaseError):
        classify(clt, breakdown)


def test_classify_breakdown_matches_classify_total(clt):
    breakdown = score_case(clt, make_case(uniform_presences(3, 3)))
    assert classify(clt, breakdown) == classify_total(clt, Decimal("43.8"))


def test_recommendation_medium_middle_third(clt):
    classification = classify_total(clt, Decimal("43.8"))
    recommendation = recommend_compensation(clt, classification, BRL_3000)
    assert recommendation.multiplier_interval.lo == Decimal("3")
    assert recommendation.multiplier_interval.hi == Decimal("5")
    assert recommendation.third_interval.lo == Decimal("3.6667")
    assert recommendation.third_interval.hi == Decimal("4.3333")
    assert recommendation.recommended_multiplier == Decimal("4.0")
    assert recommendation.recommended_amount.amount == Decimal("12000.0")
    assert recommendation.recommended_amount.currency == "BRL"
    assert recommendation.band_cap_amount.amount == Decimal("15000")


def test_recommendation_mild_lower_third(clt):
    classification = classify_total(clt, Decimal("15"))
    recommendation = recommend_compensation(clt, classification, BRL_3000)
    # First band floors at 0x: interval (0, 3], lower third (0, 1].
    assert recommendation.multiplier_interval.lo == Decimal("0")
    assert recommendation.multiplier_interval.hi == Decimal("3")
    assert recommendation.third_interval.lo == Decimal("0")
    assert recommendation.third_interval.hi == Decimal("1.0")
    assert recommendation.recommended_multiplier == Decimal("0.5")
    assert recommendation.recommended_amount.amount == Decimal("1500.0")


def test_recommendation_below_scale_matches_band_start(clt):
    below = recommend_compensation(clt, classify_total(clt, Decimal("14.6")), BRL_3000)
    at_start = recommend_compensation(clt, classify_total(clt, Decimal("15")), BRL_3000)
    assert below == at_start


def test_recommendation_very_severe_upper_third(clt):
    classification = classify_total(clt, Decimal("73.0"))
    recommendation = recommend_compensation(clt, classification, BRL_3000)
    assert recommendation.multiplier_interval.lo == Decimal("20")
    assert recommendation.multiplier_interval.hi == Decimal("50")
    assert recommendation.third_interval.lo == Decimal("40.0")
    assert recommendation.third_interval.hi == Decimal("50.0")
    assert recommendation.recommended_multiplier == Decimal("45.0")
    assert recommendation.recommended_amount.amount == Decimal("135000.0")
    assert recommendation.band_cap_amount.amount == Decimal("150000")


def test_recommended_amount_is_exact_product(clt):
    classification = classify_total(clt, Decimal("48.0"))
    baseline = Money(amount=Decimal("5000"), currency="BRL")
    recommendation = recommend_compensation(clt, classification, baseline)
    assert recommendation.recommended_multiplier == Decimal("4.6667")
    assert recommendation.recommended_amount.amount == Decimal("4.6667") * Decimal("5000")


def test_recommendation_rejects_nonpositive_baseline(clt):
    classification = classify_total(clt, Decimal("43.8"))
    for amount in (Decimal("0"), Decimal("-10")):
        with pytest.raises(RangeError):
            recommend_compensation(
                clt, classification, Money(amount=amount, currency="BRL")
            )


def test_classification_to_dict_shape(clt):
    document = classification_to_dict(classify_total(clt, Decimal("43.8")))
    assert document == {
        "band_label": "Medium",
        "band_interval": {"score_lo": "33", "score_hi": "51"},
        "position_fraction": "0.6",
        "third": "middle",
        "below_scale": False,
    }


def test_recommendation_to_dict_uses_strings(clt):
    recommendation = recommend_compensation(
        clt, classify_total(clt, Decimal("43.8")), BRL_3000
    )
    document = recommendation_to_dict(recommendation)
    assert document["recommended_multiplier"] == "4.0"
    assert document["recommended_amount"] == {"amount": "12000.0", "currency": "BRL"}
    assert document["third_interval"] == {"lo": "3.6667", "hi": "4.3333"}
