from __future__ import annotations

import dataclasses
import json
from decimal import Decimal

import pytest

from soppia import (
    CaseFile,
    Logic,
    canonical_json,
    load_case,
    score_case,
    severity_of,
)
from soppia.errors import (
    DuplicateAssessment,
    ParseError,
    RangeError,
    UnknownCriterion,
)
from soppia.scoring import (
    breakdown_to_dict,
    case_from_dict,
    case_to_dict,
    missing_criteria,
)

from helpers import (
    CRITERION_IDS,
    fixture_dict,
    fixture_text,
    load_fixture,
    make_case,
    uniform_presences,
)


@pytest.mark.parametrize("presence", [1, 2, 3, 4, 5])
def test_direct_severity_equals_presence(presence):
    assert severity_of(presence, Logic.DIRECT) == presence


@pytest.mark.parametrize("presence", [1, 2, 3, 4, 5])
def test_inverse_severity_flips_presence(presence):
    assert severity_of(presence, Logic.INVERSE) == 6 - presence


@pytest.mark.parametrize("presence", [1, 2, 3, 4, 5])
def test_inverse_is_an_involution(presence):
    assert severity_of(severity_of(presence, Logic.INVERSE), Logic.INVERSE) == presence


@pytest.mark.parametrize("bad", [0, 6, -1, 100])
def test_severity_rejects_out_of_range(bad):
    with pytest.raises(RangeError):
        severity_of(bad, Logic.DIRECT)


@pytest.mark.parametrize("bad", [1.0, "3", True, None])
def test_severity_rejects_non_int(bad):
    with pytest.raises(RangeError):
        severity_of(bad, Logic.DIRECT)


def test_score_all_threes(clt):
    breakdown = score_case(clt, make_case(uniform_presences(3, 3)))
    assert breakdown.weighted_total == Decimal("43.8")
    assert breakdown.complete is True


def test_score_rows_follow_schema_order(clt):
    case = make_case(uniform_presences(3, 3))
    shuffled = dataclasses.replace(case, assessments=tuple(reversed(case.assessments)))
    rows = score_case(clt, shuffled).rows
    assert tuple(row.criterion_id for row in rows) == CRITERION_IDS


def test_score_is_order_invariant_bit_for_bit(clt):
    case = load_fixture("case-mixed-injury")
    shuffled = dataclasses.replace(case, assessments=tuple(reversed(case.assessments)))
    original = canonical_json(breakdown_to_dict(score_case(clt, case)))
    reordered = canonical_json(breakdown_to_dict(score_case(clt, shuffled)))
    assert original == reordered


def test_score_contributions_are_exact(clt):
    breakdown = score_case(clt, make_case(uniform_presences(3, 3)))
    by_id = {row.criterion_id: row for row in breakdown.rows}
    assert by_id["III"].weighted_contribution == Decimal("7.5")
    assert by_id["VII"].weighted_contribution == Decimal("3.6")
    assert by_id["XII"].weighted_contribution == Decimal("1.5")


def test_score_applies_inverse_logic_per_row(clt):
    presences = uniform_presences(3, 3)
    presences["IX"] = 1
    breakdown = score_case(clt, make_case(presences))
    row = next(row for row in breakdown.rows if row.criterion_id == "IX")
    assert row.presence == 1
    assert row.severity == 5


def test_score_flags_incomplete_case(clt):
    presences = uniform_presences(3, 3)
    del presences["XII"]
    breakdown = score_case(clt, make_case(presences))
    assert breakdown.complete is False
    assert len(breakdown.rows) == 11


def test_missing_criteria_names_the_gap(clt):
    presences = uniform_presences(3, 3)
    del presences["XII"]
    del presences["IV"]
    assert missing_criteria(clt, make_case(presences)) == ["IV", "XII"]


def test_score_rejects_unknown_criterion(clt):
    presences = uniform_presences(3, 3)
    presences["XIII"] = 3
    with pytest.raises(UnknownCriterion):
        score_case(clt, make_case(presences))


def test_score_rejects_duplicate_assessment(clt):
    case = make_case(uniform_presences(3, 3))
    case = dataclasses.replace(case, assessments=case.assessments + (case.assessments[0],))
    with pytest.raises(DuplicateAssessment):
        score_case(clt, case)


def test_score_rejects_out_of_range_presence(clt):
    presences = uniform_presences(3, 3)
    presences["II"] = 9
    with pytest.raises(RangeError) as excinfo:
        score_case(clt, make_case(presences))
    assert excinfo.value.field == "assessments[1].presence"


def test_case_round_trip_is_bit_identical():
    text = fixture_text("case-mixed-injury")
    case = load_case(text)
    assert canonical_json(case_to_dict(case)) == canonical_json(json.loads(text))


def test_load_case_returns_casefile():
    case = load_fixture("case-all-threes")
    assert isinstance(case, CaseFile)
    assert case.case_id == "case-all-threes"
    assert case.baseline.amount == Decimal("3000")
    assert case.baseline.currency == "BRL"
    assert len(case.assessments) == 12


def _valid_document() -> dict:
    return fixture_dict("case-all-threes")


def test_case_from_dict_rejects_float_amount():
    document = _valid_document()
    document["baseline"]["amount"] = 3000.0
    with pytest.raises(ParseError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "baseline.amount"


def test_case_from_dict_rejects_bad_currency():
    document = _valid_document()
    document["baseline"]["currency"] = "reais"
    with pytest.raises(ParseError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "baseline.currency"


def test_case_from_dict_rejects_bad_timestamp():
    document = _valid_document()
    document["updated_at"] = "yesterday"
    with pytest.raises(ParseError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "updated_at"


def test_case_from_dict_rejects_non_integer_presence():
    document = _valid_document()
    document["assessments"][0]["presence"] = "3"
    with pytest.raises(RangeError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "assessments[0].presence"


def test_case_from_dict_rejects_presence_out_of_range():
    document = _valid_document()
    document["assessments"][4]["presence"] = 9
    with pytest.raises(RangeError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "assessments[4].presence"


def test_case_from_dict_rejects_missing_case_id():
    document = _valid_document()
    del document["case_id"]
    with pytest.raises(ParseError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "case_id"


def test_case_from_dict_rejects_bad_evidence_refs():
    document = _valid_document()
    document["assessments"][0]["evidence_refs"] = "exhibit-1"
    with pytest.raises(ParseError) as excinfo:
        case_from_dict(document)
    assert excinfo.value.field == "assessments[0].evidence_refs"


def test_case_from_dict_accepts_evidence_refs():
    document = _valid_document()
    document["assessments"][0]["evidence_refs"] = ["exhibit-1", "exhibit-2"]
    case = case_from_dict(document)
    assert case.assessments[0].evidence_refs == ("exhibit-1", "exhibit-2")
