from __future__ import annotations

import dataclasses
import re
from decimal import Decimal

import pytest

from soppia import (
    assess_case,
    build_report,
    classify,
    classify_total,
    recommend_compensation,
    render_report_text,
    score_case,
)
from soppia.errors import ConsistencyError, IncompleteCaseError, ParseError
from soppia.reporting import report_to_dict

from helpers import golden_text, load_fixture, make_case, uniform_presences

HEADINGS = (
    "1. CASE SUMMARY",
    "2. CRITERIA ANALYSIS",
    "3. FINAL CALCULATION",
    "4. CONCLUSION",
)

GOLDEN_CASES = ("case-all-ones", "case-all-threes", "case-mixed-injury")


def _report_for(clt, case):
    return assess_case(clt, case).report


@pytest.mark.parametrize("case_id", GOLDEN_CASES)
@pytest.mark.parametrize("fmt,suffix", [("markdown", "md"), ("plain", "txt")])
def test_rendering_matches_golden(clt, case_id, fmt, suffix):
    report = _report_for(clt, load_fixture(case_id))
    assert render_report_text(report, fmt) == golden_text(f"{case_id}.{suffix}")


@pytest.mark.parametrize("fmt", ["markdown", "plain"])
def test_headings_appear_once_in_order(clt, fmt):
    text = render_report_text(_report_for(clt, load_fixture("case-all-threes")), fmt)
    positions = []
    for heading in HEADINGS:
        occurrences = [match.start() for match in re.finditer(re.escape(heading), text)]
        assert len(occurrences) == 1, f"{heading!r} appears {len(occurrences)} times"
        positions.append(occurrences[0])
    assert positions == sorted(positions)


def test_total_line_format(clt):
    text = render_report_text(_report_for(clt, load_fixture("case-all-threes")), "plain")
    assert "Total weighted score: 43.8 points" in text


def test_scores_render_with_one_decimal_place(clt):
    report = _report_for(clt, load_fixture("case-boundary-33"))
    text = render_report_text(report, "plain")
    assert "Total weighted score: 33.0 points" in text


def test_amounts_render_with_two_decimal_places(clt):
    text = render_report_text(_report_for(clt, load_fixture("case-all-threes")), "plain")
    assert "BRL 12000.00" in text
    assert "BRL 15000.00" in text


def test_rendering_is_pure(clt):
    report = _report_for(clt, load_fixture("case-all-threes"))
    first = render_report_text(report, "markdown")
    second = render_report_text(report, "markdown")
    assert first == second


def test_generated_at_is_case_updated_at(clt):
    case = load_fixture("case-all-threes")
    report = _report_for(clt, case)
    assert report.generated_at == case.updated_at
    assert "2026-02-05T11:20:00Z" in render_report_text(report, "markdown")


def test_report_carries_every_criterion_row(clt):
    report = _report_for(clt, load_fixture("case-all-threes"))
    assert len(report.criteria_rows) == 12
    assert report.criteria_rows[2].name == "Possibility of recovery"
    assert report.criteria_rows[2].severity == 3


def test_markdown_escapes_table_breaking_characters(clt):
    case = load_fixture("case-all-threes")
    tampered = dataclasses.replace(
        case.assessments[0], justification="pipes | break | tables\nand newlines"
    )
    case = dataclasses.replace(case, assessments=(tampered,) + case.assessments[1:])
    text = render_report_text(_report_for(clt, case), "markdown")
    table_lines = [line for line in text.splitlines() if line.startswith("| I |")]
    assert len(table_lines) == 1
    assert "\\|" in table_lines[0]


def test_render_rejects_unknown_format(clt):
    report = _report_for(clt, load_fixture("case-all-threes"))
    with pytest.raises(ParseError):
        render_report_text(report, "html")


def test_build_report_requires_complete_breakdown(clt):
    presences = uniform_presences(3, 3)
    del presences["XII"]
    case = make_case(presences)
    breakdown = score_case(clt, case)
    complete = make_case(uniform_presences(3, 3))
    reference = assess_case(clt, complete)
    with pytest.raises(IncompleteCaseError):
        build_report(
            clt, case, breakdown, reference.classification, reference.recommendation
        )


def test_build_report_rejects_inconsistent_classification(clt):
    case = make_case(uniform_presences(3, 3))
    breakdown = score_case(clt, case)
    wrong = classify_total(clt, Decimal("60"))
    recommendation = recommend_compensation(clt, wrong, case.baseline)
    with pytest.raises(ConsistencyError):
        build_report(clt, case, breakdown, wrong, recommendation)


def test_build_report_rejects_inconsistent_recommendation(clt):
    case = make_case(uniform_presences(3, 3))
    breakdown = score_case(clt, case)
    classification = classify(clt, breakdown)
    foreign = recommend_compensation(
        clt, classification, dataclasses.replace(case.baseline, amount=Decimal("999"))
    )
    with pytest.raises(ConsistencyError):
        build_report(clt, case, breakdown, classification, foreign)


def test_below_scale_case_notes_it_in_text(clt):
    text = render_report_text(_report_for(clt, load_fixture("case-all-ones")), "plain")
    assert "below scale" in text


def test_locale_falls_back_to_english_for_unknown_jurisdiction(clt):
    foreign = dataclasses.replace(clt, jurisdiction="Atlantis (test)")
    report = _report_for(foreign, make_case(uniform_presences(3, 3)))
    text = render_report_text(report, "plain")
    assert "1. CASE SUMMARY" in text
    assert "Total weighted score: 43.8 points" in text


def test_report_to_dict_shape(clt):
    document = report_to_dict(_report_for(clt, load_fixture("case-all-threes")))
    assert document["case_id"] == "case-all-threes"
    assert document["schema_id"] == "clt-223g"
    assert document["baseline_label"] == "victim's monthly salary"
    assert document["final_calculation"]["weighted_total"] == "43.8"
    assert document["final_calculation"]["band_label"] == "Medium"
    assert document["final_calculation"]["third"] == "middle"
    assert len(document["criteria_rows"]) == 12
    assert document["criteria_rows"][0]["weight"] == "1.5"
