"""Structured assessment reports and their text renderings.

A report is an audit artifact: it restates the case facts, walks every
scored criterion, and fixes the final numbers. It carries everything its
rendering needs, so ``render_report_text`` is a pure function of the
report and the format; the same report always yields byte-identical
text. Reports carry the timestamp of the case state they reflect, which
keeps regeneration reproducible.

Template strings live in a locale file resolved from the schema's
jurisdiction, falling back to English. The four section headings are a
stable interface: CASE SUMMARY, CRITERIA ANALYSIS, FINAL CALCULATION,
CONCLUSION.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources

from .classification import (
    Classification,
    CompensationRecommendation,
    Third,
    classify_total,
    recommend_compensation,
    recommendation_to_dict,
)
from .errors import ConsistencyError, IncompleteCaseError, ParseError, UnknownCriterion
from .numeric import mul, quant
from .schema import CriteriaSchema, Logic
from .scoring import CaseFile, ScoreBreakdown

FORMATS = ("plain", "markdown")


@dataclass(frozen=True)
class ReportRow:
    criterion_id: str
    name: str
    analysis: str
    presence: int
    logic: Logic
    severity: int
    weight: Decimal
    contribution: Decimal


@dataclass(frozen=True)
class FinalCalculation:
    weighted_total: Decimal
    band_label: str
    third: Third
    below_scale: bool
    recommendation: CompensationRecommendation


@dataclass(frozen=True)
class Report:
    case_id: str
    case_summary: str
    criteria_rows: tuple[ReportRow, ...]
    final_calculation: FinalCalculation
    conclusion: str
    schema_id: str
    schema_version: str
    jurisdiction: str
    baseline_label: str
    generated_at: str


def _load_locale(jurisdiction: str) -> dict:
    slug = re.sub(r"[^a-z0-9]+", "-", jurisdiction.lower()).strip("-")
    package = resources.files("soppia") / "locales"
    candidate = package / f"{slug}.json"
    if slug and candidate.is_file():
        return json.loads(candidate.read_text(encoding="utf-8"))
    return json.loads((package / "en.json").read_text(encoding="utf-8"))


def _score(value: Decimal) -> str:
    """Scores render with exactly one decimal place."""
    return str(quant(value, 1))


def _amount(value: Decimal) -> str:
    """Amounts render with exactly two decimal places."""
    return str(quant(value, 2))


def _multiplier(value: Decimal) -> str:
    """Multipliers keep their stored short form, padded to one place."""
    if value == value.to_integral_value():
        return str(quant(value, 1))
    return str(value)


def build_report(
    schema: CriteriaSchema,
    case: CaseFile,
    breakdown: ScoreBreakdown,
    classification: Classification,
    recommendation: CompensationRecommendation,
) -> Report:
    """Assemble a report, cross-checking that the inputs belong together.

    The numbers stored in the report are the input values themselves,
    never re-rounded. ConsistencyError means the classification or the
    recommendation does not match what the breakdown implies.
    """
    if not breakdown.complete:
        raise IncompleteCaseError("cannot report on an incomplete case")

    recomputed = classify_total(schema, breakdown.weighted_total)
    if recomputed != classification:
        raise ConsistencyError(
            f"classification disagrees with the breakdown total "
            f"{breakdown.weighted_total}: expected band {recomputed.band_label!r} "
            f"at position {recomputed.position_fraction}, got "
            f"{classification.band_label!r} at {classification.position_fraction}"
        )
    if recommend_compensation(schema, classification, case.baseline) != recommendation:
        raise ConsistencyError(
            "recommendation does not follow from the classification and baseline"
        )

    justifications = {a.criterion_id: a.justification for a in case.assessments}
    locale = _load_locale(schema.jurisdiction)
    rows = []
    for row in breakdown.rows:
        criterion = schema.criterion(row.criterion_id)
        if criterion is None:
            raise UnknownCriterion(
                f"breakdown row references unknown criterion {row.criterion_id!r}"
            )
        rows.append(
            ReportRow(
                criterion_id=row.criterion_id,
                name=criterion.name,
                analysis=justifications.get(row.criterion_id)
                or locale["no_justification"],
                presence=row.presence,
                logic=criterion.logic,
                severity=row.severity,
                weight=row.weight,
                contribution=row.weighted_contribution,
            )
        )

    below_scale_text = (
        locale["conclusion_below_scale"] if classification.below_scale else ""
    )
    conclusion = locale["conclusion_template"].format(
        total=_score(breakdown.weighted_total),
        band=classification.band_label,
        third=classification.third.value,
        below_scale=below_scale_text,
        third_lo=_multiplier(recommendation.third_interval.lo),
        third_hi=_multiplier(recommendation.third_interval.hi),
        baseline_label=schema.baseline_label,
        currency=case.baseline.currency,
        amount_lo=_amount(mul(recommendation.third_interval.lo, case.baseline.amount)),
        amount_hi=_amount(mul(recommendation.third_interval.hi, case.baseline.amount)),
        multiplier=_multiplier(recommendation.recommended_multiplier),
        amount=_amount(recommendation.recommended_amount.amount),
    )

    return Report(
        case_id=case.case_id,
        case_summary=case.facts,
        criteria_rows=tuple(rows),
        final_calculation=FinalCalculation(
            weighted_total=breakdown.weighted_total,
            band_label=classification.band_label,
            third=classification.third,
            below_scale=classification.below_scale,
            recommendation=recommendation,
        ),
        conclusion=conclusion,
        schema_id=schema.schema_id,
        schema_version=schema.version,
        jurisdiction=schema.jurisdiction,
        baseline_label=schema.baseline_label,
        generated_at=case.updated_at,
    )


def _cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


def _final_lines(report: Report, locale: dict) -> list[str]:
    final = report.final_calculation
    rec = final.recommendation
    below = locale["below_scale_note"] if final.below_scale else ""
    return [
        locale["line_total"].format(total=_score(final.weighted_total)),
        locale["line_classification"].format(
            band=final.band_label, third=final.third.value, below_scale=below
        ),
        locale["line_compensation"].format(
            third_lo=_multiplier(rec.third_interval.lo),
            third_hi=_multiplier(rec.third_interval.hi),
            baseline_label=report.baseline_label,
        ),
        locale["line_recommended"].format(
            multiplier=_multiplier(rec.recommended_multiplier),
            baseline_label=report.baseline_label,
            currency=rec.recommended_amount.currency,
            amount=_amount(rec.recommended_amount.amount),
        ),
        locale["line_band_cap"].format(
            cap=_multiplier(rec.multiplier_interval.hi),
            baseline_label=report.baseline_label,
            currency=rec.band_cap_amount.currency,
            amount=_amount(rec.band_cap_amount.amount),
        ),
    ]


def _render_markdown(report: Report, locale: dict) -> str:
    lines = [
        f"# {locale['report_title']}",
        "",
        f"- {locale['label_schema']}: {report.schema_id} v{report.schema_version}",
        f"- {locale['label_case']}: {report.case_id}",
        f"- {locale['label_generated']}: {report.generated_at}",
        "",
        f"## {locale['heading_case_summary']}",
        "",
        report.case_summary,
        "",
        f"## {locale['heading_criteria_analysis']}",
        "",
    ]
    header = [
        locale["col_id"],
        locale["col_criterion"],
        locale["col_analysis"],
        locale["col_presence"],
        locale["col_logic"],
        locale["col_severity"],
        locale["col_weight"],
        locale["col_contribution"],
    ]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + " --- |" * len(header))
    for row in report.criteria_rows:
        cells = [
            row.criterion_id,
            _cell(row.name),
            _cell(row.analysis),
            str(row.presence),
            row.logic.value,
            str(row.severity),
            _score(row.weight),
            _score(row.contribution),
        ]
        lines.append("| " + " | ".join(cells) + " |")
    lines += ["", f"## {locale['heading_final_calculation']}", ""]
    lines += [f"- {line}" for line in _final_lines(report, locale)]
    lines += ["", f"## {locale['heading_conclusion']}", "", report.conclusion, ""]
    return "\n".join(lines)


def _render_plain(report: Report, locale: dict) -> str:
    lines = [
        locale["report_title"],
        f"{locale['label_schema']}: {report.schema_id} v{report.schema_version}",
        f"{locale['label_case']}: {report.case_id}",
        f"{locale['label_generated']}: {report.generated_at}",
        "",
        locale["heading_case_summary"],
        "",
        report.case_summary,
        "",
        locale["heading_criteria_analysis"],
        "",
    ]
    for row in report.criteria_rows:
        lines.append(f"{row.criterion_id} - {row.name}")
        lines.append(
            "  "
            + locale["row_detail"].format(
                presence=row.presence,
                logic=row.logic.value,
                severity=row.severity,
                weight=_score(row.weight),
                contribution=_score(row.contribution),
            )
        )
        lines.append(
            "  " + locale["row_analysis"].format(analysis=row.analysis.replace("\n", " "))
        )
    lines += ["", locale["heading_final_calculation"], ""]
    lines += _final_lines(report, locale)
    lines += ["", locale["heading_conclusion"], "", report.conclusion, ""]
    return "\n".join(lines)


def render_report_text(report: Report, fmt: str) -> str:
    """Render a report as ``plain`` or ``markdown`` text."""
    locale = _load_locale(report.jurisdiction)
    if fmt == "markdown":
        return _render_markdown(report, locale)
    if fmt == "plain":
        return _render_plain(report, locale)
    raise ParseError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


def final_calculation_to_dict(final: FinalCalculation) -> dict:
    return {
        "weighted_total": str(final.weighted_total),
        "band_label": final.band_label,
        "third": final.third.value,
        "below_scale": final.below_scale,
        "recommendation": recommendation_to_dict(final.recommendation),
    }


def report_to_dict(report: Report) -> dict:
    return {
        "case_id": report.case_id,
        "case_summary": report.case_summary,
        "criteria_rows": [
            {
                "criterion_id": row.criterion_id,
                "name": row.name,
                "analysis": row.analysis,
                "presence": row.presence,
                "logic": row.logic.value,
                "severity": row.severity,
                "weight": str(row.weight),
                "contribution": str(row.contribution),
            }
            for row in report.criteria_rows
        ],
        "final_calculation": final_calculation_to_dict(report.final_calculation),
        "conclusion": report.conclusion,
        "schema_id": report.schema_id,
        "schema_version": report.schema_version,
        "jurisdiction": report.jurisdiction,
        "baseline_label": report.baseline_label,
        "generated_at": report.generated_at,
    }
