"""End-to-end assessment: score, classify, recommend, report.

This is the one path every consumer shares: the CLI, the HTTP service,
and the sensitivity tools all call ``assess_case`` and serialize with
``result_to_dict``, which is how their outputs stay byte-identical.

Incomplete cases are not an error here: they produce a breakdown with
``complete`` False and no classification, recommendation, or report, so
drafts can be evaluated live.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classification import (
    Classification,
    CompensationRecommendation,
    classification_to_dict,
    classify,
    recommend_compensation,
    recommendation_to_dict,
)
from .reporting import (
    Report,
    build_report,
    final_calculation_to_dict,
    render_report_text,
    report_to_dict,
)
from .schema import CriteriaSchema
from .scoring import CaseFile, ScoreBreakdown, breakdown_to_dict, score_case


@dataclass(frozen=True)
class AssessmentResult:
    case: CaseFile
    breakdown: ScoreBreakdown
    classification: Classification | None
    recommendation: CompensationRecommendation | None
    report: Report | None


def assess_case(schema: CriteriaSchema, case: CaseFile) -> AssessmentResult:
    """Run the full pipeline; partial cases stop after scoring."""
    breakdown = score_case(schema, case)
    if not breakdown.complete:
        return AssessmentResult(
            case=case,
            breakdown=breakdown,
            classification=None,
            recommendation=None,
            report=None,
        )
    classification = classify(schema, breakdown)
    recommendation = recommend_compensation(schema, classification, case.baseline)
    report = build_report(schema, case, breakdown, classification, recommendation)
    return AssessmentResult(
        case=case,
        breakdown=breakdown,
        classification=classification,
        recommendation=recommendation,
        report=report,
    )


def result_to_dict(
    result: AssessmentResult,
    *,
    include_report: bool = True,
    include_renderings: bool = False,
) -> dict:
    """Serialize a result; decimals become strings.

    ``final_calculation`` mirrors the report's closing numbers at the top
    level. ``renderings`` carries the plain and markdown report texts so
    exports never re-render client-side.
    """
    data: dict = {
        "breakdown": breakdown_to_dict(result.breakdown),
        "classification": None
        if result.classification is None
        else classification_to_dict(result.classification),
        "recommendation": None
        if result.recommendation is None
        else recommendation_to_dict(result.recommendation),
    }
    if result.report is not None:
        data["final_calculation"] = final_calculation_to_dict(
            result.report.final_calculation
        )
        if include_report:
            data["report"] = report_to_dict(result.report)
        if include_renderings:
            data["renderings"] = {
                "plain": render_report_text(result.report, "plain"),
                "markdown": render_report_text(result.report, "markdown"),
            }
    else:
        data["final_calculation"] = None
        if include_report:
            data["report"] = None
        if include_renderings:
            data["renderings"] = None
    return data
