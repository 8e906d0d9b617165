"""Soppia: weighted multi-criteria assessment of non-pecuniary damages.

The package turns a criteria schema (weights, direct/inverse logic,
severity bands) plus per-criterion presence judgments into an exact
weighted total, a severity classification, a compensation
recommendation, and an auditable report. A file-backed store, an HTTP
service, a CLI, and a prompt bridge for text-completion models sit on
top of the same engine.
"""

from .canonical import canonical_json
from .classification import (
    Classification,
    CompensationRecommendation,
    DecimalInterval,
    Third,
    classify,
    classify_total,
    recommend_compensation,
)
from .errors import SoppiaError
from .pipeline import AssessmentResult, assess_case, result_to_dict
from .prompting import (
    CompletionEndpoint,
    ParsedResponse,
    PromptDocument,
    complete_via_model,
    parse_response,
    render_prompt,
    synthesize_response,
)
from .reporting import Report, build_report, render_report_text
from .schema import (
    ClassificationBand,
    CriteriaSchema,
    CriterionSpec,
    Logic,
    Violation,
    default_clt_schema,
    load_schema,
    load_schema_file,
    schema_from_dict,
    schema_to_dict,
    validate_schema,
)
from .scoring import (
    CaseFile,
    CriterionAssessment,
    Money,
    ScoreBreakdown,
    ScoreRow,
    case_from_dict,
    case_to_dict,
    load_case,
    load_case_file,
    score_case,
    severity_of,
)
from .sensitivity import (
    MarginalRow,
    SweepPoint,
    WhatIfDelta,
    WhatIfOutcome,
    marginal_contributions,
    weight_sweep,
    what_if,
)
from .store import CaseStore, RecordSummary, StoredRecord

__version__ = "0.1.0"

__all__ = [
    "canonical_json",
    "AssessmentResult",
    "CaseFile",
    "CaseStore",
    "Classification",
    "ClassificationBand",
    "CompensationRecommendation",
    "CompletionEndpoint",
    "CriteriaSchema",
    "CriterionAssessment",
    "CriterionSpec",
    "DecimalInterval",
    "Logic",
    "MarginalRow",
    "Money",
    "ParsedResponse",
    "PromptDocument",
    "RecordSummary",
    "Report",
    "ScoreBreakdown",
    "ScoreRow",
    "SoppiaError",
    "StoredRecord",
    "SweepPoint",
    "Third",
    "Violation",
    "WhatIfDelta",
    "WhatIfOutcome",
    "assess_case",
    "build_report",
    "case_from_dict",
    "case_to_dict",
    "classify",
    "classify_total",
    "complete_via_model",
    "default_clt_schema",
    "load_case",
    "load_case_file",
    "load_schema",
    "load_schema_file",
    "marginal_contributions",
    "parse_response",
    "recommend_compensation",
    "render_prompt",
    "render_report_text",
    "result_to_dict",
    "schema_from_dict",
    "schema_to_dict",
    "score_case",
    "severity_of",
    "synthesize_response",
    "validate_schema",
    "weight_sweep",
    "what_if",
]
