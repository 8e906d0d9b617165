"""Per-criterion severity scoring and weighted aggregation.

Assessors record how strongly each factor is *present* (1..5). The engine
is the single place where a criterion's logic turns presence into
severity: direct criteria keep the value, inverse (mitigating) criteria
flip it to ``6 - presence``. Weighted contributions and totals are exact
decimals.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from decimal import Decimal

from .errors import (
    DuplicateAssessment,
    ParseError,
    RangeError,
    UnknownCriterion,
)
from .numeric import dec, dsum, mul
from .schema import CriteriaSchema, Logic, PRESENCE_LEVELS

_TIMESTAMP = re.compile(
    r"^\d{4}-\d{2}-\d{2}[Tt ]\d{2}:\d{2}:\d{2}(?:\.\d+)?(?:[Zz]|[+-]\d{2}:\d{2})$"
)
_CURRENCY = re.compile(r"^[A-Z]{3}$")


@dataclass(frozen=True)
class Money:
    amount: Decimal
    currency: str


@dataclass(frozen=True)
class CriterionAssessment:
    """One assessor judgment: how present a factor is, and why."""

    criterion_id: str
    presence: int
    justification: str = ""
    evidence_refs: tuple[str, ...] = ()


@dataclass(frozen=True)
class CaseFile:
    case_id: str
    facts: str
    baseline: Money
    assessments: tuple[CriterionAssessment, ...]
    created_at: str
    updated_at: str


@dataclass(frozen=True)
class ScoreRow:
    criterion_id: str
    presence: int
    severity: int
    weight: Decimal
    weighted_contribution: Decimal


@dataclass(frozen=True)
class ScoreBreakdown:
    """Scored rows in schema order plus the exact weighted total.

    ``complete`` is True only when every schema criterion was assessed.
    Partial cases still score, so drafts can be evaluated live; only
    classification refuses them.
    """

    rows: tuple[ScoreRow, ...]
    weighted_total: Decimal
    complete: bool


def severity_of(presence: int, logic: Logic) -> int:
    """Map a presence level to severity under the given logic."""
    if isinstance(presence, bool) or not isinstance(presence, int):
        raise RangeError(f"presence must be an integer 1..5, got {presence!r}")
    if presence not in PRESENCE_LEVELS:
        raise RangeError(f"presence must be in 1..5, got {presence}")
    if logic is Logic.INVERSE:
        return 6 - presence
    return presence


def score_case(schema: CriteriaSchema, case: CaseFile) -> ScoreBreakdown:
    """Score a case against a schema.

    Rows come back in schema order. Raises UnknownCriterion for ids the
    schema does not define, DuplicateAssessment when a criterion appears
    twice, and RangeError for presence levels outside 1..5.
    """
    by_id: dict[str, CriterionAssessment] = {}
    for index, assessment in enumerate(case.assessments):
        where = f"assessments[{index}]"
        if schema.criterion(assessment.criterion_id) is None:
            raise UnknownCriterion(
                f"criterion {assessment.criterion_id!r} is not in schema "
                f"{schema.schema_id}",
                field=f"{where}.criterion_id",
            )
        if assessment.criterion_id in by_id:
            raise DuplicateAssessment(
                f"criterion {assessment.criterion_id} assessed more than once",
                field=f"{where}.criterion_id",
            )
        if (
            isinstance(assessment.presence, bool)
            or not isinstance(assessment.presence, int)
            or assessment.presence not in PRESENCE_LEVELS
        ):
            raise RangeError(
                f"presence must be an integer 1..5, got {assessment.presence!r}",
                field=f"{where}.presence",
            )
        by_id[assessment.criterion_id] = assessment

    rows: list[ScoreRow] = []
    for criterion in schema.criteria:
        assessment = by_id.get(criterion.id)
        if assessment is None:
            continue
        severity = severity_of(assessment.presence, criterion.logic)
        rows.append(
            ScoreRow(
                criterion_id=criterion.id,
                presence=assessment.presence,
                severity=severity,
                weight=criterion.weight,
                weighted_contribution=mul(Decimal(severity), criterion.weight),
            )
        )

    return ScoreBreakdown(
        rows=tuple(rows),
        weighted_total=dsum(row.weighted_contribution for row in rows),
        complete=len(rows) == len(schema.criteria),
    )


def missing_criteria(schema: CriteriaSchema, case: CaseFile) -> list[str]:
    """Ids of schema criteria the case has not assessed, in schema order."""
    assessed = {a.criterion_id for a in case.assessments}
    return [c.id for c in schema.criteria if c.id not in assessed]


def _parse_timestamp(value: object, field: str) -> str:
    if not isinstance(value, str) or not _TIMESTAMP.match(value):
        raise ParseError(f"{field} must be an RFC 3339 timestamp", field=field)
    return value


def _parse_money(raw: object, field: str) -> Money:
    if not isinstance(raw, dict):
        raise ParseError("baseline must be an object", field=field)
    amount = dec(raw.get("amount"), field=f"{field}.amount")
    if amount <= 0:
        raise RangeError("baseline amount must be positive", field=f"{field}.amount")
    currency = raw.get("currency")
    if not isinstance(currency, str) or not _CURRENCY.match(currency):
        raise ParseError(
            "currency must be a three-letter ISO 4217 code",
            field=f"{field}.currency",
        )
    return Money(amount=amount, currency=currency)


def case_from_dict(document: dict) -> CaseFile:
    """Build a CaseFile from a parsed JSON document, naming bad fields."""
    if not isinstance(document, dict):
        raise ParseError("case document must be a JSON object")
    case_id = document.get("case_id")
    if not isinstance(case_id, str) or not case_id:
        raise ParseError("case_id must be a non-empty string", field="case_id")
    facts = document.get("facts")
    if not isinstance(facts, str):
        raise ParseError("facts must be a string", field="facts")

    raw_assessments = document.get("assessments")
    if not isinstance(raw_assessments, list):
        raise ParseError("assessments must be an array", field="assessments")
    assessments: list[CriterionAssessment] = []
    seen: set[str] = set()
    for index, raw in enumerate(raw_assessments):
        where = f"assessments[{index}]"
        if not isinstance(raw, dict):
            raise ParseError("assessment must be an object", field=where)
        criterion_id = raw.get("criterion_id")
        if not isinstance(criterion_id, str) or not criterion_id:
            raise ParseError(
                "criterion_id must be a non-empty string",
                field=f"{where}.criterion_id",
            )
        if criterion_id in seen:
            raise DuplicateAssessment(
                f"criterion {criterion_id} assessed more than once",
                field=f"{where}.criterion_id",
            )
        seen.add(criterion_id)
        presence = raw.get("presence")
        if (
            isinstance(presence, bool)
            or not isinstance(presence, int)
            or presence not in PRESENCE_LEVELS
        ):
            raise RangeError(
                f"presence must be an integer 1..5, got {presence!r}",
                field=f"{where}.presence",
            )
        justification = raw.get("justification", "")
        if not isinstance(justification, str):
            raise ParseError(
                "justification must be a string", field=f"{where}.justification"
            )
        raw_refs = raw.get("evidence_refs", [])
        if not isinstance(raw_refs, list) or any(
            not isinstance(ref, str) for ref in raw_refs
        ):
            raise ParseError(
                "evidence_refs must be an array of strings",
                field=f"{where}.evidence_refs",
            )
        assessments.append(
            CriterionAssessment(
                criterion_id=criterion_id,
                presence=presence,
                justification=justification,
                evidence_refs=tuple(raw_refs),
            )
        )

    return CaseFile(
        case_id=case_id,
        facts=facts,
        baseline=_parse_money(document.get("baseline"), "baseline"),
        assessments=tuple(assessments),
        created_at=_parse_timestamp(document.get("created_at"), "created_at"),
        updated_at=_parse_timestamp(document.get("updated_at"), "updated_at"),
    )


def load_case(text: str) -> CaseFile:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return case_from_dict(document)


def load_case_file(path: str) -> CaseFile:
    with open(path, encoding="utf-8") as handle:
        return load_case(handle.read())


def case_to_dict(case: CaseFile) -> dict:
    return {
        "case_id": case.case_id,
        "facts": case.facts,
        "baseline": {
            "amount": str(case.baseline.amount),
            "currency": case.baseline.currency,
        },
        "assessments": [
            {
                "criterion_id": a.criterion_id,
                "presence": a.presence,
                "justification": a.justification,
                "evidence_refs": list(a.evidence_refs),
            }
            for a in case.assessments
        ],
        "created_at": case.created_at,
        "updated_at": case.updated_at,
    }


def breakdown_to_dict(breakdown: ScoreBreakdown) -> dict:
    return {
        "rows": [
            {
                "criterion_id": row.criterion_id,
                "presence": row.presence,
                "severity": row.severity,
                "weight": str(row.weight),
                "weighted_contribution": str(row.weighted_contribution),
            }
            for row in breakdown.rows
        ],
        "weighted_total": str(breakdown.weighted_total),
        "complete": breakdown.complete,
    }
