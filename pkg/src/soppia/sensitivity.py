"""What-if deltas, marginal contributions, and weight sweeps.

Everything here derives from the same pipeline the CLI and service use;
nothing is approximated. Weight overrides produce a derived schema whose
achievable totals shift while the band thresholds stay put, which is the
point: the sweep shows how the verdict would move.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import IncompleteCaseError, RangeError, UnknownCriterion
from .numeric import frac_to_decimal, mul
from .pipeline import AssessmentResult, assess_case
from .schema import CriteriaSchema, PRESENCE_LEVELS
from .scoring import CaseFile, CriterionAssessment, score_case


@dataclass(frozen=True)
class WhatIfDelta:
    presence_overrides: Mapping[str, int] = field(default_factory=dict)
    weight_overrides: Mapping[str, Decimal] = field(default_factory=dict)


@dataclass(frozen=True)
class WhatIfOutcome:
    before: AssessmentResult
    after: AssessmentResult
    changed_fields: tuple[str, ...]


@dataclass(frozen=True)
class MarginalRow:
    """How much one criterion moves the total.

    ``share_of_total`` is kept as an exact rational so shares sum to
    exactly one; serialize it with ``frac_to_decimal``. The swing bounds
    are the total change if this criterion's severity moved to 1 or 5.
    """

    criterion_id: str
    weighted_contribution: Decimal
    share_of_total: Fraction
    swing_low: Decimal
    swing_high: Decimal


@dataclass(frozen=True)
class SweepPoint:
    weight: Decimal
    weighted_total: Decimal
    band_label: str


def _validated_presence(criterion_id: str, presence: object) -> int:
    if (
        isinstance(presence, bool)
        or not isinstance(presence, int)
        or presence not in PRESENCE_LEVELS
    ):
        raise RangeError(
            f"presence override for {criterion_id} must be an integer 1..5, "
            f"got {presence!r}",
            field=f"presence_overrides.{criterion_id}",
        )
    return presence


def apply_weight_overrides(
    schema: CriteriaSchema, overrides: Mapping[str, Decimal]
) -> CriteriaSchema:
    """Derive a schema with replaced weights; bands are untouched."""
    if not overrides:
        return schema
    for criterion_id, weight in overrides.items():
        if schema.criterion(criterion_id) is None:
            raise UnknownCriterion(
                f"weight override targets unknown criterion {criterion_id!r}",
                field=f"weight_overrides.{criterion_id}",
            )
        if weight <= 0:
            raise RangeError(
                f"weight override for {criterion_id} must be positive, got {weight}",
                field=f"weight_overrides.{criterion_id}",
            )
    criteria = tuple(
        replace(criterion, weight=overrides.get(criterion.id, criterion.weight))
        for criterion in schema.criteria
    )
    return replace(schema, criteria=criteria)


def apply_presence_overrides(
    case: CaseFile, overrides: Mapping[str, int]
) -> CaseFile:
    if not overrides:
        return case
    assessed = {a.criterion_id for a in case.assessments}
    for criterion_id, presence in overrides.items():
        _validated_presence(criterion_id, presence)
        if criterion_id not in assessed:
            raise UnknownCriterion(
                f"presence override targets unassessed criterion {criterion_id!r}",
                field=f"presence_overrides.{criterion_id}",
            )
    assessments = tuple(
        replace(a, presence=overrides.get(a.criterion_id, a.presence))
        for a in case.assessments
    )
    return replace(case, assessments=assessments)


def what_if(schema: CriteriaSchema, case: CaseFile, delta: WhatIfDelta) -> WhatIfOutcome:
    """Assess a case before and after a delta; an empty delta changes nothing."""
    before = assess_case(schema, case)
    derived_schema = apply_weight_overrides(schema, delta.weight_overrides)
    derived_case = apply_presence_overrides(case, delta.presence_overrides)
    after = assess_case(derived_schema, derived_case)
    return WhatIfOutcome(
        before=before, after=after, changed_fields=tuple(_diff_fields(before, after))
    )


def _diff_fields(before: AssessmentResult, after: AssessmentResult) -> list[str]:
    changed = []
    if before.breakdown.weighted_total != after.breakdown.weighted_total:
        changed.append("weighted_total")
    b, a = before.classification, after.classification
    if (b is None) != (a is None) or (b is not None and b.band_label != a.band_label):
        changed.append("band_label")
    if (b is None) != (a is None) or (b is not None and b.third != a.third):
        changed.append("third")
    br, ar = before.recommendation, after.recommendation
    if (br is None) != (ar is None) or (
        br is not None
        and br.recommended_multiplier != ar.recommended_multiplier
    ):
        changed.append("recommended_multiplier")
    if (br is None) != (ar is None) or (
        br is not None and br.recommended_amount != ar.recommended_amount
    ):
        changed.append("recommended_amount")
    return changed


def marginal_contributions(schema: CriteriaSchema, case: CaseFile) -> list[MarginalRow]:
    """Per-criterion contribution, exact share of the total, and swing."""
    breakdown = score_case(schema, case)
    if not breakdown.complete:
        raise IncompleteCaseError(
            "marginal contributions require a fully assessed case"
        )
    total = Fraction(breakdown.weighted_total)
    rows = []
    for row in breakdown.rows:
        share = (
            Fraction(row.weighted_contribution) / total if total else Fraction(0)
        )
        rows.append(
            MarginalRow(
                criterion_id=row.criterion_id,
                weighted_contribution=row.weighted_contribution,
                share_of_total=share,
                swing_low=mul(Decimal(1 - row.severity), row.weight),
                swing_high=mul(Decimal(5 - row.severity), row.weight),
            )
        )
    return rows


def weight_sweep(
    schema: CriteriaSchema,
    case: CaseFile,
    criterion_id: str,
    weight_grid: Iterable[Decimal],
) -> list[SweepPoint]:
    """Total and band across a grid of weights for one criterion."""
    if schema.criterion(criterion_id) is None:
        raise UnknownCriterion(
            f"weight sweep targets unknown criterion {criterion_id!r}"
        )
    grid = list(weight_grid)
    if not grid:
        raise RangeError("weight grid must not be empty")
    for weight in grid:
        if weight <= 0:
            raise RangeError(f"weight grid values must be positive, got {weight}")
    points = []
    for weight in grid:
        derived = apply_weight_overrides(schema, {criterion_id: weight})
        result = assess_case(derived, case)
        if result.classification is None:
            raise IncompleteCaseError("weight sweep requires a fully assessed case")
        points.append(
            SweepPoint(
                weight=weight,
                weighted_total=result.breakdown.weighted_total,
                band_label=result.classification.band_label,
            )
        )
    return points


def marginal_rows_to_dicts(rows: list[MarginalRow]) -> list[dict]:
    return [
        {
            "criterion_id": row.criterion_id,
            "weighted_contribution": str(row.weighted_contribution),
            "share_of_total": str(frac_to_decimal(row.share_of_total)),
            "swing_low": str(row.swing_low),
            "swing_high": str(row.swing_high),
        }
        for row in rows
    ]


def sweep_points_to_dicts(points: list[SweepPoint]) -> list[dict]:
    return [
        {
            "weight": str(point.weight),
            "weighted_total": str(point.weighted_total),
            "band_label": point.band_label,
        }
        for point in points
    ]
