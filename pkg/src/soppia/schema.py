"""Criteria schemas: the configurable heart of the assessment engine.

A schema names the criteria to be assessed (each with a weight and a
direct or inverse logic), the severity bands totals classify into, and
the baseline the compensation multipliers apply to. The built-in schema
covers the twelve factors of CLT Art. 223-G, the Brazilian labor-law
article governing non-pecuniary damages.

Schemas are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum

from .errors import ParseError, SchemaError
from .numeric import dec, dsum, mul


class Logic(str, Enum):
    """How a criterion's presence level converts into severity.

    DIRECT: more present means more severe. INVERSE: the factor is
    mitigating, so more present means less severe.
    """

    DIRECT = "direct"
    INVERSE = "inverse"


PRESENCE_LEVELS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class CriterionSpec:
    """One assessable criterion within a schema."""

    id: str
    name: str
    description: str
    logic: Logic
    weight: Decimal
    level_anchors: dict[int, str] | None = None


@dataclass(frozen=True)
class ClassificationBand:
    """A half-open severity interval [score_lo, score_hi).

    ``score_hi`` of None means the band is unbounded above.
    ``multiplier_cap`` is the highest baseline multiplier the band allows.
    """

    label: str
    score_lo: Decimal
    score_hi: Decimal | None
    multiplier_cap: Decimal


@dataclass(frozen=True)
class CriteriaSchema:
    schema_id: str
    version: str
    jurisdiction: str
    baseline_label: str
    criteria: tuple[CriterionSpec, ...]
    bands: tuple[ClassificationBand, ...]

    @property
    def min_total(self) -> Decimal:
        """Lowest achievable weighted total (every severity at 1)."""
        return dsum(criterion.weight for criterion in self.criteria)

    @property
    def max_total(self) -> Decimal:
        """Highest achievable weighted total (every severity at 5)."""
        return dsum(mul(Decimal(5), c.weight) for c in self.criteria)

    def criterion(self, criterion_id: str) -> CriterionSpec | None:
        for criterion in self.criteria:
            if criterion.id == criterion_id:
                return criterion
        return None

    def band_index(self, label: str) -> int:
        for index, band in enumerate(self.bands):
            if band.label == label:
                return index
        raise SchemaError(f"no band labelled {label!r}", field="bands")


@dataclass(frozen=True)
class Violation:
    """One schema validation finding."""

    code: str
    field: str
    message: str


def validate_schema(schema: CriteriaSchema) -> list[Violation]:
    """Check every structural invariant; returns all findings, not just the first."""
    violations: list[Violation] = []

    if not schema.criteria:
        violations.append(
            Violation("no_criteria", "criteria", "schema defines no criteria")
        )
    seen_ids: set[str] = set()
    for index, criterion in enumerate(schema.criteria):
        if not criterion.id:
            violations.append(
                Violation("empty_id", f"criteria[{index}].id", "criterion id is empty")
            )
            continue
        if criterion.id in seen_ids:
            violations.append(
                Violation(
                    "duplicate_id",
                    f"criteria[{index}].id",
                    f"duplicate criterion id {criterion.id}",
                )
            )
        seen_ids.add(criterion.id)
        if criterion.weight <= 0:
            violations.append(
                Violation(
                    "nonpositive_weight",
                    f"{criterion.id}.weight",
                    f"{criterion.id}.weight must be positive, got {criterion.weight}",
                )
            )
        if criterion.level_anchors is not None:
            if set(criterion.level_anchors) != set(PRESENCE_LEVELS):
                violations.append(
                    Violation(
                        "bad_level_anchors",
                        f"{criterion.id}.level_anchors",
                        f"{criterion.id}.level_anchors must map exactly levels 1..5",
                    )
                )

    if not schema.bands:
        violations.append(Violation("no_bands", "bands", "schema defines no bands"))
        return violations

    labels: set[str] = set()
    for index, band in enumerate(schema.bands):
        if not band.label:
            violations.append(
                Violation("empty_band_label", f"bands[{index}].label", "band label is empty")
            )
        if band.label in labels:
            violations.append(
                Violation(
                    "duplicate_band_label",
                    f"bands[{index}].label",
                    f"duplicate band label {band.label}",
                )
            )
        labels.add(band.label)
        if band.score_hi is not None and band.score_hi <= band.score_lo:
            violations.append(
                Violation(
                    "empty_band_interval",
                    f"bands[{index}]",
                    f"band {band.label} has an empty interval "
                    f"[{band.score_lo}, {band.score_hi})",
                )
            )
        if band.multiplier_cap <= 0:
            violations.append(
                Violation(
                    "nonpositive_cap",
                    f"bands[{index}].multiplier_cap",
                    f"band {band.label} multiplier cap must be positive",
                )
            )
        if band.score_hi is None and index != len(schema.bands) - 1:
            violations.append(
                Violation(
                    "unbounded_inner_band",
                    f"bands[{index}]",
                    f"band {band.label} is unbounded but is not the last band",
                )
            )

    for index in range(len(schema.bands) - 1):
        upper = schema.bands[index].score_hi
        lower_next = schema.bands[index + 1].score_lo
        if upper is None:
            continue
        if lower_next > upper:
            violations.append(
                Violation(
                    "band_gap",
                    f"bands[{index + 1}].score_lo",
                    f"band gap at {upper}",
                )
            )
        elif lower_next < upper:
            violations.append(
                Violation(
                    "band_overlap",
                    f"bands[{index + 1}].score_lo",
                    f"band overlap at {lower_next}",
                )
            )

    caps = [band.multiplier_cap for band in schema.bands]
    if any(b <= a for a, b in zip(caps, caps[1:])):
        violations.append(
            Violation(
                "caps_not_increasing",
                "bands",
                "multiplier caps must increase strictly from band to band",
            )
        )

    if schema.criteria and not any(v.code == "nonpositive_weight" for v in violations):
        top = schema.bands[-1]
        if top.score_lo > schema.max_total:
            violations.append(
                Violation(
                    "unreachable_top_band",
                    f"bands[{len(schema.bands) - 1}].score_lo",
                    f"unreachable top band: starts at {top.score_lo} but the "
                    f"maximum achievable total is {schema.max_total}",
                )
            )
        if top.score_hi is not None and top.score_hi <= schema.max_total:
            violations.append(
                Violation(
                    "uncovered_totals",
                    f"bands[{len(schema.bands) - 1}].score_hi",
                    f"achievable totals up to {schema.max_total} exceed the last "
                    f"band ceiling {top.score_hi}",
                )
            )

    return violations


def _require(mapping: dict, key: str) -> object:
    if key not in mapping:
        raise ParseError(f"missing key {key!r}", field=key)
    return mapping[key]


def _parse_anchors(raw: object, field: str) -> dict[int, str]:
    if not isinstance(raw, dict):
        raise ParseError("level_anchors must be an object", field=field)
    anchors: dict[int, str] = {}
    for key, text in raw.items():
        try:
            level = int(key)
        except (TypeError, ValueError):
            raise ParseError(f"bad anchor level {key!r}", field=field) from None
        if not isinstance(text, str):
            raise ParseError(f"anchor text for level {key} must be a string", field=field)
        anchors[level] = text
    return anchors


def schema_from_dict(document: dict) -> CriteriaSchema:
    """Build a schema object from a parsed JSON document.

    Shape problems raise ParseError; invariant violations are left to
    ``validate_schema`` so a caller can collect all of them.
    """
    if not isinstance(document, dict):
        raise ParseError("schema document must be a JSON object")
    for key in ("schema_id", "version", "jurisdiction", "baseline_label"):
        value = _require(document, key)
        if not isinstance(value, str) or not value:
            raise ParseError(f"{key} must be a non-empty string", field=key)

    raw_criteria = _require(document, "criteria")
    if not isinstance(raw_criteria, list):
        raise ParseError("criteria must be an array", field="criteria")
    criteria: list[CriterionSpec] = []
    for index, raw in enumerate(raw_criteria):
        where = f"criteria[{index}]"
        if not isinstance(raw, dict):
            raise ParseError("criterion must be an object", field=where)
        for key in ("id", "name", "description"):
            if not isinstance(raw.get(key), str):
                raise ParseError(f"{key} must be a string", field=f"{where}.{key}")
        raw_logic = raw.get("logic")
        if raw_logic not in (Logic.DIRECT.value, Logic.INVERSE.value):
            raise ParseError(
                f"logic must be 'direct' or 'inverse', got {raw_logic!r}",
                field=f"{where}.logic",
            )
        anchors = None
        if raw.get("level_anchors") is not None:
            anchors = _parse_anchors(raw["level_anchors"], f"{where}.level_anchors")
        criteria.append(
            CriterionSpec(
                id=raw["id"],
                name=raw["name"],
                description=raw["description"],
                logic=Logic(raw_logic),
                weight=dec(raw.get("weight"), field=f"{where}.weight"),
                level_anchors=anchors,
            )
        )

    raw_bands = _require(document, "bands")
    if not isinstance(raw_bands, list):
        raise ParseError("bands must be an array", field="bands")
    bands: list[ClassificationBand] = []
    for index, raw in enumerate(raw_bands):
        where = f"bands[{index}]"
        if not isinstance(raw, dict):
            raise ParseError("band must be an object", field=where)
        if not isinstance(raw.get("label"), str):
            raise ParseError("label must be a string", field=f"{where}.label")
        hi_raw = raw.get("score_hi")
        bands.append(
            ClassificationBand(
                label=raw["label"],
                score_lo=dec(raw.get("score_lo"), field=f"{where}.score_lo"),
                score_hi=None if hi_raw is None else dec(hi_raw, field=f"{where}.score_hi"),
                multiplier_cap=dec(raw.get("multiplier_cap"), field=f"{where}.multiplier_cap"),
            )
        )

    return CriteriaSchema(
        schema_id=document["schema_id"],
        version=document["version"],
        jurisdiction=document["jurisdiction"],
        baseline_label=document["baseline_label"],
        criteria=tuple(criteria),
        bands=tuple(bands),
    )


def load_schema(text: str) -> CriteriaSchema:
    """Parse and fully validate a schema document.

    Raises ParseError for malformed documents and SchemaError (naming the
    offending field) for the first invariant violation found.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    schema = schema_from_dict(document)
    violations = validate_schema(schema)
    if violations:
        first = violations[0]
        raise SchemaError(first.message, field=first.field)
    return schema


def load_schema_file(path: str) -> CriteriaSchema:
    with open(path, encoding="utf-8") as handle:
        return load_schema(handle.read())


def schema_to_dict(schema: CriteriaSchema) -> dict:
    """Serialize a schema; decimals become strings, derived totals are omitted."""
    criteria = []
    for criterion in schema.criteria:
        entry: dict = {
            "id": criterion.id,
            "name": criterion.name,
            "description": criterion.description,
            "logic": criterion.logic.value,
            "weight": str(criterion.weight),
        }
        if criterion.level_anchors is not None:
            entry["level_anchors"] = {
                str(level): criterion.level_anchors[level]
                for level in sorted(criterion.level_anchors)
            }
        criteria.append(entry)
    return {
        "schema_id": schema.schema_id,
        "version": schema.version,
        "jurisdiction": schema.jurisdiction,
        "baseline_label": schema.baseline_label,
        "criteria": criteria,
        "bands": [
            {
                "label": band.label,
                "score_lo": str(band.score_lo),
                "score_hi": None if band.score_hi is None else str(band.score_hi),
                "multiplier_cap": str(band.multiplier_cap),
            }
            for band in schema.bands
        ],
    }


# The CLT Art. 223-G criteria catalog. Roman-numeral ids follow the
# statute's own enumeration; the four mitigating factors (III, VIII, IX,
# X) run inverse: the more present they are, the less severe the case.
_CLT_CRITERIA = (
    ("I", "Nature of the legal interest", Logic.DIRECT, "1.5",
     "Importance of the right that was violated, such as life, health, dignity, or honor."),
    ("II", "Intensity of suffering", Logic.DIRECT, "1.5",
     "Degree of physical and psychological pain endured by the victim."),
    ("III", "Possibility of recovery", Logic.INVERSE, "2.5",
     "How likely the victim is to overcome the harm, physically and psychologically."),
    ("IV", "Personal and social repercussions of the damage", Logic.DIRECT, "1.0",
     "Concrete impact on the victim's family, social, and professional life."),
    ("V", "Extent and duration of effects", Logic.DIRECT, "2.0",
     "How long the consequences of the harm persist, from transient to permanent."),
    ("VI", "Conditions under which the offense occurred", Logic.DIRECT, "1.0",
     "Circumstances surrounding the harmful event."),
    ("VII", "Degree of intent or fault", Logic.DIRECT, "1.2",
     "Culpability of the offender: negligence, recklessness, or intent."),
    ("VIII", "Spontaneous retraction", Logic.INVERSE, "0.6",
     "Whether the offender retracted, apologized, or acknowledged the wrongdoing."),
    ("IX", "Effort to mitigate", Logic.INVERSE, "0.8",
     "Concrete actions by the offender to assist the victim after the event."),
    ("X", "Forgiveness", Logic.INVERSE, "1.0",
     "Whether the victim has expressly or tacitly forgiven the offender."),
    ("XI", "Economic situation of the parties", Logic.DIRECT, "1.0",
     "Financial capacity of the offender weighed against the needs of the victim."),
    ("XII", "Publicity of the offense", Logic.DIRECT, "0.5",
     "Extent of public exposure of the harmful event."),
)

_CLT_BANDS = (
    ("Mild", "15", "33", "3"),
    ("Medium", "33", "51", "5"),
    ("Severe", "51", "69", "20"),
    ("Very Severe", "69", None, "50"),
)

_CLT_SCHEMA = CriteriaSchema(
    schema_id="clt-223g",
    version="1.0.0",
    jurisdiction="BR (CLT Art. 223-G)",
    baseline_label="victim's monthly salary",
    criteria=tuple(
        CriterionSpec(id=cid, name=name, description=description, logic=logic, weight=Decimal(weight))
        for cid, name, logic, weight, description in _CLT_CRITERIA
    ),
    bands=tuple(
        ClassificationBand(
            label=label,
            score_lo=Decimal(lo),
            score_hi=None if hi is None else Decimal(hi),
            multiplier_cap=Decimal(cap),
        )
        for label, lo, hi, cap in _CLT_BANDS
    ),
)


def default_clt_schema() -> CriteriaSchema:
    """The built-in CLT Art. 223-G schema; identical on every call."""
    return _CLT_SCHEMA
