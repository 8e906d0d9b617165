"""Shared test utilities: fixture corpus access and case construction."""

from __future__ import annotations

import json
from decimal import Decimal
from pathlib import Path

from soppia import CaseFile, CriterionAssessment, Money, load_case

TESTS_DIR = Path(__file__).resolve().parent
FIXTURE_DIR = TESTS_DIR / "fixtures" / "cases"
GOLDEN_DIR = TESTS_DIR / "goldens"

# Complete fixture cases with frozen expected totals; the parity and
# round-trip suites iterate exactly this list.
CORPUS = (
    ("case-all-ones", "14.6"),
    ("case-all-threes", "43.8"),
    ("case-all-fives", "73.0"),
    ("case-mixed-injury", "48.0"),
    ("case-boundary-33", "33.0"),
    ("case-mild-typical", "23.6"),
    ("case-severe-60", "60.0"),
    ("case-boundary-69", "69.0"),
    ("case-harassment", "50.6"),
    ("case-boundary-51", "51.0"),
)
CORPUS_IDS = tuple(case_id for case_id, _ in CORPUS)

CRITERION_IDS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII")
INVERSE_IDS = frozenset({"III", "VIII", "IX", "X"})


def fixture_path(case_id: str) -> Path:
    return FIXTURE_DIR / f"{case_id}.json"


def fixture_text(case_id: str) -> str:
    return fixture_path(case_id).read_text(encoding="utf-8")


def fixture_dict(case_id: str) -> dict:
    return json.loads(fixture_text(case_id))


def load_fixture(case_id: str) -> CaseFile:
    return load_case(fixture_text(case_id))


def golden_text(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


def make_case(
    presences: dict[str, int],
    *,
    case_id: str = "case-synth",
    baseline: tuple[str, str] = ("3000", "BRL"),
    facts: str = "Synthetic case facts used by engine-level tests.",
) -> CaseFile:
    assessments = tuple(
        CriterionAssessment(
            criterion_id=criterion_id,
            presence=presence,
            justification=f"{criterion_id} assessed at presence {presence}.",
        )
        for criterion_id, presence in presences.items()
    )
    return CaseFile(
        case_id=case_id,
        facts=facts,
        baseline=Money(amount=Decimal(baseline[0]), currency=baseline[1]),
        assessments=assessments,
        created_at="2026-01-01T00:00:00Z",
        updated_at="2026-01-02T00:00:00Z",
    )


def uniform_presences(direct: int, inverse: int) -> dict[str, int]:
    return {
        criterion_id: (inverse if criterion_id in INVERSE_IDS else direct)
        for criterion_id in CRITERION_IDS
    }


def presences_for_severities(severities: dict[str, int]) -> dict[str, int]:
    """Map target severities to the presences that produce them."""
    return {
        criterion_id: (6 - severity if criterion_id in INVERSE_IDS else severity)
        for criterion_id, severity in severities.items()
    }
