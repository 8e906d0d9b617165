"""Bridge between the engine and a text-completion model.

``render_prompt`` produces the structured instruction document sent to a
model; ``parse_response`` reads the model's answer back into assessments.
The response grammar is deliberately machine-checkable:

    CRITERION <id>: score=<1-5> | <justification>

where the score is the *presence* level; the engine alone applies direct
or inverse logic. Totals or bands a model reports are captured for
cross-checking but never trusted: the engine recomputes, and any
disagreement becomes a diagnostic. Parsing never silently repairs a
response; every anomaly is reported.

``complete_via_model`` is an optional, isolated HTTP pass-through; no
other part of the engine performs network I/O.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

import httpx

from .classification import classify_total
from .errors import AuthError, EmptyFactsError, NetworkError, UnparseableError
from .numeric import dsum, mul
from .schema import CriteriaSchema
from .scoring import CaseFile, CriterionAssessment, severity_of

SECTION_HEADINGS = (
    "CASE SUMMARY",
    "CRITERIA ANALYSIS",
    "FINAL CALCULATION",
    "CONCLUSION",
)

_HEADING = re.compile(
    r"^\s*(?:#{1,6}\s*)?(?:\*\*\s*)?(?:\d+\s*[.)]\s*)?"
    r"(CASE SUMMARY|CRITERIA ANALYSIS|FINAL CALCULATION|CONCLUSION)"
    r"\s*(?:\*\*)?\s*:?\s*$"
)
_CRITERION_LINE = re.compile(
    r"^\s*CRITERION\s+(\S+)\s*:\s*score\s*=\s*(\d+)\s*\|\s?(.*)$", re.IGNORECASE
)
_CRITERION_PREFIX = re.compile(r"^\s*CRITERION\b", re.IGNORECASE)
_REPORTED_TOTAL = re.compile(
    r"Total weighted score:\s*\[?([0-9]+(?:\.[0-9]+)?)\]?\s*points?", re.IGNORECASE
)
_REPORTED_BAND = re.compile(r"Classification:\s*\[?([^\[\]\n]+?)\]?\s*$", re.MULTILINE)


@dataclass(frozen=True)
class PromptDocument:
    """The structured prompt, block by block, plus the full rendering."""

    role_block: str
    context_block: str
    instruction_list: tuple[str, ...]
    criteria_table_block: str
    classification_block: str
    output_format_block: str
    rendered: str


@dataclass
class ParsedResponse:
    case_summary: str
    assessments: list[CriterionAssessment]
    reported_total: Decimal | None
    reported_band: str | None
    conclusion: str
    diagnostics: list[str]


@dataclass(frozen=True)
class CompletionEndpoint:
    """Where to send a rendered prompt.

    ``token_env`` names the environment variable holding the bearer
    token, so credentials never live in config files.
    """

    url: str
    token_env: str | None = None
    timeout_seconds: float = 30.0


def render_prompt(schema: CriteriaSchema, facts: str) -> PromptDocument:
    """Render the instruction document for a schema and case facts.

    Deterministic: the same schema and facts produce byte-identical
    output. Raises EmptyFactsError when there is nothing to assess.
    """
    if not facts or not facts.strip():
        raise EmptyFactsError("cannot render a prompt without case facts")

    role_block = (
        "ROLE:\n"
        "You are the Soppia legal assistant. Your task is to perform a "
        "structured analysis of non-pecuniary damages according to the "
        f"assessment criteria in force for {schema.jurisdiction}."
    )
    context_block = (
        "CONTEXT:\n"
        "The user provides the facts of the case to be assessed. "
        "Evaluate only what the facts support.\n"
        "CASE FACTS:\n"
        f"{facts}"
    )
    band_labels = "/".join(band.label for band in schema.bands)
    instruction_list = (
        "Analyze each criterion listed below based on the evidence in the case facts.",
        "For each criterion, rate how strongly the factor is present on a scale "
        "of 1 to 5, stating the logic (direct or inverse) that applies to it; "
        "the inverse criteria mitigate severity and the engine flips them.",
        "Calculate the total weighted score using the established weights.",
        f"Classify the severity of the damage ({band_labels}).",
        "Suggest a compensation range based on the classification.",
        "Generate a justifying report detailing the entire analysis.",
    )
    table_lines = ["CRITERIA AND WEIGHTS:"]
    for criterion in schema.criteria:
        table_lines.append(
            f"{criterion.id} - {criterion.name} & {criterion.weight} & "
            f"{criterion.logic.value.capitalize()}"
        )
    criteria_table_block = "\n".join(table_lines)

    class_lines = ["CLASSIFICATION THRESHOLDS:"]
    for band in schema.bands:
        if band.score_hi is None:
            span = f"{band.score_lo} points and above"
        else:
            span = f"{band.score_lo} to under {band.score_hi} points"
        class_lines.append(
            f"- {span}: {band.label} (up to {band.multiplier_cap}x "
            f"{schema.baseline_label})"
        )
    classification_block = "\n".join(class_lines)

    output_format_block = (
        "STRUCTURED OUTPUT FORMAT:\n"
        "1. CASE SUMMARY\n"
        "Brief description of the facts.\n"
        "2. CRITERIA ANALYSIS\n"
        "Exactly one line per criterion, in this machine-readable form:\n"
        "CRITERION <id>: score=<1-5> | <justification>\n"
        "where <id> is the criterion id from the table above and the score "
        "is the presence level you assigned in instruction 2.\n"
        "3. FINAL CALCULATION\n"
        "Total weighted score: [X] points\n"
        f"Classification: [{band_labels}]\n"
        f"Suggested compensation: [range based on {schema.baseline_label}]\n"
        "4. CONCLUSION\n"
        "Summary of the analysis and final recommendation."
    )

    instructions_block = "INSTRUCTIONS:\n" + "\n".join(
        f"{number}. {text}" for number, text in enumerate(instruction_list, start=1)
    )
    rendered = "\n\n".join(
        (
            role_block,
            context_block,
            instructions_block,
            criteria_table_block,
            classification_block,
            output_format_block,
        )
    )
    return PromptDocument(
        role_block=role_block,
        context_block=context_block,
        instruction_list=instruction_list,
        criteria_table_block=criteria_table_block,
        classification_block=classification_block,
        output_format_block=output_format_block,
        rendered=rendered,
    )


def synthesize_response(schema: CriteriaSchema, case: CaseFile) -> str:
    """Write a grammar-conformant response from a case's own assessments.

    This is the reference implementation of the response grammar; parsing
    its output recovers the assessments exactly. The reported total and
    band are computed by the engine, so they cross-check cleanly.
    """
    lines = ["1. CASE SUMMARY", case.facts or "(no facts recorded)", "", "2. CRITERIA ANALYSIS"]
    for assessment in case.assessments:
        lines.append(
            f"CRITERION {assessment.criterion_id}: score={assessment.presence} "
            f"| {assessment.justification}"
        )
    contributions = []
    for assessment in case.assessments:
        criterion = schema.criterion(assessment.criterion_id)
        if criterion is not None:
            severity = severity_of(assessment.presence, criterion.logic)
            contributions.append(mul(Decimal(severity), criterion.weight))
    total = dsum(contributions)
    lines += ["", "3. FINAL CALCULATION", f"Total weighted score: {total} points"]
    assessed = {a.criterion_id for a in case.assessments}
    if all(criterion.id in assessed for criterion in schema.criteria):
        lines.append(
            f"Classification: {classify_total(schema, total).band_label}"
        )
    lines += [
        "",
        "4. CONCLUSION",
        "Assessment synthesized directly from the recorded case file.",
        "",
    ]
    return "\n".join(lines)


def _split_sections(text: str) -> dict[str, list[str]] | None:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    found = False
    for line in text.splitlines():
        match = _HEADING.match(line)
        if match:
            current = match.group(1)
            sections.setdefault(current, [])
            found = True
            continue
        if current is not None:
            sections[current].append(line)
    return sections if found else None


def parse_response(text: str, schema: CriteriaSchema) -> ParsedResponse:
    """Parse a model response into assessments plus diagnostics.

    Raises UnparseableError only when none of the four section headings
    can be found. Everything else (unknown ids, out-of-range scores,
    missing criteria, total or band mismatches) is reported through
    ``diagnostics`` rather than repaired or dropped silently.
    """
    sections = _split_sections(text)
    if sections is None:
        raise UnparseableError(
            "no section headings found; expected at least one of: "
            + ", ".join(SECTION_HEADINGS)
        )

    diagnostics: list[str] = []
    if "CRITERIA ANALYSIS" in sections:
        criteria_lines = sections["CRITERIA ANALYSIS"]
    else:
        criteria_lines = text.splitlines()
        diagnostics.append(
            "CRITERIA ANALYSIS heading missing; scanned the entire response"
        )

    assessments: list[CriterionAssessment] = []
    order: dict[str, int] = {}
    last_line_accepted = False
    for line in criteria_lines:
        match = _CRITERION_LINE.match(line)
        if match is None:
            if _CRITERION_PREFIX.match(line) and line.strip():
                diagnostics.append(f"malformed criterion line: {line.strip()}")
                last_line_accepted = False
            elif last_line_accepted and line.strip():
                # Continuation of the previous justification.
                last = assessments[-1]
                assessments[-1] = CriterionAssessment(
                    criterion_id=last.criterion_id,
                    presence=last.presence,
                    justification=last.justification + "\n" + line,
                    evidence_refs=last.evidence_refs,
                )
            continue
        criterion_id, raw_score, justification = match.groups()
        last_line_accepted = False
        if schema.criterion(criterion_id) is None:
            diagnostics.append(f"{criterion_id}: unknown criterion")
            continue
        if criterion_id in order:
            diagnostics.append(f"{criterion_id}: duplicate line; keeping the first")
            continue
        score = int(raw_score)
        if score < 1 or score > 5:
            diagnostics.append(f"{criterion_id}: score out of range")
            continue
        order[criterion_id] = len(assessments)
        assessments.append(
            CriterionAssessment(
                criterion_id=criterion_id,
                presence=score,
                justification=justification,
            )
        )
        last_line_accepted = True

    for criterion in schema.criteria:
        if criterion.id not in order:
            diagnostics.append(f"{criterion.id}: not assessed in response")

    tail = "\n".join(sections.get("FINAL CALCULATION", [])) + "\n" + "\n".join(
        sections.get("CONCLUSION", [])
    )
    reported_total: Decimal | None = None
    total_match = _REPORTED_TOTAL.search(tail if tail.strip() else text)
    if total_match:
        try:
            reported_total = Decimal(total_match.group(1))
        except InvalidOperation:
            diagnostics.append(f"unreadable reported total: {total_match.group(1)}")
    reported_band: str | None = None
    band_match = _REPORTED_BAND.search(tail if tail.strip() else text)
    if band_match:
        reported_band = band_match.group(1).strip()

    # Recomputation supremacy: when the response covers the whole schema,
    # recompute and flag any disagreement with what the model reported.
    if all(criterion.id in order for criterion in schema.criteria):
        computed = dsum(
            mul(
                Decimal(severity_of(a.presence, schema.criterion(a.criterion_id).logic)),
                schema.criterion(a.criterion_id).weight,
            )
            for a in assessments
        )
        if reported_total is not None and reported_total != computed:
            diagnostics.append(f"reported total {reported_total} ≠ computed {computed}")
        if reported_band is not None:
            computed_band = classify_total(schema, computed).band_label
            if reported_band.casefold() != computed_band.casefold():
                diagnostics.append(
                    f"reported band {reported_band} ≠ computed {computed_band}"
                )

    return ParsedResponse(
        case_summary="\n".join(sections.get("CASE SUMMARY", [])).strip(),
        assessments=assessments,
        reported_total=reported_total,
        reported_band=reported_band,
        conclusion="\n".join(sections.get("CONCLUSION", [])).strip(),
        diagnostics=diagnostics,
    )


def complete_via_model(prompt: PromptDocument, endpoint: CompletionEndpoint) -> str:
    """POST a rendered prompt to the completion endpoint, returning raw text.

    Pure pass-through: no retries, no response shaping. Network failures
    raise NetworkError, timeouts raise TimeoutError, and credential
    problems raise AuthError, all verbatim.
    """
    headers = {"Content-Type": "application/json"}
    if endpoint.token_env:
        token = os.environ.get(endpoint.token_env)
        if not token:
            raise AuthError(
                f"environment variable {endpoint.token_env} is not set"
            )
        headers["Authorization"] = f"Bearer {token}"
    try:
        response = httpx.post(
            endpoint.url,
            json={"prompt": prompt.rendered},
            headers=headers,
            timeout=endpoint.timeout_seconds,
        )
    except httpx.TimeoutException as exc:
        raise TimeoutError(
            f"completion endpoint timed out after {endpoint.timeout_seconds}s"
        ) from exc
    except httpx.HTTPError as exc:
        raise NetworkError(f"completion endpoint unreachable: {exc}") from exc
    if response.status_code in (401, 403):
        raise AuthError(
            f"completion endpoint rejected credentials (HTTP {response.status_code})"
        )
    if response.status_code >= 400:
        raise NetworkError(
            f"completion endpoint returned HTTP {response.status_code}"
        )
    return response.text


def prompt_to_dict(document: PromptDocument) -> dict:
    return {
        "role_block": document.role_block,
        "context_block": document.context_block,
        "instruction_list": list(document.instruction_list),
        "criteria_table_block": document.criteria_table_block,
        "classification_block": document.classification_block,
        "output_format_block": document.output_format_block,
        "rendered": document.rendered,
    }


def parsed_response_to_dict(parsed: ParsedResponse) -> dict:
    return {
        "case_summary": parsed.case_summary,
        "assessments": [
            {
                "criterion_id": a.criterion_id,
                "presence": a.presence,
                "justification": a.justification,
                "evidence_refs": list(a.evidence_refs),
            }
            for a in parsed.assessments
        ],
        "reported_total": None
        if parsed.reported_total is None
        else str(parsed.reported_total),
        "reported_band": parsed.reported_band,
        "conclusion": parsed.conclusion,
        "diagnostics": list(parsed.diagnostics),
    }
