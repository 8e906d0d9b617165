"""Regenerate the test fixture corpus and the golden report files.

Fixture cases are authored here as literal data; goldens are frozen
renderings of three of them. Run from the repository root:

    python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from soppia import assess_case, default_clt_schema, load_case, render_report_text

ROOT = Path(__file__).resolve().parent.parent
CASES = ROOT / "tests" / "fixtures" / "cases"
GOLDENS = ROOT / "tests" / "goldens"

SCHEMA_ORDER = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII")

INVERSE = {"III", "VIII", "IX", "X"}


def case(case_id, facts, amount, currency, presences, justifications, created, updated,
         skip=()):
    assessments = []
    for cid in SCHEMA_ORDER:
        if cid in skip:
            continue
        assessments.append(
            {
                "criterion_id": cid,
                "presence": presences[cid],
                "justification": justifications[cid],
                "evidence_refs": [],
            }
        )
    return {
        "case_id": case_id,
        "facts": facts,
        "baseline": {"amount": amount, "currency": currency},
        "assessments": assessments,
        "created_at": created,
        "updated_at": updated,
    }


def uniform(presence_direct, presence_inverse):
    return {cid: (presence_inverse if cid in INVERSE else presence_direct) for cid in SCHEMA_ORDER}


J_NEUTRAL = {
    "I": "The violated right is bodily integrity, central to the protected interests.",
    "II": "Medical records describe the degree of pain reported during treatment.",
    "III": "Prognosis indicates the stated likelihood of full recovery.",
    "IV": "Witnesses describe the impact on family routine and workplace standing.",
    "V": "Clinical follow-up fixes how long the effects are expected to persist.",
    "VI": "The event occurred during a routine shift under documented conditions.",
    "VII": "Internal audit records establish the employer's degree of fault.",
    "VIII": "The employer's stance on acknowledging the event is documented.",
    "IX": "Post-accident assistance offered to the victim is on record.",
    "X": "The victim's stance toward the employer after the event is recorded.",
    "XI": "Payroll and balance-sheet excerpts fix both parties' finances.",
    "XII": "The extent of exposure of the event is established by the record.",
}


def tuned(**overrides):
    merged = dict(J_NEUTRAL)
    merged.update(overrides)
    return merged


FIXTURES = [
    case(
        "case-all-ones",
        "Operator suffered a superficial scratch from a misaligned guard rail; "
        "first aid resolved it the same day and the employer immediately fixed "
        "the rail, apologized, and covered a check-up.",
        "3000", "BRL",
        uniform(1, 5),
        tuned(
            I="Only a minor scratch; no lasting interest was compromised.",
            III="Full recovery occurred within hours.",
            VIII="The employer apologized on the spot.",
            IX="A check-up was offered and paid immediately.",
            X="The operator expressly accepted the apology.",
        ),
        "2026-01-10T08:00:00Z", "2026-01-12T16:45:00Z",
    ),
    case(
        "case-all-threes",
        "Machine operator developed moderate repetitive strain injury after "
        "guards were removed from a production line; treatment is ongoing and "
        "the employer has taken partial corrective measures.",
        "3000", "BRL",
        uniform(3, 3),
        {cid: f"Criterion {cid} is present at a moderate level on this record."
         for cid in SCHEMA_ORDER},
        "2026-02-03T09:15:00Z", "2026-02-05T11:20:00Z",
    ),
    case(
        "case-all-fives",
        "Worker lost a hand in an unguarded press the employer had been fined "
        "for twice before; the incident was filmed and circulated widely, and "
        "the employer denies any responsibility.",
        "2500.50", "BRL",
        uniform(5, 1),
        tuned(
            I="Permanent mutilation strikes at physical integrity itself.",
            II="Amputation with chronic phantom pain documented.",
            III="No recovery is possible; the loss is permanent.",
            IV="The victim lost the trade exercised for twenty years.",
            V="Effects are permanent by medical consensus.",
            VI="The press had no guard despite two prior citations.",
            VII="Deliberate removal of the guard to speed production.",
            VIII="The employer denies responsibility to this day.",
            IX="No assistance of any kind was offered.",
            X="The victim expressly refuses any reconciliation.",
            XI="A large group facing a worker with no other income.",
            XII="Footage of the incident circulated on national media.",
        ),
        "2026-02-20T14:00:00Z", "2026-02-27T10:05:00Z",
    ),
    case(
        "case-mixed-injury",
        "Warehouse worker fractured a leg when a loaded shelf collapsed; "
        "recovery is probable after surgery, the employer paid for part of "
        "the treatment, and the case attracted no outside attention.",
        "5000", "BRL",
        {"I": 4, "II": 5, "III": 2, "IV": 3, "V": 4, "VI": 2, "VII": 4,
         "VIII": 5, "IX": 4, "X": 5, "XI": 3, "XII": 1},
        tuned(
            I="A fracture compromises health, a weighty protected interest.",
            II="Post-surgical pain was intense for several weeks.",
            III="Surgeons consider full recovery unlikely within a year.",
            V="Effects should last through a long rehabilitation.",
            VII="The shelf overload had been reported and ignored.",
            VIII="The employer acknowledged the failure in writing.",
            IX="Treatment costs were partly covered by the employer.",
            X="The worker accepted the apology and stayed on the team.",
            XII="The event never left the warehouse floor.",
        ),
        "2026-03-14T07:40:00Z", "2026-03-18T13:10:00Z",
    ),
    case(
        "case-boundary-33",
        "Technician developed a treatable hearing impairment from a poorly "
        "insulated compressor room; the employer replaced the insulation only "
        "after the diagnosis.",
        "3200", "BRL",
        {"I": 1, "II": 1, "III": 1, "IV": 1, "V": 4, "VI": 1, "VII": 3,
         "VIII": 5, "IX": 5, "X": 5, "XI": 1, "XII": 1},
        tuned(
            III="Audiometry shows recovery is not expected.",
            V="The impairment has persisted for two years so far.",
            VII="Noise reports were ignored for months.",
        ),
        "2026-04-02T10:30:00Z", "2026-04-06T09:55:00Z",
    ),
    case(
        "case-mild-typical",
        "Clerk suffered recurring wrist pain from an ill-fitted workstation; "
        "symptoms regressed after the desk was replaced and physiotherapy "
        "was provided by the employer.",
        "2800", "BRL",
        {"I": 1, "II": 4, "III": 5, "IV": 1, "V": 2, "VI": 1, "VII": 2,
         "VIII": 5, "IX": 4, "X": 5, "XI": 1, "XII": 2},
        tuned(
            II="Pain was considerable during the worst weeks.",
            III="Physiotherapy achieved nearly complete recovery.",
            V="Symptoms lasted a few months before regressing.",
            IX="Physiotherapy was arranged, though only after insistence.",
            XII="A few colleagues were aware of the complaints.",
        ),
        "2026-04-21T08:20:00Z", "2026-04-23T17:00:00Z",
    ),
    case(
        "case-severe-60",
        "Electrician suffered severe burns in an arc flash after lockout "
        "procedures were skipped under schedule pressure; scarring is "
        "permanent and the crew's safety complaints were on file.",
        "4100", "EUR",
        {"I": 5, "II": 5, "III": 1, "IV": 4, "V": 5, "VI": 4, "VII": 5,
         "VIII": 4, "IX": 5, "X": 3, "XI": 3, "XII": 1},
        tuned(
            I="Severe burns compromised health and bodily integrity.",
            II="Burn treatment involved months of acute pain.",
            III="Grafts cannot restore the scarred tissue.",
            IV="The victim withdrew from social life after the scarring.",
            V="Scarring and reduced mobility are permanent.",
            VI="Lockout was skipped under explicit schedule pressure.",
            VII="Management ordered live work despite the written procedure.",
            VIII="A written apology came months later, under pressure.",
            IX="The employer funded the full course of grafts.",
            X="The victim declares the matter personally unresolved.",
            XI="A mid-sized contractor against a sole household earner.",
            XII="The incident stayed within the company.",
        ),
        "2026-05-05T06:50:00Z", "2026-05-09T19:30:00Z",
    ),
    case(
        "case-boundary-69",
        "Miner was buried for six hours in a tunnel collapse the employer's "
        "own engineers had flagged as imminent; the rescue was televised and "
        "the company disputes liability.",
        "3600", "BRL",
        {"I": 5, "II": 5, "III": 1, "IV": 5, "V": 3, "VI": 5, "VII": 5,
         "VIII": 1, "IX": 1, "X": 1, "XI": 5, "XII": 5},
        tuned(
            I="Life itself was at risk during the burial.",
            II="Panic attacks persist since the rescue.",
            III="Psychiatric reports doubt any full recovery.",
            IV="The victim cannot return to underground work.",
            V="Symptoms have lasted a year with partial improvement.",
            VI="The tunnel was flagged as unstable by internal reports.",
            VII="Operations continued despite an explicit warning.",
            VIII="Liability is disputed in every filing.",
            IX="No assistance beyond the legal minimum.",
            X="The victim pursues the matter without reservation.",
            XI="A multinational against a single-income family.",
            XII="The rescue ran live on national television.",
        ),
        "2026-05-28T12:00:00Z", "2026-06-01T08:10:00Z",
    ),
    case(
        "case-harassment",
        "Team supervisor publicly ridiculed an assistant for months in front "
        "of colleagues and on the company chat; the assistant left the team "
        "and is under psychological care.",
        "3450", "BRL",
        {"I": 5, "II": 4, "III": 3, "IV": 4, "V": 3, "VI": 4, "VII": 5,
         "VIII": 4, "IX": 3, "X": 4, "XI": 2, "XII": 4},
        tuned(
            I="Dignity and honor were the targets of the conduct.",
            II="Therapy records document significant distress.",
            III="Therapists expect recovery over time.",
            IV="The assistant transferred out and avoids former colleagues.",
            V="Symptoms persist months after the transfers.",
            VI="The conduct was repeated and deliberate in meetings.",
            VII="Messages show the ridicule was intentional.",
            VIII="A public retraction was posted on the same chat.",
            IX="The company offered paid psychological care.",
            X="The assistant accepted the retraction with reservations.",
            XI="Employer of moderate size; victim keeps stable income.",
            XII="The chat messages reached the whole department.",
        ),
        "2026-06-15T15:25:00Z", "2026-06-19T10:40:00Z",
    ),
    case(
        "case-boundary-51",
        "Driver developed chronic spinal damage from years of hauling with a "
        "seat the maintenance log marked for replacement; the employer "
        "acknowledged the backlog but offered no assistance.",
        "3900", "BRL",
        {"I": 5, "II": 5, "III": 1, "IV": 2, "V": 5, "VI": 1, "VII": 5,
         "VIII": 4, "IX": 5, "X": 5, "XI": 1, "XII": 1},
        tuned(
            I="Chronic spinal damage compromises long-term health.",
            II="Daily pain is documented by the treating physician.",
            III="Degeneration at this stage does not regress.",
            IV="The driver still works, with routine adjustments.",
            V="The damage is degenerative and permanent.",
            VII="The flagged seat stayed in service for years.",
            VIII="The employer acknowledged the maintenance backlog.",
            X="The driver bears no personal grudge, seeking only redress.",
        ),
        "2026-07-07T05:45:00Z", "2026-07-11T14:15:00Z",
    ),
    case(
        "case-incomplete",
        "Apprentice reports intimidation by a line manager; the inquiry is "
        "still collecting statements and the publicity factor has not been "
        "assessed yet.",
        "3000", "BRL",
        uniform(3, 3),
        {cid: f"Criterion {cid} provisionally rated pending the inquiry."
         for cid in SCHEMA_ORDER},
        "2026-07-20T09:00:00Z", "2026-07-22T11:30:00Z",
        skip=("XII",),
    ),
]

GOLDEN_CASES = ("case-all-ones", "case-all-threes", "case-mixed-injury")


def main() -> None:
    CASES.mkdir(parents=True, exist_ok=True)
    GOLDENS.mkdir(parents=True, exist_ok=True)
    schema = default_clt_schema()
    for document in FIXTURES:
        path = CASES / f"{document['case_id']}.json"
        path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n",
                        encoding="utf-8")
        print("wrote", path.relative_to(ROOT))
    for case_id in GOLDEN_CASES:
        text = (CASES / f"{case_id}.json").read_text(encoding="utf-8")
        result = assess_case(schema, load_case(text))
        for fmt, suffix in (("markdown", "md"), ("plain", "txt")):
            golden = GOLDENS / f"{case_id}.{suffix}"
            golden.write_text(render_report_text(result.report, fmt), encoding="utf-8")
            print("wrote", golden.relative_to(ROOT))


if __name__ == "__main__":
    main()
