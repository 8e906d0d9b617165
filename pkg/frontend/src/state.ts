/** Session state for one workbench tab.
 *
 * Holds the active schema snapshot, the draft case, the latest service
 * results, the pending what-if delta, and dirty flags. Presence values
 * are guarded to 1..5 at the input boundary; everything the panels
 * display comes back from the service, never from local arithmetic.
 */

import type {
  AssessmentDoc,
  AssessmentResultDoc,
  CaseDoc,
  SchemaDoc,
  WhatIfResultDoc,
} from "./types.js";

export interface DraftRow {
  presence: number | null;
  justification: string;
  evidenceRefs: string[];
}

function emptyRow(): DraftRow {
  return { presence: null, justification: "", evidenceRefs: [] };
}

export class SessionState {
  schema: SchemaDoc | null = null;

  caseId = "draft-1";
  facts = "";
  baselineAmount = "3000";
  baselineCurrency = "BRL";
  createdAt: string;
  updatedAt: string;
  rows = new Map<string, DraftRow>();

  latestResult: AssessmentResultDoc | null = null;
  /** True while edits have not yet been confirmed by the service. */
  resultStale = false;
  /** True while the draft differs from the last saved or loaded copy. */
  caseDirty = false;

  whatIfResult: WhatIfResultDoc | null = null;
  whatIfStale = false;

  constructor(draftTimestamp?: string) {
    const stamp = draftTimestamp ?? isoNow();
    this.createdAt = stamp;
    this.updatedAt = stamp;
  }

  loadSchema(schema: SchemaDoc): void {
    this.schema = schema;
    const previous = this.rows;
    this.rows = new Map(
      schema.criteria.map((criterion) => [
        criterion.id,
        previous.get(criterion.id) ?? emptyRow(),
      ]),
    );
  }

  private requireSchema(): SchemaDoc {
    if (this.schema === null) {
      throw new Error("schema not loaded");
    }
    return this.schema;
  }

  row(criterionId: string): DraftRow {
    const row = this.rows.get(criterionId);
    if (row === undefined) {
      throw new Error(`unknown criterion ${criterionId}`);
    }
    return row;
  }

  setPresence(criterionId: string, presence: number | null): void {
    if (
      presence !== null &&
      (!Number.isInteger(presence) || presence < 1 || presence > 5)
    ) {
      throw new RangeError(`presence must be an integer 1..5, got ${presence}`);
    }
    this.row(criterionId).presence = presence;
    this.markEdited();
  }

  setJustification(criterionId: string, justification: string): void {
    this.row(criterionId).justification = justification;
    this.markEdited();
  }

  markEdited(): void {
    this.resultStale = true;
    this.whatIfStale = true;
    this.caseDirty = true;
  }

  criterionCount(): number {
    return this.requireSchema().criteria.length;
  }

  assessedCount(): number {
    let count = 0;
    for (const row of this.rows.values()) {
      if (row.presence !== null) {
        count += 1;
      }
    }
    return count;
  }

  isComplete(): boolean {
    return this.assessedCount() === this.criterionCount();
  }

  /** Serialize the draft; assessments follow schema order, unset rows are skipped. */
  toCaseDoc(): CaseDoc {
    const schema = this.requireSchema();
    const assessments: AssessmentDoc[] = [];
    for (const criterion of schema.criteria) {
      const row = this.row(criterion.id);
      if (row.presence === null) {
        continue;
      }
      assessments.push({
        criterion_id: criterion.id,
        presence: row.presence,
        justification: row.justification,
        evidence_refs: [...row.evidenceRefs],
      });
    }
    return {
      case_id: this.caseId,
      facts: this.facts,
      baseline: { amount: this.baselineAmount, currency: this.baselineCurrency },
      assessments,
      created_at: this.createdAt,
      updated_at: this.updatedAt,
    };
  }

  /** Replace the draft with a loaded or pasted case document. */
  importCase(doc: CaseDoc): void {
    const schema = this.requireSchema();
    this.caseId = doc.case_id;
    this.facts = doc.facts;
    this.baselineAmount = doc.baseline.amount;
    this.baselineCurrency = doc.baseline.currency;
    this.createdAt = doc.created_at;
    this.updatedAt = doc.updated_at;
    this.rows = new Map(schema.criteria.map((c) => [c.id, emptyRow()]));
    for (const assessment of doc.assessments ?? []) {
      const row = this.rows.get(assessment.criterion_id);
      if (row === undefined) {
        throw new Error(`case assesses unknown criterion ${assessment.criterion_id}`);
      }
      if (
        !Number.isInteger(assessment.presence) ||
        assessment.presence < 1 ||
        assessment.presence > 5
      ) {
        throw new RangeError(
          `presence must be an integer 1..5, got ${assessment.presence}`,
        );
      }
      row.presence = assessment.presence;
      row.justification = assessment.justification ?? "";
      row.evidenceRefs = [...(assessment.evidence_refs ?? [])];
    }
    this.latestResult = null;
    this.resultStale = true;
    this.whatIfResult = null;
    this.whatIfStale = true;
    this.caseDirty = false;
  }
}

function isoNow(): string {
  return new Date().toISOString().replace(/\.\d{3}Z$/, "Z");
}
