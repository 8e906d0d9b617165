/** Wires the session state, service client, and views into one page.
 *
 * Edits mark the panels stale and poke a debounced recompute; panels
 * update only after the service confirms. Nothing optimistic is shown.
 */

import type { ApiClient } from "./client.js";
import { Debounced } from "./dom.js";
import { SessionState } from "./state.js";
import type { CaseDoc, WhatIfDeltaDoc } from "./types.js";
import { AssessmentView } from "./views/assessment.js";
import { browserSaveFile, ReportView, type SaveFile } from "./views/report.js";
import { WhatIfView } from "./views/whatif.js";

export interface AppOptions {
  /** Input-settle delay before the live recompute fires. */
  debounceMs?: number;
  saveFile?: SaveFile;
  /** Fixed created/updated stamp for fresh drafts; defaults to now. */
  draftTimestamp?: string;
}

export class WorkbenchApp {
  readonly state: SessionState;

  private readonly root: HTMLElement;
  private readonly client: ApiClient;
  private readonly saveFile: SaveFile;
  private readonly recompute: Debounced;
  private readonly ops = new Set<Promise<void>>();

  private assessmentView!: AssessmentView;
  private whatIfView!: WhatIfView;
  private reportView!: ReportView;

  constructor(root: HTMLElement, client: ApiClient, options: AppOptions = {}) {
    this.root = root;
    this.client = client;
    this.saveFile = options.saveFile ?? browserSaveFile(root.ownerDocument);
    this.state = new SessionState(options.draftTimestamp);
    this.recompute = new Debounced(options.debounceMs ?? 150, () => this.assessNow());
  }

  async start(): Promise<void> {
    const doc = this.root.ownerDocument;
    const schema = await this.client.getSchema();
    this.state.loadSchema(schema);

    this.assessmentView = new AssessmentView(doc, schema, this.state, {
      onEdit: () => this.onEdit(),
      onSave: () => this.track(this.save()),
      onLoad: (recordId) => this.track(this.load(recordId)),
      onImport: (text) => this.importJson(text),
    });
    this.whatIfView = new WhatIfView(doc, schema, {
      onRun: (delta) => this.track(this.runWhatIf(delta)),
    });
    this.reportView = new ReportView(doc, this.saveFile);

    this.root.textContent = "";
    this.root.append(
      this.assessmentView.element,
      this.whatIfView.element,
      this.reportView.element,
    );
    await this.assessNow();
  }

  /** Resolves once no recompute or service call is pending. */
  async whenIdle(): Promise<void> {
    for (;;) {
      await this.recompute.whenIdle();
      if (this.ops.size === 0) {
        return;
      }
      await Promise.allSettled([...this.ops]);
    }
  }

  dispose(): void {
    this.recompute.cancel();
  }

  private onEdit(): void {
    this.assessmentView.showStale();
    this.whatIfView.markStale();
    this.whatIfView.setDraftComplete(this.state.isComplete());
    this.recompute.poke();
  }

  private async assessNow(): Promise<void> {
    const caseDoc = this.state.toCaseDoc();
    try {
      const result = await this.client.assess(caseDoc);
      this.state.latestResult = result;
      this.state.resultStale = false;
      this.assessmentView.showResult(result);
      this.reportView.showResult(result);
      this.whatIfView.setDraftComplete(result.breakdown.complete);
    } catch (exc) {
      this.assessmentView.showError(errorText(exc));
    }
  }

  private async runWhatIf(delta: WhatIfDeltaDoc): Promise<void> {
    try {
      const outcome = await this.client.whatIf(this.state.toCaseDoc(), delta);
      this.state.whatIfResult = outcome;
      this.state.whatIfStale = false;
      this.whatIfView.showComparison(outcome, delta);
    } catch (exc) {
      this.whatIfView.showError(errorText(exc));
    }
  }

  private async save(): Promise<void> {
    try {
      const saved = await this.client.saveCase(this.state.toCaseDoc());
      this.state.caseDirty = false;
      this.assessmentView.setSaveStatus(
        `saved ${saved.record_id} revision ${saved.revision}`,
      );
    } catch (exc) {
      this.assessmentView.setSaveStatus(`save failed: ${errorText(exc)}`);
    }
  }

  private async load(recordId: string): Promise<void> {
    try {
      const stored = await this.client.loadCase(recordId);
      this.state.importCase(stored.case);
      this.assessmentView.syncFromState();
      this.assessmentView.setSaveStatus(
        `loaded ${stored.record_id} revision ${stored.revision}`,
      );
      this.assessmentView.showStale();
      this.whatIfView.markStale();
      this.whatIfView.setDraftComplete(this.state.isComplete());
      this.recompute.poke();
    } catch (exc) {
      this.assessmentView.setSaveStatus(`load failed: ${errorText(exc)}`);
    }
  }

  private importJson(text: string): void {
    try {
      const doc = parseCaseDoc(text);
      this.state.importCase(doc);
      this.assessmentView.syncFromState();
      this.assessmentView.setSaveStatus(`imported ${doc.case_id}`);
      this.assessmentView.showStale();
      this.whatIfView.markStale();
      this.whatIfView.setDraftComplete(this.state.isComplete());
      this.recompute.poke();
    } catch (exc) {
      this.assessmentView.setSaveStatus(`import failed: ${errorText(exc)}`);
    }
  }

  private track(op: Promise<void>): void {
    this.ops.add(op);
    void op.finally(() => {
      this.ops.delete(op);
    });
  }
}

function parseCaseDoc(text: string): CaseDoc {
  const value: unknown = JSON.parse(text);
  if (typeof value !== "object" || value === null) {
    throw new Error("not a case document");
  }
  const doc = value as Partial<CaseDoc>;
  if (typeof doc.case_id !== "string" || typeof doc.facts !== "string") {
    throw new Error("not a case document: case_id and facts required");
  }
  if (
    typeof doc.baseline !== "object" ||
    doc.baseline === null ||
    typeof doc.baseline.amount !== "string" ||
    typeof doc.baseline.currency !== "string"
  ) {
    throw new Error("not a case document: baseline.amount and baseline.currency required");
  }
  if (!Array.isArray(doc.assessments ?? [])) {
    throw new Error("not a case document: assessments must be a list");
  }
  if (typeof doc.created_at !== "string" || typeof doc.updated_at !== "string") {
    throw new Error("not a case document: timestamps required");
  }
  return {
    case_id: doc.case_id,
    facts: doc.facts,
    baseline: doc.baseline,
    assessments: doc.assessments ?? [],
    created_at: doc.created_at,
    updated_at: doc.updated_at,
  };
}

function errorText(exc: unknown): string {
  if (exc instanceof Error) {
    return exc.message;
  }
  return String(exc);
}
