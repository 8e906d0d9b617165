/** Assessment form: one control row per criterion plus the live result panel.
 *
 * Every number on the panel is a string lifted verbatim from the latest
 * service response. While an edit is awaiting confirmation the panel is
 * flagged stale rather than updated locally.
 */

import { el, option } from "../dom.js";
import type { SessionState } from "../state.js";
import type { AssessmentResultDoc, CriterionDoc, SchemaDoc } from "../types.js";

export interface AssessmentHooks {
  onEdit(): void;
  onSave(): void;
  onLoad(recordId: string): void;
  onImport(text: string): void;
}

interface CriterionControls {
  criterion: CriterionDoc;
  presence: HTMLSelectElement;
  justification: HTMLInputElement;
  severityBadge: HTMLSpanElement;
  severityNote: HTMLSpanElement;
}

export class AssessmentView {
  readonly element: HTMLElement;

  private readonly doc: Document;
  private readonly schema: SchemaDoc;
  private readonly state: SessionState;
  private readonly controls = new Map<string, CriterionControls>();

  private caseIdInput!: HTMLInputElement;
  private factsInput!: HTMLTextAreaElement;
  private baselineAmountInput!: HTMLInputElement;
  private baselineCurrencyInput!: HTMLInputElement;
  private timestampsLine!: HTMLElement;
  private loadIdInput!: HTMLInputElement;
  private importInput!: HTMLTextAreaElement;
  private saveStatusLine!: HTMLElement;

  private statusLine!: HTMLElement;
  private completenessBadge!: HTMLElement;
  private totalValue!: HTMLElement;
  private bandValue!: HTMLElement;
  private thirdValue!: HTMLElement;
  private recommendationValue!: HTMLElement;
  private resultPanel!: HTMLElement;

  constructor(
    doc: Document,
    schema: SchemaDoc,
    state: SessionState,
    hooks: AssessmentHooks,
  ) {
    this.doc = doc;
    this.schema = schema;
    this.state = state;
    this.element = el(doc, "section", { class: "assessment-view" });
    this.element.append(
      this.buildCasePanel(hooks),
      this.buildCriteriaTable(hooks),
      this.buildResultPanel(),
    );
    this.syncFromState();
  }

  private buildCasePanel(hooks: AssessmentHooks): HTMLElement {
    const doc = this.doc;
    const panel = el(doc, "div", { class: "case-panel" });
    panel.append(el(doc, "h2", {}, "Case"));

    this.caseIdInput = el(doc, "input", { "data-testid": "case-id" });
    this.caseIdInput.addEventListener("input", () => {
      this.state.caseId = this.caseIdInput.value;
      this.state.markEdited();
      hooks.onEdit();
    });

    this.factsInput = el(doc, "textarea", { "data-testid": "facts" });
    this.factsInput.addEventListener("input", () => {
      this.state.facts = this.factsInput.value;
      this.state.markEdited();
      hooks.onEdit();
    });

    this.baselineAmountInput = el(doc, "input", {
      "data-testid": "baseline-amount",
    });
    this.baselineAmountInput.addEventListener("input", () => {
      this.state.baselineAmount = this.baselineAmountInput.value;
      this.state.markEdited();
      hooks.onEdit();
    });

    this.baselineCurrencyInput = el(doc, "input", {
      "data-testid": "baseline-currency",
    });
    this.baselineCurrencyInput.addEventListener("input", () => {
      this.state.baselineCurrency = this.baselineCurrencyInput.value;
      this.state.markEdited();
      hooks.onEdit();
    });

    panel.append(
      labelled(doc, "Case id", this.caseIdInput),
      labelled(doc, "Facts", this.factsInput),
      labelled(doc, `Baseline (${this.schema.baseline_label})`, this.baselineAmountInput),
      labelled(doc, "Currency", this.baselineCurrencyInput),
    );

    this.timestampsLine = el(doc, "p", { "data-testid": "timestamps" });
    panel.append(this.timestampsLine);

    const saveButton = el(doc, "button", { "data-testid": "save-case" }, "Save");
    saveButton.addEventListener("click", () => hooks.onSave());

    this.loadIdInput = el(doc, "input", { "data-testid": "load-id" });
    const loadButton = el(doc, "button", { "data-testid": "load-case" }, "Load");
    loadButton.addEventListener("click", () => hooks.onLoad(this.loadIdInput.value));

    this.importInput = el(doc, "textarea", { "data-testid": "import-json" });
    const importButton = el(
      doc,
      "button",
      { "data-testid": "import-case" },
      "Import JSON",
    );
    importButton.addEventListener("click", () => hooks.onImport(this.importInput.value));

    this.saveStatusLine = el(doc, "p", { "data-testid": "save-status" }, "");

    const actions = el(doc, "div", { class: "case-actions" });
    actions.append(saveButton, this.loadIdInput, loadButton, importButton);
    panel.append(actions, labelled(doc, "Paste case JSON", this.importInput), this.saveStatusLine);
    return panel;
  }

  private buildCriteriaTable(hooks: AssessmentHooks): HTMLElement {
    const doc = this.doc;
    const table = el(doc, "table", { class: "criteria" });
    const head = el(doc, "tr");
    for (const title of ["Criterion", "Logic", "Weight", "Presence", "Justification", "Severity"]) {
      head.append(el(doc, "th", {}, title));
    }
    table.append(head);

    for (const criterion of this.schema.criteria) {
      const row = el(doc, "tr", { "data-criterion": criterion.id });

      const nameCell = el(doc, "td");
      nameCell.append(el(doc, "b", {}, criterion.id), doc.createTextNode(` ${criterion.name}`));

      const logicCell = el(doc, "td");
      logicCell.append(
        el(
          doc,
          "span",
          { class: `badge logic-${criterion.logic}`, "data-testid": `logic-${criterion.id}` },
          criterion.logic,
        ),
      );

      const weightCell = el(doc, "td", { "data-testid": `weight-${criterion.id}` }, criterion.weight);

      const presence = el(doc, "select", { "data-testid": `presence-${criterion.id}` });
      presence.append(option(doc, "", "unset"));
      for (const level of [1, 2, 3, 4, 5]) {
        presence.append(option(doc, String(level), String(level)));
      }
      presence.addEventListener("change", () => {
        const raw = presence.value;
        this.state.setPresence(criterion.id, raw === "" ? null : Number(raw));
        hooks.onEdit();
      });

      const justification = el(doc, "input", { "data-testid": `just-${criterion.id}` });
      justification.addEventListener("input", () => {
        this.state.setJustification(criterion.id, justification.value);
        hooks.onEdit();
      });

      const severityBadge = el(doc, "span", {
        class: "badge severity-badge",
        "data-testid": `severity-${criterion.id}`,
      });
      const severityNote = el(doc, "span", { class: "inversion-note" });
      const severityCell = el(doc, "td");
      severityCell.append(severityBadge, severityNote);

      const presenceCell = el(doc, "td");
      presenceCell.append(presence);
      const justificationCell = el(doc, "td");
      justificationCell.append(justification);

      row.append(nameCell, logicCell, weightCell, presenceCell, justificationCell, severityCell);
      table.append(row);
      this.controls.set(criterion.id, {
        criterion,
        presence,
        justification,
        severityBadge,
        severityNote,
      });
    }
    return table;
  }

  private buildResultPanel(): HTMLElement {
    const doc = this.doc;
    this.resultPanel = el(doc, "div", { class: "result-panel", "data-stale": "true" });
    this.statusLine = el(doc, "span", { "data-testid": "result-status" }, "recalculating");
    this.completenessBadge = el(doc, "span", { "data-testid": "completeness" });
    this.totalValue = el(doc, "b", { "data-testid": "total" }, "n/a");
    this.bandValue = el(doc, "b", { "data-testid": "band" }, "n/a");
    this.thirdValue = el(doc, "span", { "data-testid": "third" }, "");
    this.recommendationValue = el(doc, "span", { "data-testid": "recommendation" }, "n/a");

    const totalLine = el(doc, "p");
    totalLine.append(doc.createTextNode("Weighted total: "), this.totalValue, doc.createTextNode(" points"));
    const bandLine = el(doc, "p");
    bandLine.append(doc.createTextNode("Band: "), this.bandValue, doc.createTextNode(" "), this.thirdValue);
    const recommendationLine = el(doc, "p");
    recommendationLine.append(doc.createTextNode("Recommended: "), this.recommendationValue);

    const statusLineWrap = el(doc, "p");
    statusLineWrap.append(this.statusLine, doc.createTextNode(" "), this.completenessBadge);

    this.resultPanel.append(el(doc, "h2", {}, "Live result"), statusLineWrap, totalLine, bandLine, recommendationLine);
    return this.resultPanel;
  }

  /** Push current draft values into the controls after import or load. */
  syncFromState(): void {
    this.caseIdInput.value = this.state.caseId;
    this.factsInput.value = this.state.facts;
    this.baselineAmountInput.value = this.state.baselineAmount;
    this.baselineCurrencyInput.value = this.state.baselineCurrency;
    this.timestampsLine.textContent = `created ${this.state.createdAt}, updated ${this.state.updatedAt}`;
    for (const [criterionId, controls] of this.controls) {
      const row = this.state.row(criterionId);
      controls.presence.value = row.presence === null ? "" : String(row.presence);
      controls.justification.value = row.justification;
    }
    this.refreshCompleteness();
  }

  private refreshCompleteness(): void {
    const assessed = this.state.assessedCount();
    const total = this.state.criterionCount();
    const word = assessed === total ? "complete" : "incomplete";
    this.completenessBadge.textContent = `${word} (${assessed}/${total})`;
  }

  showStale(): void {
    this.resultPanel.setAttribute("data-stale", "true");
    this.statusLine.textContent = "recalculating";
    this.refreshCompleteness();
  }

  showError(message: string): void {
    this.resultPanel.setAttribute("data-stale", "true");
    this.statusLine.textContent = `error: ${message}`;
  }

  showResult(result: AssessmentResultDoc): void {
    this.resultPanel.setAttribute("data-stale", "false");
    this.statusLine.textContent = "live";
    this.refreshCompleteness();

    this.totalValue.textContent = result.breakdown.weighted_total;
    const classification = result.classification;
    if (classification === null) {
      this.bandValue.textContent = "n/a";
      this.thirdValue.textContent = "";
    } else {
      this.bandValue.textContent = classification.band_label;
      const suffix = classification.below_scale ? " (below scale)" : "";
      this.thirdValue.textContent = `${classification.third} third${suffix}`;
    }
    const recommendation = result.recommendation;
    if (recommendation === null) {
      this.recommendationValue.textContent = "n/a";
    } else {
      const amount = recommendation.recommended_amount;
      this.recommendationValue.textContent =
        `${recommendation.recommended_multiplier}x ${this.schema.baseline_label}` +
        ` = ${amount.currency} ${amount.amount}`;
    }

    for (const controls of this.controls.values()) {
      controls.severityBadge.textContent = "";
      controls.severityNote.textContent = "";
    }
    for (const row of result.breakdown.rows) {
      const controls = this.controls.get(row.criterion_id);
      if (controls === undefined) {
        continue;
      }
      controls.severityBadge.textContent = String(row.severity);
      if (controls.criterion.logic === "inverse") {
        controls.severityNote.textContent = ` from presence ${row.presence}`;
      }
    }
  }

  setSaveStatus(text: string): void {
    this.saveStatusLine.textContent = text;
  }
}

function labelled(doc: Document, caption: string, control: HTMLElement): HTMLElement {
  const wrap = el(doc, "label");
  wrap.append(el(doc, "span", {}, `${caption}: `), control);
  return wrap;
}
