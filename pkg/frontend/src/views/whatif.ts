/** What-if comparison: pick overrides, see before/after side by side.
 *
 * Invalid overrides are blocked at the input itself: the control is
 * flagged and the run button stays disabled until it is fixed. Weight
 * overrides travel as decimal strings; the service does the math.
 */

import { el, option } from "../dom.js";
import type {
  ChangedField,
  CriterionDoc,
  SchemaDoc,
  WhatIfDeltaDoc,
  WhatIfResultDoc,
} from "../types.js";

export interface WhatIfHooks {
  onRun(delta: WhatIfDeltaDoc): void;
}

const WEIGHT_PATTERN = /^[0-9]+(\.[0-9]+)?$/;
const ZERO_PATTERN = /^0+(\.0+)?$/;

/** Positive decimal string; the only client-side check is format. */
export function isValidWeightOverride(raw: string): boolean {
  return WEIGHT_PATTERN.test(raw) && !ZERO_PATTERN.test(raw);
}

interface OverrideControls {
  criterion: CriterionDoc;
  presence: HTMLSelectElement;
  weight: HTMLInputElement;
}

export class WhatIfView {
  readonly element: HTMLElement;

  private readonly doc: Document;
  private readonly controls = new Map<string, OverrideControls>();
  private runButton!: HTMLButtonElement;
  private statusLine!: HTMLElement;
  private badge!: HTMLElement;
  private weightWarning!: HTMLElement;
  private changedFieldsLine!: HTMLElement;
  private cells = new Map<string, HTMLElement>();
  private draftComplete = false;

  constructor(doc: Document, schema: SchemaDoc, hooks: WhatIfHooks) {
    this.doc = doc;
    this.element = el(doc, "section", { class: "whatif-view" });
    this.element.append(el(doc, "h2", {}, "What-if comparison"));

    const table = el(doc, "table", { class: "overrides" });
    const head = el(doc, "tr");
    for (const title of ["Criterion", "Presence override", "Weight override"]) {
      head.append(el(doc, "th", {}, title));
    }
    table.append(head);
    for (const criterion of schema.criteria) {
      const row = el(doc, "tr");
      const nameCell = el(doc, "td", {}, `${criterion.id} ${criterion.name}`);

      const presence = el(doc, "select", { "data-testid": `ov-${criterion.id}` });
      presence.append(option(doc, "", "keep"));
      for (const level of [1, 2, 3, 4, 5]) {
        presence.append(option(doc, String(level), String(level)));
      }

      const weight = el(doc, "input", {
        "data-testid": `ovw-${criterion.id}`,
        placeholder: criterion.weight,
      });
      weight.addEventListener("input", () => {
        this.validateWeightInput(weight);
        this.refreshRunState();
      });

      const presenceCell = el(doc, "td");
      presenceCell.append(presence);
      const weightCell = el(doc, "td");
      weightCell.append(weight);
      row.append(nameCell, presenceCell, weightCell);
      table.append(row);
      this.controls.set(criterion.id, { criterion, presence, weight });
    }

    this.runButton = el(doc, "button", { "data-testid": "run-whatif" }, "Compare");
    this.refreshRunState();
    this.runButton.addEventListener("click", () => {
      const delta = this.collectDelta();
      if (delta !== null) {
        hooks.onRun(delta);
      }
    });

    this.statusLine = el(doc, "p", { "data-testid": "whatif-status" }, "no comparison yet");
    this.badge = el(doc, "span", { "data-testid": "whatif-badge", hidden: "" });
    this.weightWarning = el(doc, "p", {
      class: "warning-banner",
      "data-testid": "weight-warning",
      hidden: "",
    });

    this.element.append(table, this.runButton, this.statusLine, this.badge, this.weightWarning);
    this.element.append(this.buildComparisonTable());
  }

  private buildComparisonTable(): HTMLElement {
    const doc = this.doc;
    const table = el(doc, "table", { class: "comparison" });
    const head = el(doc, "tr");
    for (const title of ["", "Before", "After"]) {
      head.append(el(doc, "th", {}, title));
    }
    table.append(head);
    const rows: Array<[string, string]> = [
      ["Weighted total", "total"],
      ["Band", "band"],
      ["Third", "third"],
      ["Recommended multiplier", "multiplier"],
      ["Recommended amount", "amount"],
    ];
    for (const [caption, key] of rows) {
      const row = el(doc, "tr");
      row.append(el(doc, "td", {}, caption));
      const before = el(doc, "td", { "data-testid": `before-${key}` }, "n/a");
      const after = el(doc, "td", { "data-testid": `after-${key}` }, "n/a");
      row.append(before, after);
      table.append(row);
      this.cells.set(`before-${key}`, before);
      this.cells.set(`after-${key}`, after);
    }
    const changedRow = el(doc, "tr");
    changedRow.append(el(doc, "td", {}, "Changed fields"));
    this.changedFieldsLine = el(doc, "td", { "data-testid": "changed-fields", colspan: "2" }, "");
    changedRow.append(this.changedFieldsLine);
    table.append(changedRow);
    return table;
  }

  private validateWeightInput(input: HTMLInputElement): void {
    const raw = input.value;
    const bad = raw !== "" && !isValidWeightOverride(raw);
    input.classList.toggle("invalid", bad);
    if (bad) {
      input.setAttribute("aria-invalid", "true");
    } else {
      input.removeAttribute("aria-invalid");
    }
  }

  private hasInvalidInput(): boolean {
    for (const controls of this.controls.values()) {
      if (controls.weight.classList.contains("invalid")) {
        return true;
      }
    }
    return false;
  }

  private refreshRunState(): void {
    this.runButton.disabled = !this.draftComplete || this.hasInvalidInput();
    if (!this.draftComplete) {
      this.runButton.setAttribute("title", "complete the draft case first");
    } else if (this.hasInvalidInput()) {
      this.runButton.setAttribute("title", "fix the flagged overrides first");
    } else {
      this.runButton.removeAttribute("title");
    }
  }

  setDraftComplete(complete: boolean): void {
    this.draftComplete = complete;
    this.refreshRunState();
  }

  /** Read the override controls; null when an invalid entry blocks the run. */
  collectDelta(): WhatIfDeltaDoc | null {
    if (this.hasInvalidInput()) {
      return null;
    }
    const presenceOverrides: Record<string, number> = {};
    const weightOverrides: Record<string, string> = {};
    for (const [criterionId, controls] of this.controls) {
      if (controls.presence.value !== "") {
        presenceOverrides[criterionId] = Number(controls.presence.value);
      }
      if (controls.weight.value !== "") {
        weightOverrides[criterionId] = controls.weight.value;
      }
    }
    return { presence_overrides: presenceOverrides, weight_overrides: weightOverrides };
  }

  markStale(): void {
    this.statusLine.textContent = "draft changed; rerun the comparison";
  }

  showError(message: string): void {
    this.statusLine.textContent = `error: ${message}`;
  }

  showComparison(outcome: WhatIfResultDoc, deltaSent: WhatIfDeltaDoc): void {
    this.statusLine.textContent = "comparison up to date";

    const fill = (side: "before" | "after", result: WhatIfResultDoc["before"]): void => {
      this.cell(`${side}-total`).textContent = result.breakdown.weighted_total;
      const classification = result.classification;
      this.cell(`${side}-band`).textContent = classification?.band_label ?? "n/a";
      this.cell(`${side}-third`).textContent = classification === null ? "n/a" : classification.third;
      const recommendation = result.recommendation;
      this.cell(`${side}-multiplier`).textContent =
        recommendation?.recommended_multiplier ?? "n/a";
      this.cell(`${side}-amount`).textContent =
        recommendation === null
          ? "n/a"
          : `${recommendation.recommended_amount.currency} ${recommendation.recommended_amount.amount}`;
    };
    fill("before", outcome.before);
    fill("after", outcome.after);

    const highlightByField: Record<ChangedField, string> = {
      weighted_total: "after-total",
      band_label: "after-band",
      third: "after-third",
      recommended_multiplier: "after-multiplier",
      recommended_amount: "after-amount",
    };
    for (const key of Object.values(highlightByField)) {
      this.cell(key).classList.remove("delta-highlight");
    }
    for (const field of outcome.changed_fields) {
      const key = highlightByField[field];
      if (key !== undefined) {
        this.cell(key).classList.add("delta-highlight");
      }
    }
    this.changedFieldsLine.textContent =
      outcome.changed_fields.length === 0 ? "none" : outcome.changed_fields.join(", ");

    if (outcome.changed_fields.length === 0) {
      this.badge.textContent = "no change";
      this.badge.removeAttribute("hidden");
    } else {
      this.badge.textContent = "";
      this.badge.setAttribute("hidden", "");
    }

    if (Object.keys(deltaSent.weight_overrides).length > 0) {
      this.weightWarning.textContent = "modified weights";
      this.weightWarning.removeAttribute("hidden");
    } else {
      this.weightWarning.textContent = "";
      this.weightWarning.setAttribute("hidden", "");
    }
  }

  private cell(key: string): HTMLElement {
    const node = this.cells.get(key);
    if (node === undefined) {
      throw new Error(`unknown comparison cell ${key}`);
    }
    return node;
  }
}
