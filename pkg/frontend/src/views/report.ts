/** Report panel: the four report sections plus markdown/plain export.
 *
 * Section text and the exported files come straight from the service
 * response; the panel never re-renders the report from raw numbers.
 * Export stays disabled until the case is complete.
 */

import { el } from "../dom.js";
import type { AssessmentResultDoc, ReportDoc } from "../types.js";

export type SaveFile = (filename: string, text: string) => void;

export class ReportView {
  readonly element: HTMLElement;

  private readonly doc: Document;
  private readonly saveFile: SaveFile;
  private sections!: HTMLElement;
  private exportMarkdownButton!: HTMLButtonElement;
  private exportPlainButton!: HTMLButtonElement;
  private current: AssessmentResultDoc | null = null;

  constructor(doc: Document, saveFile: SaveFile) {
    this.doc = doc;
    this.saveFile = saveFile;
    this.element = el(doc, "section", { class: "report-view" });
    this.element.append(el(doc, "h2", {}, "Report"));

    this.sections = el(doc, "div", { "data-testid": "report-sections" });

    this.exportMarkdownButton = el(
      doc,
      "button",
      { "data-testid": "export-md" },
      "Export markdown",
    );
    this.exportMarkdownButton.addEventListener("click", () => this.export("markdown"));
    this.exportPlainButton = el(
      doc,
      "button",
      { "data-testid": "export-plain" },
      "Export plain text",
    );
    this.exportPlainButton.addEventListener("click", () => this.export("plain"));

    const actions = el(doc, "div", { class: "report-actions" });
    actions.append(this.exportMarkdownButton, this.exportPlainButton);
    this.element.append(actions, this.sections);
    this.showResult(null);
  }

  showResult(result: AssessmentResultDoc | null): void {
    this.current = result;
    const report = result?.report ?? null;
    const exportable = report !== null && (result?.renderings ?? null) !== null;
    for (const button of [this.exportMarkdownButton, this.exportPlainButton]) {
      button.disabled = !exportable;
      if (exportable) {
        button.removeAttribute("title");
      } else {
        button.setAttribute("title", "complete all criteria to export");
      }
    }
    this.sections.textContent = "";
    if (report === null) {
      this.sections.append(
        el(this.doc, "p", { class: "placeholder" }, "complete all criteria to view the report"),
      );
      return;
    }
    this.renderSections(report);
  }

  private renderSections(report: ReportDoc): void {
    const doc = this.doc;

    this.sections.append(el(doc, "h3", {}, "1. CASE SUMMARY"));
    this.sections.append(el(doc, "p", {}, report.case_summary));

    this.sections.append(el(doc, "h3", {}, "2. CRITERION-BY-CRITERION ANALYSIS"));
    const table = el(doc, "table", { class: "report-rows" });
    const head = el(doc, "tr");
    for (const title of ["Criterion", "Presence", "Logic", "Severity", "Weight", "Contribution", "Analysis"]) {
      head.append(el(doc, "th", {}, title));
    }
    table.append(head);
    for (const row of report.criteria_rows) {
      const tr = el(doc, "tr");
      tr.append(
        el(doc, "td", {}, `${row.criterion_id} ${row.name}`),
        el(doc, "td", {}, String(row.presence)),
        el(doc, "td", {}, row.logic),
        el(doc, "td", {}, String(row.severity)),
        el(doc, "td", {}, row.weight),
        el(doc, "td", {}, row.contribution),
        el(doc, "td", {}, row.analysis),
      );
      table.append(tr);
    }
    this.sections.append(table);

    this.sections.append(el(doc, "h3", {}, "3. FINAL CALCULATION"));
    const final = report.final_calculation;
    const finalList = el(doc, "ul");
    const belowScale = final.below_scale ? " (below scale)" : "";
    finalList.append(
      el(doc, "li", {}, `Total weighted score: ${final.weighted_total} points`),
      el(doc, "li", {}, `Severity band: ${final.band_label}, ${final.third} third${belowScale}`),
      el(
        doc,
        "li",
        {},
        `Recommended award: ${final.recommendation.recommended_multiplier}x ` +
          `${report.baseline_label} = ${final.recommendation.recommended_amount.currency} ` +
          final.recommendation.recommended_amount.amount,
      ),
    );
    this.sections.append(finalList);

    this.sections.append(el(doc, "h3", {}, "4. CONCLUSION"));
    this.sections.append(el(doc, "p", {}, report.conclusion));
  }

  private export(kind: "markdown" | "plain"): void {
    const result = this.current;
    const renderings = result?.renderings ?? null;
    const report = result?.report ?? null;
    if (renderings === null || report === null) {
      return;
    }
    if (kind === "markdown") {
      this.saveFile(`${report.case_id}.md`, renderings.markdown);
    } else {
      this.saveFile(`${report.case_id}.txt`, renderings.plain);
    }
  }
}

/** Default browser download: a Blob behind a temporary anchor click. */
export function browserSaveFile(doc: Document) {
  return (filename: string, text: string): void => {
    const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
    const url = URL.createObjectURL(blob);
    const anchor = doc.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    doc.body.append(anchor);
    anchor.click();
    anchor.remove();
    URL.revokeObjectURL(url);
  };
}
