import { beforeEach, expect, test } from "vitest";

import { WorkbenchApp } from "../../src/app.js";
import {
  deferred,
  FakeClient,
  makeResult,
  q,
  setInput,
  setSelect,
} from "./fakes.js";
import type { AssessmentResultDoc } from "../../src/types.js";

beforeEach(() => {
  document.body.innerHTML = "";
});

async function mountApp(client: FakeClient, debounceMs = 5) {
  const root = document.createElement("div");
  document.body.append(root);
  const app = new WorkbenchApp(root, client, {
    debounceMs,
    saveFile: () => undefined,
    draftTimestamp: "2026-01-01T00:00:00Z",
  });
  await app.start();
  return { root, app };
}

test("panel numbers are echoed verbatim from the service response", async () => {
  const client = new FakeClient();
  client.onAssess = () =>
    Promise.resolve(
      makeResult({
        complete: true,
        total: "99.9",
        band: "Atlantis",
        third: "upper",
        multiplier: "7.77",
        amount: "424242.42",
        currency: "XTS",
      }),
    );
  const { root } = await mountApp(client);
  expect(q(root, "total").textContent).toBe("99.9");
  expect(q(root, "band").textContent).toBe("Atlantis");
  expect(q(root, "third").textContent).toBe("upper third");
  expect(q(root, "recommendation").textContent).toBe(
    "7.77x monthly salary = XTS 424242.42",
  );
  expect(q(root, "result-status").textContent).toBe("live");
});

test("presence selectors offer exactly unset plus 1..5", async () => {
  const client = new FakeClient();
  const { root } = await mountApp(client);
  const select = q<HTMLSelectElement>(root, "presence-A");
  const values = [...select.querySelectorAll("option")].map((o) => o.value);
  expect(values).toEqual(["", "1", "2", "3", "4", "5"]);
});

test("edits refresh the completeness indicator and send the draft", async () => {
  const client = new FakeClient();
  const { root, app } = await mountApp(client);
  expect(q(root, "completeness").textContent).toBe("incomplete (0/3)");

  setSelect(root, "presence-A", "4");
  setInput(root, "just-A", "strong harm");
  setSelect(root, "presence-B", "1");
  await app.whenIdle();

  expect(q(root, "completeness").textContent).toBe("incomplete (2/3)");
  const lastCall = client.assessCalls.at(-1);
  expect(lastCall?.assessments).toEqual([
    { criterion_id: "A", presence: 4, justification: "strong harm", evidence_refs: [] },
    { criterion_id: "B", presence: 1, justification: "", evidence_refs: [] },
  ]);
});

test("incomplete responses leave band and recommendation unclassified", async () => {
  const client = new FakeClient();
  client.onAssess = () => Promise.resolve(makeResult({ total: "8.0", complete: false }));
  const { root } = await mountApp(client);
  expect(q(root, "total").textContent).toBe("8.0");
  expect(q(root, "band").textContent).toBe("n/a");
  expect(q(root, "recommendation").textContent).toBe("n/a");
});

test("the panel is flagged stale between an edit and the confirmation", async () => {
  const client = new FakeClient();
  const first = makeResult({ total: "0", complete: false });
  client.onAssess = () => Promise.resolve(first);
  const { root, app } = await mountApp(client, 1);

  const gate = deferred<AssessmentResultDoc>();
  client.onAssess = () => gate.promise;
  setSelect(root, "presence-A", "2");
  expect(q(root, "result-status").textContent).toBe("recalculating");
  expect(q(root, "total").closest(".result-panel")?.getAttribute("data-stale")).toBe(
    "true",
  );

  gate.resolve(makeResult({ total: "4.0", complete: false }));
  await app.whenIdle();
  expect(q(root, "result-status").textContent).toBe("live");
  expect(q(root, "total").textContent).toBe("4.0");
  expect(q(root, "total").closest(".result-panel")?.getAttribute("data-stale")).toBe(
    "false",
  );
});

test("service failures surface inline and keep the panel flagged", async () => {
  const client = new FakeClient();
  const { root, app } = await mountApp(client);
  client.onAssess = () => Promise.reject(new Error("baseline.amount is not a decimal"));
  setInput(root, "baseline-amount", "not-a-number");
  await app.whenIdle();
  expect(q(root, "result-status").textContent).toBe(
    "error: baseline.amount is not a decimal",
  );
  expect(q(root, "total").closest(".result-panel")?.getAttribute("data-stale")).toBe(
    "true",
  );
});

test("severity badges come from response rows; inverse rows show the source presence", async () => {
  const client = new FakeClient();
  client.onAssess = () =>
    Promise.resolve(
      makeResult({
        total: "7.0",
        complete: false,
        rows: [
          {
            criterion_id: "A",
            presence: 1,
            severity: 1,
            weight: "2.0",
            weighted_contribution: "2.0",
          },
          {
            criterion_id: "B",
            presence: 1,
            severity: 5,
            weight: "1.0",
            weighted_contribution: "5.0",
          },
        ],
      }),
    );
  const { root, app } = await mountApp(client);
  setSelect(root, "presence-A", "1");
  setSelect(root, "presence-B", "1");
  await app.whenIdle();
  expect(q(root, "severity-A").textContent).toBe("1");
  expect(q(root, "severity-B").textContent).toBe("5");
  const badgeCell = q(root, "severity-B").parentElement;
  expect(badgeCell?.textContent).toContain("from presence 1");
  expect(q(root, "severity-A").parentElement?.textContent).not.toContain("from presence");
  expect(q(root, "severity-C").textContent).toBe("");
});

test("import json populates the form and save posts the same draft back", async () => {
  const client = new FakeClient();
  client.onSave = () => Promise.resolve({ record_id: "case-7", revision: 3 });
  const { root, app } = await mountApp(client);
  const doc = {
    case_id: "case-7",
    facts: "pasted facts",
    baseline: { amount: "2500.50", currency: "EUR" },
    assessments: [
      { criterion_id: "B", presence: 4, justification: "note", evidence_refs: ["x"] },
    ],
    created_at: "2026-02-01T08:00:00Z",
    updated_at: "2026-02-02T09:30:00Z",
  };
  setInput(root, "import-json", JSON.stringify(doc));
  q<HTMLButtonElement>(root, "import-case").click();
  await app.whenIdle();

  expect(q<HTMLInputElement>(root, "case-id").value).toBe("case-7");
  expect(q<HTMLInputElement>(root, "baseline-amount").value).toBe("2500.50");
  expect(q<HTMLSelectElement>(root, "presence-B").value).toBe("4");
  expect(q<HTMLInputElement>(root, "just-B").value).toBe("note");
  expect(q(root, "timestamps").textContent).toBe(
    "created 2026-02-01T08:00:00Z, updated 2026-02-02T09:30:00Z",
  );

  q<HTMLButtonElement>(root, "save-case").click();
  await app.whenIdle();
  expect(client.saveCalls.at(-1)).toEqual(doc);
  expect(q(root, "save-status").textContent).toBe("saved case-7 revision 3");
});

test("a malformed paste reports the failure without clearing the draft", async () => {
  const client = new FakeClient();
  const { root, app } = await mountApp(client);
  setSelect(root, "presence-A", "3");
  setInput(root, "import-json", "{not json");
  q<HTMLButtonElement>(root, "import-case").click();
  await app.whenIdle();
  expect(q(root, "save-status").textContent).toContain("import failed:");
  expect(q<HTMLSelectElement>(root, "presence-A").value).toBe("3");
});
