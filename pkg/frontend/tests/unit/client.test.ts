import { expect, test } from "vitest";

import { ApiError, WorkbenchClient, type FetchLike } from "../../src/client.js";
import type { CaseDoc } from "../../src/types.js";

interface RecordedCall {
  url: string;
  init: RequestInit | undefined;
}

function fetchReturning(
  body: unknown,
  status = 200,
): { fetchFn: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetchFn: FetchLike = (url, init) => {
    calls.push({ url, init });
    return Promise.resolve(
      new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
      }),
    );
  };
  return { fetchFn, calls };
}

function sampleCase(): CaseDoc {
  return {
    case_id: "case-1",
    facts: "facts",
    baseline: { amount: "3000", currency: "BRL" },
    assessments: [],
    created_at: "2026-01-01T00:00:00Z",
    updated_at: "2026-01-02T00:00:00Z",
  };
}

test("unwraps the data side of the envelope", async () => {
  const { fetchFn, calls } = fetchReturning({ ok: true, data: { schema_id: "x" } });
  const client = new WorkbenchClient("http://svc:1234/", fetchFn);
  const schema = await client.getSchema();
  expect(schema).toEqual({ schema_id: "x" });
  expect(calls).toHaveLength(1);
  expect(calls[0]?.url).toBe("http://svc:1234/api/schema");
  expect(calls[0]?.init?.method).toBe("GET");
  expect(calls[0]?.init?.body).toBeUndefined();
});

test("error envelope becomes an ApiError with code, field, and status", async () => {
  const { fetchFn } = fetchReturning(
    {
      ok: false,
      error: { code: "range", message: "presence must be an integer 1..5", field: "assessments[0].presence" },
    },
    422,
  );
  const client = new WorkbenchClient("http://svc", fetchFn);
  const failure = await client.assess(sampleCase()).catch((exc: unknown) => exc);
  expect(failure).toBeInstanceOf(ApiError);
  const apiError = failure as ApiError;
  expect(apiError.code).toBe("range");
  expect(apiError.field).toBe("assessments[0].presence");
  expect(apiError.status).toBe(422);
  expect(apiError.message).toBe("presence must be an integer 1..5");
});

test("assess posts the case wrapped in a case key", async () => {
  const { fetchFn, calls } = fetchReturning({
    ok: true,
    data: { breakdown: { rows: [], weighted_total: "0", complete: false } },
  });
  const client = new WorkbenchClient("http://svc", fetchFn);
  const caseDoc = sampleCase();
  await client.assess(caseDoc);
  expect(calls[0]?.url).toBe("http://svc/api/assess");
  expect(calls[0]?.init?.method).toBe("POST");
  const headers = calls[0]?.init?.headers as Record<string, string>;
  expect(headers["content-type"]).toBe("application/json");
  expect(JSON.parse(String(calls[0]?.init?.body))).toEqual({ case: caseDoc });
});

test("whatIf posts case and delta side by side", async () => {
  const { fetchFn, calls } = fetchReturning({ ok: true, data: {} });
  const client = new WorkbenchClient("http://svc", fetchFn);
  const delta = { presence_overrides: { III: 1 }, weight_overrides: { V: "3.0" } };
  await client.whatIf(sampleCase(), delta);
  const body = JSON.parse(String(calls[0]?.init?.body)) as { delta: unknown };
  expect(body.delta).toEqual(delta);
  expect(calls[0]?.url).toBe("http://svc/api/whatif");
});

test("loadCase url carries the revision query and escapes the id", async () => {
  const { fetchFn, calls } = fetchReturning({ ok: true, data: {} });
  const client = new WorkbenchClient("http://svc", fetchFn);
  await client.loadCase("case one", 2);
  expect(calls[0]?.url).toBe("http://svc/api/cases/case%20one?revision=2");
  await client.loadCase("plain");
  expect(calls[1]?.url).toBe("http://svc/api/cases/plain");
});

test("non-envelope JSON is a protocol error", async () => {
  const { fetchFn } = fetchReturning([1, 2, 3], 200);
  const client = new WorkbenchClient("http://svc", fetchFn);
  const failure = await client.getSchema().catch((exc: unknown) => exc);
  expect(failure).toBeInstanceOf(ApiError);
  expect((failure as ApiError).code).toBe("protocol");
});

test("non-JSON body is a protocol error carrying the HTTP status", async () => {
  const fetchFn: FetchLike = () =>
    Promise.resolve(new Response("<html>boom</html>", { status: 500 }));
  const client = new WorkbenchClient("http://svc", fetchFn);
  const failure = await client.getSchema().catch((exc: unknown) => exc);
  expect((failure as ApiError).code).toBe("protocol");
  expect((failure as ApiError).status).toBe(500);
});

test("a rejected fetch surfaces as a network ApiError", async () => {
  const fetchFn: FetchLike = () => Promise.reject(new Error("connection refused"));
  const client = new WorkbenchClient("http://svc", fetchFn);
  const failure = await client.getSchema().catch((exc: unknown) => exc);
  expect(failure).toBeInstanceOf(ApiError);
  expect((failure as ApiError).code).toBe("network");
  expect((failure as ApiError).message).toContain("connection refused");
});

test("trailing slashes on the base url are tolerated", async () => {
  const { fetchFn, calls } = fetchReturning({ ok: true, data: {} });
  const client = new WorkbenchClient("http://svc:9999///", fetchFn);
  await client.listCases();
  expect(calls[0]?.url).toBe("http://svc:9999/api/cases");
});
