/** Thin fetch client for the assessment service.
 *
 * Unwraps the {ok, data | error} envelope and surfaces failures as
 * ApiError so views can show them inline.
 */

import type {
  AssessmentResultDoc,
  CaseDoc,
  CaseListDoc,
  Envelope,
  SavedCaseDoc,
  SchemaDoc,
  StoredCaseDoc,
  WhatIfDeltaDoc,
  WhatIfResultDoc,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly field: string | undefined;
  readonly status: number;

  constructor(code: string, message: string, status: number, field?: string) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
    this.field = field;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** What the views need from the service; tests substitute fakes. */
export interface ApiClient {
  getSchema(): Promise<SchemaDoc>;
  assess(caseDoc: CaseDoc): Promise<AssessmentResultDoc>;
  whatIf(caseDoc: CaseDoc, delta: WhatIfDeltaDoc): Promise<WhatIfResultDoc>;
  saveCase(caseDoc: CaseDoc): Promise<SavedCaseDoc>;
  loadCase(recordId: string, revision?: number): Promise<StoredCaseDoc>;
  listCases(): Promise<CaseListDoc>;
}

export class WorkbenchClient implements ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  getSchema(): Promise<SchemaDoc> {
    return this.request<SchemaDoc>("GET", "/api/schema");
  }

  assess(caseDoc: CaseDoc): Promise<AssessmentResultDoc> {
    return this.request<AssessmentResultDoc>("POST", "/api/assess", {
      case: caseDoc,
    });
  }

  whatIf(caseDoc: CaseDoc, delta: WhatIfDeltaDoc): Promise<WhatIfResultDoc> {
    return this.request<WhatIfResultDoc>("POST", "/api/whatif", {
      case: caseDoc,
      delta,
    });
  }

  saveCase(caseDoc: CaseDoc): Promise<SavedCaseDoc> {
    return this.request<SavedCaseDoc>("POST", "/api/cases", { case: caseDoc });
  }

  loadCase(recordId: string, revision?: number): Promise<StoredCaseDoc> {
    const query = revision === undefined ? "" : `?revision=${revision}`;
    const path = `/api/cases/${encodeURIComponent(recordId)}${query}`;
    return this.request<StoredCaseDoc>("GET", path);
  }

  listCases(): Promise<CaseListDoc> {
    return this.request<CaseListDoc>("GET", "/api/cases");
  }

  private async request<T>(
    method: string,
    path: string,
    body?: object,
  ): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: body === undefined ? {} : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (exc) {
      throw new ApiError("network", `service unreachable: ${String(exc)}`, 0);
    }
    let envelope: Envelope<T>;
    try {
      envelope = (await response.json()) as Envelope<T>;
    } catch {
      throw new ApiError(
        "protocol",
        `service returned a non-JSON response (HTTP ${response.status})`,
        response.status,
      );
    }
    if (typeof envelope !== "object" || envelope === null || !("ok" in envelope)) {
      throw new ApiError(
        "protocol",
        `service response is not an envelope (HTTP ${response.status})`,
        response.status,
      );
    }
    if (!envelope.ok) {
      const error = envelope.error;
      throw new ApiError(error.code, error.message, response.status, error.field);
    }
    return envelope.data;
  }
}
