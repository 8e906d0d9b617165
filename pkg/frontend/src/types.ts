/** Typed mirrors of the service JSON contracts.
 *
 * Every numeric quantity crosses the wire as a decimal string and is kept
 * as a string here: the workbench displays what the service computed and
 * never does its own scoring arithmetic.
 */

export type Logic = "direct" | "inverse";

export type Third = "lower" | "middle" | "upper";

export interface ApiErrorBody {
  code: string;
  message: string;
  field?: string;
}

export type Envelope<T> =
  | { ok: true; data: T }
  | { ok: false; error: ApiErrorBody };

export interface CriterionDoc {
  id: string;
  name: string;
  description: string;
  logic: Logic;
  weight: string;
  level_anchors?: Record<string, string>;
}

export interface BandDoc {
  label: string;
  score_lo: string;
  score_hi: string | null;
  multiplier_cap: string;
}

export interface SchemaDoc {
  schema_id: string;
  version: string;
  jurisdiction: string;
  baseline_label: string;
  criteria: CriterionDoc[];
  bands: BandDoc[];
}

export interface MoneyDoc {
  amount: string;
  currency: string;
}

export interface AssessmentDoc {
  criterion_id: string;
  presence: number;
  justification: string;
  evidence_refs: string[];
}

export interface CaseDoc {
  case_id: string;
  facts: string;
  baseline: MoneyDoc;
  assessments: AssessmentDoc[];
  created_at: string;
  updated_at: string;
}

export interface BreakdownRowDoc {
  criterion_id: string;
  presence: number;
  severity: number;
  weight: string;
  weighted_contribution: string;
}

export interface BreakdownDoc {
  rows: BreakdownRowDoc[];
  weighted_total: string;
  complete: boolean;
}

export interface ClassificationDoc {
  band_label: string;
  band_interval: { score_lo: string; score_hi: string | null };
  position_fraction: string;
  third: Third;
  below_scale: boolean;
}

export interface RecommendationDoc {
  multiplier_interval: { lo: string; hi: string };
  third_interval: { lo: string; hi: string };
  recommended_multiplier: string;
  recommended_amount: MoneyDoc;
  band_cap_amount: MoneyDoc;
}

export interface FinalCalculationDoc {
  weighted_total: string;
  band_label: string;
  third: Third;
  below_scale: boolean;
  recommendation: RecommendationDoc;
}

export interface ReportRowDoc {
  criterion_id: string;
  name: string;
  analysis: string;
  presence: number;
  logic: Logic;
  severity: number;
  weight: string;
  contribution: string;
}

export interface ReportDoc {
  case_id: string;
  case_summary: string;
  criteria_rows: ReportRowDoc[];
  final_calculation: FinalCalculationDoc;
  conclusion: string;
  schema_id: string;
  schema_version: string;
  jurisdiction: string;
  baseline_label: string;
  generated_at: string;
}

export interface RenderingsDoc {
  plain: string;
  markdown: string;
}

/** Incomplete cases carry null for everything past the breakdown. */
export interface AssessmentResultDoc {
  breakdown: BreakdownDoc;
  classification: ClassificationDoc | null;
  recommendation: RecommendationDoc | null;
  final_calculation: FinalCalculationDoc | null;
  report?: ReportDoc | null;
  renderings?: RenderingsDoc | null;
}

export type ChangedField =
  | "weighted_total"
  | "band_label"
  | "third"
  | "recommended_multiplier"
  | "recommended_amount";

export interface WhatIfResultDoc {
  before: AssessmentResultDoc;
  after: AssessmentResultDoc;
  changed_fields: ChangedField[];
}

/** Weight overrides stay decimal strings; the service parses them. */
export interface WhatIfDeltaDoc {
  presence_overrides: Record<string, number>;
  weight_overrides: Record<string, string>;
}

export interface SavedCaseDoc {
  record_id: string;
  revision: number;
}

export interface StoredCaseDoc {
  record_id: string;
  revision: number;
  saved_at: string;
  case: CaseDoc;
}

export interface CaseSummaryDoc {
  record_id: string;
  kind: string;
  latest_revision: number;
  saved_at: string;
}

export interface CaseListDoc {
  cases: CaseSummaryDoc[];
}
