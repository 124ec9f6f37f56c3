/** Payload shapes of the fairaudit HTTP API. Metric values are null when undefined. */

export type MetricValue = number | null;

export interface FeatureInfo {
  name: string;
  values: string[];
  counts: number[];
}

export interface FeaturesResponse {
  row_count: number;
  dropped_rows: number;
  features: FeatureInfo[];
}

export interface UploadResponse {
  dataset_id: string;
  row_count: number;
  dropped_rows: number;
  features: { name: string; values: string[] }[];
  metrics: string[];
}

export interface GroupSummary {
  id: string;
  name: string;
  kind: "predicate" | "cluster";
  size: number;
  empty: boolean;
  metrics: Record<string, MetricValue>;
}

export interface DominantFeature {
  feature: string;
  value: string;
  fraction: number;
  entropy: number;
}

export interface Distributions {
  [feature: string]: { values: string[]; counts: number[] };
}

export interface SuggestedGroup extends GroupSummary {
  dominant_features: DominantFeature[];
  distributions: Distributions;
}

export interface GroupsResponse {
  groups: GroupSummary[];
  dataset_averages: Record<string, MetricValue>;
}

export interface SuggestedResponse {
  groups: SuggestedGroup[];
  sort: string;
  dataset_averages: Record<string, MetricValue>;
}

export interface GroupDetail {
  id: string;
  kind: "predicate" | "cluster";
  name: string;
  size: number;
  confusion: { tp: number; tn: number; fp: number; fn: number };
  metrics: Record<string, MetricValue>;
  label_balance: number | null;
  constraints?: Record<string, string>;
  dominant_features?: DominantFeature[];
  distributions: Distributions;
}

export interface DetailResponse {
  dataset_averages: Record<string, MetricValue>;
  pinned: GroupDetail | null;
  hovered: GroupDetail | null;
}

export interface DivergenceNeighbor {
  group: GroupSummary;
  distance: number;
  per_feature: Record<string, number>;
  most_divergent_feature: string;
  counterfactual_delta: { feature: string; from: string; to: string }[] | null;
}

export interface CounterfactualNeighbor {
  group: GroupSummary;
  changed: { feature: string; from: string; to: string }[];
  metric_value: MetricValue;
  delta: number | null;
  empty: boolean;
}

export type SimilarResponse =
  | { mode: "divergence"; neighbors: DivergenceNeighbor[] }
  | { mode: "counterfactual"; metric: string; neighbors: CounterfactualNeighbor[] };

export interface ExportDocument {
  tool_version: string;
  dataset_id: string;
  groups: {
    id: string;
    kind: "predicate" | "cluster";
    name: string;
    size: number;
    confusion: { tp: number; tn: number; fp: number; fn: number };
    metrics: Record<string, MetricValue>;
    label_balance: number | null;
    constraints?: Record<string, string>;
    dominant_features?: DominantFeature[];
  }[];
}

/** Validate an export payload against the documented schema; returns problems. */
export function validateExportDocument(doc: unknown): string[] {
  const problems: string[] = [];
  const d = doc as Partial<ExportDocument>;
  if (!d || typeof d !== "object") return ["document is not an object"];
  if (typeof d.tool_version !== "string") problems.push("tool_version missing");
  if (typeof d.dataset_id !== "string") problems.push("dataset_id missing");
  if (!Array.isArray(d.groups)) {
    problems.push("groups missing");
    return problems;
  }
  d.groups.forEach((g, i) => {
    const at = `groups[${i}]`;
    if (typeof g.id !== "string") problems.push(`${at}.id`);
    if (g.kind !== "predicate" && g.kind !== "cluster") problems.push(`${at}.kind`);
    if (typeof g.size !== "number") problems.push(`${at}.size`);
    const c = g.confusion;
    if (!c || [c.tp, c.tn, c.fp, c.fn].some((v) => typeof v !== "number")) {
      problems.push(`${at}.confusion`);
    } else if (c.tp + c.tn + c.fp + c.fn !== g.size) {
      problems.push(`${at}.confusion does not sum to size`);
    }
    if (!g.metrics || typeof g.metrics !== "object") {
      problems.push(`${at}.metrics`);
    } else {
      for (const [k, v] of Object.entries(g.metrics)) {
        if (v !== null && typeof v !== "number") problems.push(`${at}.metrics.${k}`);
      }
    }
    if (g.label_balance !== null && typeof g.label_balance !== "number") {
      problems.push(`${at}.label_balance`);
    }
    if (g.kind === "predicate" && !g.constraints) problems.push(`${at}.constraints missing`);
    if (g.kind === "cluster" && !g.dominant_features) {
      problems.push(`${at}.dominant_features missing`);
    }
  });
  return problems;
}
