/** Display helpers: values render to 2 decimals, full precision on hover. */

import type { MetricValue } from "./types";

export const PINNED_COLOR = "#d64541"; // red across all views
export const HOVERED_COLOR = "#3b6fd4"; // blue across all views

export function formatMetric(value: MetricValue): string {
  return value === null ? "–" : value.toFixed(2);
}

export function fullPrecision(value: MetricValue): string {
  return value === null ? "undefined (zero denominator)" : String(value);
}

export function formatCount(n: number): string {
  return n.toLocaleString("en-US");
}
