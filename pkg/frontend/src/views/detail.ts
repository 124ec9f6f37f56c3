/** Detailed Comparison View: pinned (red) vs hovered (blue).
 *
 * Three parts: a grouped bar chart of the selected metrics, ground-truth
 * label balance bars, and a feature table (constraints for predicate
 * groups, top-5 dominant values for suggested ones), plus the export button.
 */

import { formatMetric, fullPrecision, HOVERED_COLOR, PINNED_COLOR } from "../format";
import type { DetailResponse, GroupDetail, MetricValue } from "../types";

export interface DetailHandlers {
  onExport(): void;
}

function bar(value: MetricValue, color: string, label: string): HTMLElement {
  const track = document.createElement("div");
  track.className = "metric-bar-track";
  const fill = document.createElement("div");
  fill.className = "metric-bar";
  fill.style.background = color;
  fill.style.width = value === null ? "0%" : `${100 * value}%`;
  if (value === null) fill.classList.add("undefined-value");
  fill.title = `${label}: ${fullPrecision(value)}`;
  const text = document.createElement("span");
  text.className = "metric-bar-value";
  text.textContent = formatMetric(value);
  track.appendChild(fill);
  track.appendChild(text);
  return track;
}

function featureTable(group: GroupDetail): HTMLElement {
  const table = document.createElement("table");
  table.className = "feature-table";
  const body = document.createElement("tbody");
  if (group.kind === "predicate" && group.constraints) {
    for (const [feature, value] of Object.entries(group.constraints)) {
      const row = document.createElement("tr");
      row.innerHTML = `<td>${feature}</td><td>${value}</td>`;
      body.appendChild(row);
    }
  } else if (group.dominant_features) {
    for (const dominant of group.dominant_features.slice(0, 5)) {
      const row = document.createElement("tr");
      row.innerHTML = `<td>${dominant.feature}</td><td>${dominant.value} (${(
        100 * dominant.fraction
      ).toFixed(0)}%)</td>`;
      body.appendChild(row);
    }
  }
  table.appendChild(body);
  return table;
}

export function renderDetail(
  container: HTMLElement,
  detail: DetailResponse,
  selectedMetrics: string[],
  handlers: DetailHandlers,
): void {
  container.textContent = "";
  const { pinned, hovered } = detail;
  if (!pinned && !hovered) {
    const hint = document.createElement("p");
    hint.className = "detail-hint";
    hint.textContent = "Pin or hover a subgroup to inspect it.";
    container.appendChild(hint);
    return;
  }

  const legend = document.createElement("p");
  legend.className = "detail-legend";
  for (const [group, color, role] of [
    [pinned, PINNED_COLOR, "pinned"],
    [hovered, HOVERED_COLOR, "hovered"],
  ] as const) {
    if (!group) continue;
    const tag = document.createElement("span");
    tag.className = `legend-tag ${role}`;
    tag.style.color = color;
    tag.textContent = `${role}: ${group.name} (n=${group.size})`;
    legend.appendChild(tag);
  }
  container.appendChild(legend);

  const chart = document.createElement("div");
  chart.className = "grouped-bars";
  for (const metric of selectedMetrics) {
    const row = document.createElement("div");
    row.className = "metric-row";
    row.dataset.metric = metric;
    const name = document.createElement("span");
    name.className = "metric-name";
    const average = detail.dataset_averages[metric];
    name.textContent = metric;
    name.title = `dataset average: ${fullPrecision(average ?? null)}`;
    row.appendChild(name);
    if (pinned) row.appendChild(bar(pinned.metrics[metric] ?? null, PINNED_COLOR, `${pinned.name} ${metric}`));
    if (hovered) row.appendChild(bar(hovered.metrics[metric] ?? null, HOVERED_COLOR, `${hovered.name} ${metric}`));
    chart.appendChild(row);
  }
  container.appendChild(chart);

  const balance = document.createElement("div");
  balance.className = "label-balance";
  const heading = document.createElement("h4");
  heading.textContent = "ground-truth label balance (positive share)";
  balance.appendChild(heading);
  if (pinned) balance.appendChild(bar(pinned.label_balance, PINNED_COLOR, `${pinned.name} base rate`));
  if (hovered) balance.appendChild(bar(hovered.label_balance, HOVERED_COLOR, `${hovered.name} base rate`));
  container.appendChild(balance);

  const tables = document.createElement("div");
  tables.className = "feature-tables";
  if (pinned) tables.appendChild(featureTable(pinned));
  if (hovered) tables.appendChild(featureTable(hovered));
  container.appendChild(tables);

  const exportButton = document.createElement("button");
  exportButton.className = "export-button";
  exportButton.textContent = "Export selection (JSON)";
  exportButton.addEventListener("click", () => handlers.onExport());
  container.appendChild(exportButton);
}
