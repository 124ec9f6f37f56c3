/** Feature Distribution View: dataset histograms plus subgroup creation.
 *
 * Every feature gets a histogram of its values with hover counts and
 * checkboxes (whole feature or individual values) that drive the
 * generate-subgroups request. When a group is pinned or hovered, its
 * distribution is overlaid in red/blue; both at once render with opacity.
 */

import { formatCount, HOVERED_COLOR, PINNED_COLOR } from "../format";
import type { FeatureInfo, GroupDetail } from "../types";

export interface FeaturePanelHandlers {
  onGenerate(selection: Record<string, string[]>): void;
}

export interface Overlays {
  pinned: GroupDetail | null;
  hovered: GroupDetail | null;
}

function fractions(counts: number[]): number[] {
  const total = counts.reduce((a, b) => a + b, 0);
  return counts.map((c) => (total > 0 ? c / total : 0));
}

function overlayBar(
  fraction: number,
  maxFraction: number,
  color: string,
  faded: boolean,
): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "overlay-bar";
  bar.style.width = `${maxFraction > 0 ? (100 * fraction) / maxFraction : 0}%`;
  bar.style.background = color;
  bar.style.opacity = faded ? "0.55" : "0.85";
  return bar;
}

export function collectSelection(root: HTMLElement): Record<string, string[]> {
  const selection: Record<string, string[]> = {};
  root.querySelectorAll<HTMLInputElement>("input.value-box:checked").forEach((box) => {
    const feature = box.dataset.feature as string;
    (selection[feature] ??= []).push(box.dataset.value as string);
  });
  return selection;
}

export function renderFeaturePanel(
  container: HTMLElement,
  features: FeatureInfo[],
  overlays: Overlays,
  handlers: FeaturePanelHandlers,
): void {
  container.textContent = "";
  const both = overlays.pinned !== null && overlays.hovered !== null;

  for (const feature of features) {
    const block = document.createElement("details");
    block.className = "feature-block";
    block.open = true;
    block.dataset.feature = feature.name;

    const summary = document.createElement("summary");
    const featureBox = document.createElement("input");
    featureBox.type = "checkbox";
    featureBox.className = "feature-box";
    featureBox.dataset.feature = feature.name;
    featureBox.addEventListener("click", (event) => event.stopPropagation());
    featureBox.addEventListener("change", () => {
      block
        .querySelectorAll<HTMLInputElement>("input.value-box")
        .forEach((box) => (box.checked = featureBox.checked));
    });
    summary.appendChild(featureBox);
    summary.appendChild(document.createTextNode(` ${feature.name}`));
    block.appendChild(summary);

    const datasetFractions = fractions(feature.counts);
    const maxFraction = Math.max(
      ...datasetFractions,
      ...(overlays.pinned ? fractions(overlays.pinned.distributions[feature.name]?.counts ?? []) : [0]),
      ...(overlays.hovered ? fractions(overlays.hovered.distributions[feature.name]?.counts ?? []) : [0]),
    );

    feature.values.forEach((value, i) => {
      const row = document.createElement("div");
      row.className = "value-row";

      const box = document.createElement("input");
      box.type = "checkbox";
      box.className = "value-box";
      box.dataset.feature = feature.name;
      box.dataset.value = value;
      row.appendChild(box);

      const label = document.createElement("span");
      label.className = "value-label";
      label.textContent = value;
      row.appendChild(label);

      const track = document.createElement("div");
      track.className = "bar-track";
      const bar = document.createElement("div");
      bar.className = "dataset-bar";
      bar.style.width = `${maxFraction > 0 ? (100 * datasetFractions[i]) / maxFraction : 0}%`;
      bar.dataset.count = String(feature.counts[i]);
      bar.title = `${value}: ${formatCount(feature.counts[i])} instances`;
      track.appendChild(bar);

      for (const [detail, color] of [
        [overlays.pinned, PINNED_COLOR],
        [overlays.hovered, HOVERED_COLOR],
      ] as const) {
        if (!detail) continue;
        const dist = detail.distributions[feature.name];
        if (!dist) continue;
        const fr = fractions(dist.counts)[dist.values.indexOf(value)] ?? 0;
        const overlay = overlayBar(fr, maxFraction, color, both);
        overlay.title = `${detail.name} · ${value}: ${formatCount(dist.counts[dist.values.indexOf(value)] ?? 0)}`;
        track.appendChild(overlay);
      }
      row.appendChild(track);
      block.appendChild(row);
    });

    container.appendChild(block);
  }

  const generate = document.createElement("button");
  generate.className = "generate-button";
  generate.textContent = "Generate subgroups";
  generate.addEventListener("click", () => {
    const selection = collectSelection(container);
    if (Object.keys(selection).length > 0) handlers.onGenerate(selection);
  });
  container.appendChild(generate);
}
