/** Suggested and Similar subgroup cards.
 *
 * Suggested cards show entropy-ranked dominant features with per-feature
 * value histograms; similar cards lead with the counterfactual value change
 * (user-specified pairs) or the most divergent feature (suggested groups).
 * Hovering a card previews it everywhere; clicking pins it.
 */

import { formatMetric, fullPrecision } from "../format";
import type { SimilarResponse, SuggestedGroup } from "../types";

export interface CardHandlers {
  onHover(id: string | null): void;
  onPin(id: string): void;
}

function metricChips(metrics: Record<string, number | null>, names: string[]): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "metric-chips";
  for (const name of names) {
    const chip = document.createElement("span");
    chip.className = "chip";
    chip.textContent = `${name} ${formatMetric(metrics[name] ?? null)}`;
    chip.title = `${name} = ${fullPrecision(metrics[name] ?? null)}`;
    wrap.appendChild(chip);
  }
  return wrap;
}

function baseCard(
  id: string,
  title: string,
  size: number,
  pinnedId: string | null,
  hoveredId: string | null,
  handlers: CardHandlers,
): HTMLElement {
  const card = document.createElement("article");
  card.className = "card";
  card.dataset.groupId = id;
  if (id === pinnedId) card.classList.add("pinned");
  else if (id === hoveredId) card.classList.add("hovered");
  const heading = document.createElement("h4");
  heading.textContent = title;
  card.appendChild(heading);
  const sizeLine = document.createElement("p");
  sizeLine.className = "card-size";
  sizeLine.textContent = `${size} instances`;
  card.appendChild(sizeLine);
  card.addEventListener("mouseenter", () => handlers.onHover(id));
  card.addEventListener("mouseleave", () => handlers.onHover(null));
  card.addEventListener("click", () => handlers.onPin(id));
  return card;
}

export function renderSuggestedCards(
  container: HTMLElement,
  groups: SuggestedGroup[],
  options: { selectedMetrics: string[]; pinnedId: string | null; hoveredId: string | null },
  handlers: CardHandlers,
): void {
  container.textContent = "";
  for (const group of groups) {
    const card = baseCard(
      group.id,
      group.name,
      group.size,
      options.pinnedId,
      options.hoveredId,
      handlers,
    );
    card.classList.add("suggested-card");
    card.appendChild(metricChips(group.metrics, options.selectedMetrics));

    const list = document.createElement("dl");
    list.className = "dominant-list";
    for (const dominant of group.dominant_features.slice(0, 5)) {
      const term = document.createElement("dt");
      term.textContent = dominant.feature;
      const detail = document.createElement("dd");
      detail.textContent = `${dominant.value} (${(100 * dominant.fraction).toFixed(0)}%)`;
      detail.title = `entropy ${dominant.entropy.toFixed(4)} bits`;
      list.appendChild(term);
      list.appendChild(detail);

      const dist = group.distributions[dominant.feature];
      if (dist) {
        const strip = document.createElement("div");
        strip.className = "mini-hist";
        const max = Math.max(...dist.counts, 1);
        dist.values.forEach((value, i) => {
          const bar = document.createElement("div");
          bar.className = "mini-bar";
          bar.style.height = `${(100 * dist.counts[i]) / max}%`;
          bar.title = `${value}: ${dist.counts[i]}`;
          strip.appendChild(bar);
        });
        const dd = document.createElement("dd");
        dd.appendChild(strip);
        list.appendChild(dd);
      }
    }
    card.appendChild(list);
    container.appendChild(card);
  }
}

export function renderSimilarCards(
  container: HTMLElement,
  response: SimilarResponse,
  options: { selectedMetrics: string[]; pinnedId: string | null; hoveredId: string | null },
  handlers: CardHandlers,
): void {
  container.textContent = "";
  if (response.mode === "divergence") {
    for (const neighbor of response.neighbors) {
      const card = baseCard(
        neighbor.group.id,
        neighbor.group.name,
        neighbor.group.size,
        options.pinnedId,
        options.hoveredId,
        handlers,
      );
      card.classList.add("similar-card");
      const distance = document.createElement("p");
      distance.className = "distance";
      distance.textContent = `D = ${neighbor.distance.toFixed(3)}`;
      distance.title = `summed JS divergence = ${neighbor.distance}`;
      card.appendChild(distance);
      const divergent = document.createElement("p");
      divergent.className = "divergent-feature";
      if (neighbor.counterfactual_delta && neighbor.counterfactual_delta.length > 0) {
        divergent.textContent = neighbor.counterfactual_delta
          .map((d) => `${d.feature}: ${d.from} → ${d.to}`)
          .join("; ");
      } else {
        divergent.textContent = `most divergent: ${neighbor.most_divergent_feature}`;
      }
      card.appendChild(divergent);
      card.appendChild(metricChips(neighbor.group.metrics, options.selectedMetrics));
      container.appendChild(card);
    }
  } else {
    for (const neighbor of response.neighbors) {
      const card = baseCard(
        neighbor.group.id,
        neighbor.group.name,
        neighbor.group.size,
        options.pinnedId,
        options.hoveredId,
        handlers,
      );
      card.classList.add("counterfactual-card");
      if (neighbor.empty) card.classList.add("empty-group");
      const change = document.createElement("p");
      change.className = "change";
      change.textContent = neighbor.changed
        .map((c) => `${c.feature}: ${c.from} → ${c.to}`)
        .join("; ");
      card.appendChild(change);
      const delta = document.createElement("p");
      delta.className = "delta";
      delta.textContent =
        neighbor.delta === null
          ? `${response.metric}: undefined`
          : `Δ${response.metric} = ${neighbor.delta.toFixed(3)}`;
      card.appendChild(delta);
      container.appendChild(card);
    }
  }
}
