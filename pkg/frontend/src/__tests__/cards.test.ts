import { beforeEach, describe, expect, it, vi } from "vitest";

import fixtures from "../testing/fixtures.json";
import type { SimilarResponse, SuggestedResponse } from "../types";
import { renderSimilarCards, renderSuggestedCards } from "../views/cards";

const suggested = fixtures.suggested as unknown as SuggestedResponse;
const similar = fixtures.similar as unknown as SimilarResponse;
const counterfactual = fixtures.counterfactual as unknown as SimilarResponse;

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  container = document.getElementById("root") as HTMLElement;
});

const options = { selectedMetrics: ["accuracy", "fpr"], pinnedId: null, hoveredId: null };
const noop = { onHover: () => {}, onPin: () => {} };

describe("suggested cards", () => {
  it("renders cards in the order served (ranked ascending by the sort metric)", () => {
    renderSuggestedCards(container, suggested.groups, options, noop);
    const cards = container.querySelectorAll(".suggested-card");
    expect(cards).toHaveLength(suggested.groups.length);
    const values = suggested.groups.map((g) => g.metrics.accuracy as number);
    expect(values).toEqual([...values].sort((a, b) => a - b));
  });

  it("shows at most the top 5 dominant features with value and share", () => {
    renderSuggestedCards(container, suggested.groups, options, noop);
    const card = container.querySelector(".suggested-card") as HTMLElement;
    const terms = card.querySelectorAll(".dominant-list dt");
    expect(terms.length).toBeLessThanOrEqual(5);
    const first = suggested.groups[0].dominant_features[0];
    expect(terms[0].textContent).toBe(first.feature);
    expect(card.querySelector(".dominant-list dd")?.textContent).toContain(first.value);
  });

  it("renders a mini histogram for each listed feature", () => {
    renderSuggestedCards(container, suggested.groups, options, noop);
    const card = container.querySelector(".suggested-card") as HTMLElement;
    expect(card.querySelectorAll(".mini-hist").length).toBeGreaterThan(0);
  });

  it("hover and click map to the handlers", () => {
    const onHover = vi.fn();
    const onPin = vi.fn();
    renderSuggestedCards(container, suggested.groups, options, { onHover, onPin });
    const card = container.querySelector(".card") as HTMLElement;
    card.dispatchEvent(new Event("mouseenter"));
    expect(onHover).toHaveBeenCalledWith(suggested.groups[0].id);
    card.dispatchEvent(new Event("click"));
    expect(onPin).toHaveBeenCalledWith(suggested.groups[0].id);
  });

  it("marks the pinned card red and the hovered card blue", () => {
    renderSuggestedCards(
      container,
      suggested.groups,
      { ...options, pinnedId: suggested.groups[0].id, hoveredId: suggested.groups[1].id },
      noop,
    );
    const cards = container.querySelectorAll(".card");
    expect(cards[0].classList.contains("pinned")).toBe(true);
    expect(cards[1].classList.contains("hovered")).toBe(true);
  });
});

describe("similar cards", () => {
  it("divergence mode shows D ascending with the most divergent feature", () => {
    renderSimilarCards(container, similar, options, noop);
    if (similar.mode !== "divergence") throw new Error("fixture mode changed");
    const cards = container.querySelectorAll(".similar-card");
    expect(cards).toHaveLength(similar.neighbors.length);
    const distances = similar.neighbors.map((n) => n.distance);
    expect(distances).toEqual([...distances].sort((a, b) => a - b));
    const texts = [...cards].map((c) => c.querySelector(".divergent-feature")?.textContent);
    similar.neighbors.forEach((n, i) => {
      if (n.counterfactual_delta && n.counterfactual_delta.length > 0) {
        expect(texts[i]).toContain("→");
      } else {
        expect(texts[i]).toContain(n.most_divergent_feature);
      }
    });
  });

  it("counterfactual mode leads with the changed values and metric delta", () => {
    renderSimilarCards(container, counterfactual, options, noop);
    if (counterfactual.mode !== "counterfactual") throw new Error("fixture mode changed");
    const cards = container.querySelectorAll(".counterfactual-card");
    expect(cards).toHaveLength(counterfactual.neighbors.length);
    const first = counterfactual.neighbors[0];
    expect(cards[0].querySelector(".change")?.textContent).toContain(
      `${first.changed[0].feature}: ${first.changed[0].from} → ${first.changed[0].to}`,
    );
    expect(cards[0].querySelector(".delta")?.textContent).toMatch(/Δ|undefined/);
  });
});
