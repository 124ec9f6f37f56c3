/** Application wiring: upload form -> four coordinated views.
 *
 * State flows one way: user interactions mutate the Store, subscribers
 * re-fetch from the API where needed and re-render. All numbers on screen
 * come from service payloads.
 */

import { Client, latestOnly, StaleResponse } from "./api";
import { Store } from "./state";
import type { DetailResponse, FeaturesResponse, GroupsResponse, SuggestedResponse } from "./types";
import { validateExportDocument } from "./types";
import { renderSimilarCards, renderSuggestedCards } from "./views/cards";
import { renderDetail } from "./views/detail";
import { renderFeaturePanel } from "./views/featurePanel";
import { renderOverview } from "./views/overview";

const client = new Client("");

interface AppData {
  datasetId: string;
  metrics: string[];
  features: FeaturesResponse | null;
  groups: GroupsResponse;
  suggested: SuggestedResponse | null;
  detail: DetailResponse | null;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function ignoreStale(error: unknown): void {
  if (!(error instanceof StaleResponse)) {
    console.error(error);
    el<HTMLElement>("status").textContent = String(error);
  }
}

export function startApp(): void {
  const uploadForm = el<HTMLFormElement>("upload-form");

  uploadForm.addEventListener("submit", async (event) => {
    event.preventDefault();
    const fileInput = el<HTMLInputElement>("file-input");
    const file = fileInput.files?.[0];
    if (!file) return;
    const field = (name: string) => el<HTMLInputElement>(name).value;
    try {
      const uploaded = await client.upload(file, file.name, {
        label_column: field("label-column"),
        prediction_column: field("prediction-column"),
        positive_label: field("positive-label"),
        drop_columns: field("drop-columns") || undefined,
        k: Number(field("cluster-k") || 15),
        seed: Number(field("cluster-seed") || 0),
      });
      el<HTMLElement>("status").textContent =
        `loaded ${uploaded.row_count} rows (${uploaded.dropped_rows} dropped)`;
      runSession(uploaded.dataset_id, uploaded.metrics);
    } catch (error) {
      ignoreStale(error);
    }
  });
}

function runSession(datasetId: string, metrics: string[]): void {
  const store = new Store(["accuracy"]);
  const data: AppData = {
    datasetId,
    metrics,
    features: null,
    groups: { groups: [], dataset_averages: {} },
    suggested: null,
    detail: null,
  };

  const featurePane = el<HTMLElement>("feature-panel");
  const overviewPane = el<HTMLElement>("overview");
  const cardsPane = el<HTMLElement>("cards");
  const detailPane = el<HTMLElement>("detail");

  // metric selector
  const selector = el<HTMLElement>("metric-selector");
  selector.textContent = "";
  for (const metric of metrics) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = metric;
    box.checked = store.get().selectedMetrics.includes(metric);
    box.addEventListener("change", () => {
      if (box.checked) store.addMetric(metric);
      else if (!store.removeMetric(metric)) box.checked = true;
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(metric));
    selector.appendChild(label);
  }

  // size filter + sort controls
  const sizeSlider = el<HTMLInputElement>("min-size");
  sizeSlider.value = String(store.get().minSize);
  sizeSlider.addEventListener("input", () => store.setMinSize(Number(sizeSlider.value)));
  const sortSelect = el<HTMLSelectElement>("sort-metric");
  sortSelect.textContent = "";
  for (const metric of metrics) {
    const option = document.createElement("option");
    option.value = metric;
    option.textContent = metric;
    sortSelect.appendChild(option);
  }
  sortSelect.addEventListener("change", () => store.setSort(sortSelect.value));
  el<HTMLSelectElement>("sort-order").addEventListener("change", (event) =>
    store.setSort(store.get().sortMetric, (event.target as HTMLSelectElement).value as "asc" | "desc"),
  );
  el<HTMLButtonElement>("tab-suggested").addEventListener("click", () => store.setTab("suggested"));
  el<HTMLButtonElement>("tab-similar").addEventListener("click", () => store.setTab("similar"));

  const handlers = {
    onHover: (id: string | null) => {
      store.hover(id);
      void refreshDetail();
    },
    onPin: (id: string) => {
      const current = store.get().pinnedId;
      store.pin(current === id ? null : id);
      void client.setSelection(datasetId, store.get().pinnedId, store.get().hoveredId).catch(ignoreStale);
      void refreshDetail();
      void refreshCards();
    },
  };

  function renderAll(): void {
    const state = store.get();
    if (data.features) {
      renderFeaturePanel(
        featurePane,
        data.features.features,
        { pinned: data.detail?.pinned ?? null, hovered: data.detail?.hovered ?? null },
        {
          onGenerate: (selection) => void generate(selection),
        },
      );
    }
    renderOverview(
      overviewPane,
      { groups: data.groups.groups, averages: data.groups.dataset_averages },
      {
        selectedMetrics: state.selectedMetrics,
        minSize: state.minSize,
        pinnedId: state.pinnedId,
        hoveredId: state.hoveredId,
      },
      handlers,
    );
    const cardOptions = {
      selectedMetrics: state.selectedMetrics,
      pinnedId: state.pinnedId,
      hoveredId: state.hoveredId,
    };
    if (state.activeTab === "suggested" && data.suggested) {
      renderSuggestedCards(cardsPane, data.suggested.groups, cardOptions, handlers);
    }
    if (data.detail) {
      renderDetail(detailPane, data.detail, state.selectedMetrics, {
        onExport: () => void exportSelection(),
      });
    }
  }

  async function refreshFeatures(): Promise<void> {
    data.features = await latestOnly("features", () => client.features(datasetId));
    renderAll();
  }

  async function generate(selection: Record<string, string[]>): Promise<void> {
    await latestOnly("generate", () => client.generateGroups(datasetId, selection));
    data.groups = await latestOnly("groups", () => client.listGroups(datasetId, 0));
    renderAll();
  }

  async function refreshCards(): Promise<void> {
    const state = store.get();
    try {
      if (state.activeTab === "suggested") {
        data.suggested = await latestOnly("cards", () =>
          client.suggested(datasetId, state.sortMetric, {
            order: state.sortOrder,
            minSize: state.minSize,
          }),
        );
        renderAll();
      } else if (state.pinnedId) {
        const response = await latestOnly("cards", () =>
          client.similar(datasetId, state.pinnedId as string, {
            sort: state.sortMetric,
            minSize: state.minSize,
          }),
        );
        renderSimilarCards(
          cardsPane,
          response,
          {
            selectedMetrics: state.selectedMetrics,
            pinnedId: state.pinnedId,
            hoveredId: state.hoveredId,
          },
          handlers,
        );
      }
    } catch (error) {
      ignoreStale(error);
    }
  }

  async function refreshDetail(): Promise<void> {
    const state = store.get();
    try {
      data.detail = await latestOnly("detail", () =>
        client.detail(datasetId, state.pinnedId ?? undefined, state.hoveredId ?? undefined),
      );
      renderAll();
    } catch (error) {
      ignoreStale(error);
    }
  }

  async function exportSelection(): Promise<void> {
    const state = store.get();
    const ids = [state.pinnedId, state.hoveredId].filter((x): x is string => x !== null);
    if (ids.length === 0) return;
    const doc = await client.exportGroups(datasetId, ids);
    const problems = validateExportDocument(doc);
    if (problems.length > 0) {
      el<HTMLElement>("status").textContent = `export failed validation: ${problems.join(", ")}`;
      return;
    }
    const blob = new Blob([JSON.stringify(doc, null, 2)], { type: "application/json" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = `fairaudit-${datasetId}.json`;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }

  store.subscribe(() => renderAll());
  store.subscribe((state) => {
    // re-query the ranked cards when their inputs change
    void state;
  });
  sortSelect.addEventListener("change", () => void refreshCards());
  el<HTMLSelectElement>("sort-order").addEventListener("change", () => void refreshCards());
  sizeSlider.addEventListener("change", () => void refreshCards());
  el<HTMLButtonElement>("tab-suggested").addEventListener("click", () => void refreshCards());
  el<HTMLButtonElement>("tab-similar").addEventListener("click", () => void refreshCards());

  void refreshFeatures();
  void refreshCards();
  void refreshDetail();
}

if (typeof document !== "undefined" && document.getElementById("upload-form")) {
  startApp();
}
