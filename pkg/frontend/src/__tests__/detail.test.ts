import { beforeEach, describe, expect, it, vi } from "vitest";

import fixtures from "../testing/fixtures.json";
import type { DetailResponse, ExportDocument } from "../types";
import { validateExportDocument } from "../types";
import { renderDetail } from "../views/detail";

const detail = fixtures.detail as unknown as DetailResponse;
const exportDoc = fixtures.export as unknown as ExportDocument;

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  container = document.getElementById("root") as HTMLElement;
});

const metrics = ["accuracy", "fpr", "recall"];
const noop = { onExport: () => {} };

describe("detailed comparison", () => {
  it("renders a grouped two-color bar per selected metric", () => {
    renderDetail(container, detail, metrics, noop);
    const rows = container.querySelectorAll(".metric-row");
    expect(rows).toHaveLength(metrics.length);
    for (const row of rows) {
      const bars = row.querySelectorAll<HTMLElement>(".metric-bar");
      expect(bars).toHaveLength(2); // pinned + hovered
      expect(bars[0].style.background).toBe("rgb(214, 69, 65)");
      expect(bars[1].style.background).toBe("rgb(59, 111, 212)");
    }
  });

  it("bar widths encode the exact service values", () => {
    renderDetail(container, detail, ["accuracy"], noop);
    const bars = container.querySelectorAll<HTMLElement>(".metric-row .metric-bar");
    const pinnedAcc = detail.pinned!.metrics.accuracy as number;
    expect(bars[0].style.width).toBe(`${100 * pinnedAcc}%`);
    expect(bars[0].title).toContain(String(pinnedAcc)); // full precision on hover
  });

  it("renders ground-truth label balance for both groups", () => {
    renderDetail(container, detail, metrics, noop);
    const balance = container.querySelector(".label-balance") as HTMLElement;
    const bars = balance.querySelectorAll<HTMLElement>(".metric-bar");
    expect(bars).toHaveLength(2);
    expect(bars[0].style.width).toBe(`${100 * (detail.pinned!.label_balance as number)}%`);
  });

  it("shows a constraints table for predicate groups", () => {
    renderDetail(container, detail, metrics, noop);
    const table = container.querySelector(".feature-table") as HTMLElement;
    const constraints = detail.pinned!.constraints!;
    for (const [feature, value] of Object.entries(constraints)) {
      expect(table.textContent).toContain(feature);
      expect(table.textContent).toContain(value);
    }
  });

  it("shows top-5 dominant values for cluster groups", () => {
    const clusterDetail: DetailResponse = {
      ...detail,
      pinned: (fixtures.suggested.groups[0] as unknown as DetailResponse["pinned"] & object)
        ? ({
            ...(fixtures.suggested.groups[0] as object),
            label_balance: 0.5,
            confusion: { tp: 1, tn: 1, fp: 1, fn: 1 },
          } as NonNullable<DetailResponse["pinned"]>)
        : null,
      hovered: null,
    };
    renderDetail(container, clusterDetail, ["accuracy"], noop);
    const rows = container.querySelectorAll(".feature-table tr");
    expect(rows.length).toBeLessThanOrEqual(5);
    expect(rows.length).toBeGreaterThan(0);
  });

  it("prompts when nothing is selected", () => {
    renderDetail(container, { ...detail, pinned: null, hovered: null }, metrics, noop);
    expect(container.querySelector(".detail-hint")).not.toBeNull();
    expect(container.querySelector(".export-button")).toBeNull();
  });

  it("export button invokes the handler", () => {
    const onExport = vi.fn();
    renderDetail(container, detail, metrics, { onExport });
    (container.querySelector(".export-button") as HTMLButtonElement).click();
    expect(onExport).toHaveBeenCalledTimes(1);
  });
});

describe("export document validation", () => {
  it("accepts the document produced by the service", () => {
    expect(validateExportDocument(exportDoc)).toEqual([]);
  });

  it("rejects structural violations", () => {
    expect(validateExportDocument(null)).not.toEqual([]);
    expect(validateExportDocument({})).toContain("tool_version missing");
    const broken = JSON.parse(JSON.stringify(exportDoc)) as ExportDocument;
    broken.groups[0].confusion.tp += 1; // no longer sums to size
    expect(validateExportDocument(broken).join(" ")).toContain("does not sum");
    const badMetric = JSON.parse(JSON.stringify(exportDoc)) as ExportDocument;
    (badMetric.groups[0].metrics as Record<string, unknown>).accuracy = "0.9";
    expect(validateExportDocument(badMetric).join(" ")).toContain("metrics.accuracy");
  });

  it("requires constraints on predicate groups and dominant features on clusters", () => {
    const doc = JSON.parse(JSON.stringify(exportDoc)) as ExportDocument;
    const predicate = doc.groups.find((g) => g.kind === "predicate");
    if (predicate) {
      delete predicate.constraints;
      expect(validateExportDocument(doc).join(" ")).toContain("constraints missing");
    }
    const doc2 = JSON.parse(JSON.stringify(exportDoc)) as ExportDocument;
    const cluster = doc2.groups.find((g) => g.kind === "cluster");
    if (cluster) {
      delete cluster.dominant_features;
      expect(validateExportDocument(doc2).join(" ")).toContain("dominant_features missing");
    }
  });
});
