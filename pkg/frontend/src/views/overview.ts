/** Subgroup Overview: one strip plot per selected metric.
 *
 * Each group is a vertical strip positioned by its metric value; a dashed
 * line marks the dataset average. Hovering a strip highlights the group in
 * every plot; clicking pins it. Crowding beyond MAX_STRIPS is cut off with
 * a visible "N hidden" notice (raise the min-size filter to thin it out).
 */

import { formatMetric, fullPrecision, HOVERED_COLOR, PINNED_COLOR } from "../format";
import type { GroupSummary, MetricValue } from "../types";

export const MAX_STRIPS = 200;
const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 56;
const PAD = 10;

export interface OverviewHandlers {
  onHover(id: string | null): void;
  onPin(id: string): void;
}

export interface OverviewData {
  groups: GroupSummary[];
  averages: Record<string, MetricValue>;
}

function xFor(value: number): number {
  return PAD + value * (WIDTH - 2 * PAD);
}

function renderPlot(
  metric: string,
  data: OverviewData,
  visible: GroupSummary[],
  pinnedId: string | null,
  hoveredId: string | null,
  handlers: OverviewHandlers,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "strip-plot";
  section.dataset.metric = metric;

  const heading = document.createElement("h3");
  heading.textContent = metric;
  section.appendChild(heading);

  const placeable = visible.filter((g) => g.metrics[metric] !== null);
  const shown = placeable.slice(0, MAX_STRIPS);
  const hidden = placeable.length - shown.length;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "strip-svg");

  const axis = document.createElementNS(SVG_NS, "line");
  axis.setAttribute("x1", String(PAD));
  axis.setAttribute("x2", String(WIDTH - PAD));
  axis.setAttribute("y1", String(HEIGHT - 8));
  axis.setAttribute("y2", String(HEIGHT - 8));
  axis.setAttribute("class", "axis");
  svg.appendChild(axis);

  for (const group of shown) {
    const value = group.metrics[metric] as number;
    const strip = document.createElementNS(SVG_NS, "line");
    strip.setAttribute("x1", String(xFor(value)));
    strip.setAttribute("x2", String(xFor(value)));
    strip.setAttribute("y1", "8");
    strip.setAttribute("y2", String(HEIGHT - 12));
    strip.dataset.groupId = group.id;
    let cls = "strip";
    if (group.id === pinnedId) {
      cls += " pinned";
      strip.setAttribute("stroke", PINNED_COLOR);
    } else if (group.id === hoveredId) {
      cls += " hovered";
      strip.setAttribute("stroke", HOVERED_COLOR);
    }
    strip.setAttribute("class", cls);
    const tip = document.createElementNS(SVG_NS, "title");
    tip.textContent = `${group.name} (n=${group.size}) ${metric}=${fullPrecision(value)}`;
    strip.appendChild(tip);
    strip.addEventListener("mouseenter", () => handlers.onHover(group.id));
    strip.addEventListener("mouseleave", () => handlers.onHover(null));
    strip.addEventListener("click", () => handlers.onPin(group.id));
    svg.appendChild(strip);
  }

  const average = data.averages[metric];
  if (average !== null && average !== undefined) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(xFor(average)));
    line.setAttribute("x2", String(xFor(average)));
    line.setAttribute("y1", "2");
    line.setAttribute("y2", String(HEIGHT - 8));
    line.setAttribute("class", "average-line");
    const tip = document.createElementNS(SVG_NS, "title");
    tip.textContent = `dataset average ${metric}=${fullPrecision(average)} (${formatMetric(average)})`;
    line.appendChild(tip);
    svg.appendChild(line);
  }

  section.appendChild(svg);

  if (hidden > 0) {
    const notice = document.createElement("p");
    notice.className = "hidden-notice";
    notice.textContent = `${hidden} hidden — raise the size filter to reduce crowding`;
    section.appendChild(notice);
  }
  return section;
}

export function renderOverview(
  container: HTMLElement,
  data: OverviewData,
  options: {
    selectedMetrics: string[];
    minSize: number;
    pinnedId: string | null;
    hoveredId: string | null;
  },
  handlers: OverviewHandlers,
): void {
  container.textContent = "";
  const visible = data.groups.filter((g) => g.size >= options.minSize);
  for (const metric of options.selectedMetrics) {
    container.appendChild(
      renderPlot(metric, data, visible, options.pinnedId, options.hoveredId, handlers),
    );
  }
}
