/** Central view state shared by all four coordinated views.
 *
 * Invariants enforced here: at least one metric stays selected, and the
 * pinned and hovered ids never point at the same group.
 */

export type Tab = "suggested" | "similar";

export interface ViewState {
  selectedMetrics: string[];
  pinnedId: string | null;
  hoveredId: string | null;
  minSize: number;
  sortMetric: string;
  sortOrder: "asc" | "desc";
  activeTab: Tab;
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners = new Set<Listener>();

  constructor(initialMetrics: string[] = ["accuracy"]) {
    if (initialMetrics.length === 0) throw new Error("at least one metric must be selected");
    this.state = {
      selectedMetrics: [...initialMetrics],
      pinnedId: null,
      hoveredId: null,
      minSize: 10,
      sortMetric: initialMetrics[0],
      sortOrder: "asc",
      activeTab: "suggested",
    };
  }

  get(): ViewState {
    return { ...this.state, selectedMetrics: [...this.state.selectedMetrics] };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    const snapshot = this.get();
    for (const listener of this.listeners) listener(snapshot);
  }

  addMetric(metric: string): void {
    if (this.state.selectedMetrics.includes(metric)) return;
    this.state.selectedMetrics.push(metric);
    this.emit();
  }

  removeMetric(metric: string): boolean {
    const kept = this.state.selectedMetrics.filter((m) => m !== metric);
    if (kept.length === 0) return false; // never drop the last strip plot
    if (kept.length === this.state.selectedMetrics.length) return false;
    this.state.selectedMetrics = kept;
    if (!kept.includes(this.state.sortMetric)) this.state.sortMetric = kept[0];
    this.emit();
    return true;
  }

  pin(id: string | null): void {
    this.state.pinnedId = id;
    if (id !== null && this.state.hoveredId === id) this.state.hoveredId = null;
    this.emit();
  }

  hover(id: string | null): void {
    if (id !== null && id === this.state.pinnedId) return; // pinned stays pinned
    if (this.state.hoveredId === id) return;
    this.state.hoveredId = id;
    this.emit();
  }

  setMinSize(minSize: number): void {
    this.state.minSize = Math.max(0, Math.floor(minSize));
    this.emit();
  }

  setSort(metric: string, order?: "asc" | "desc"): void {
    this.state.sortMetric = metric;
    if (order) this.state.sortOrder = order;
    this.emit();
  }

  setTab(tab: Tab): void {
    this.state.activeTab = tab;
    this.emit();
  }
}
