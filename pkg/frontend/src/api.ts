/** Typed client for the fairaudit service.
 *
 * Every view issues requests through `latestOnly`, which tags each call with
 * a sequence number per view key and rejects resolutions that have been
 * superseded, so a slow stale response can never overwrite fresher data.
 */

import type {
  DetailResponse,
  ExportDocument,
  FeaturesResponse,
  GroupsResponse,
  SimilarResponse,
  SuggestedResponse,
  UploadResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class StaleResponse extends Error {
  constructor() {
    super("superseded by a newer request");
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

const sequences = new Map<string, number>();

/** Run a request on behalf of a view; stale completions reject with StaleResponse. */
export async function latestOnly<T>(viewKey: string, work: () => Promise<T>): Promise<T> {
  const seq = (sequences.get(viewKey) ?? 0) + 1;
  sequences.set(viewKey, seq);
  const result = await work();
  if (sequences.get(viewKey) !== seq) throw new StaleResponse();
  return result;
}

export interface UploadConfig {
  label_column: string;
  prediction_column: string;
  positive_label: string;
  delimiter?: string;
  drop_columns?: string;
  k?: number;
  seed?: number;
}

export class Client {
  constructor(private base: string = "") {}

  private url(path: string, params?: Record<string, string | number | undefined>): string {
    const query = Object.entries(params ?? {})
      .filter(([, v]) => v !== undefined)
      .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
      .join("&");
    return `${this.base}${path}${query ? `?${query}` : ""}`;
  }

  async upload(file: Blob, filename: string, config: UploadConfig): Promise<UploadResponse> {
    const form = new FormData();
    form.append("file", file, filename);
    for (const [key, value] of Object.entries(config)) {
      if (value !== undefined) form.append(key, String(value));
    }
    return request<UploadResponse>(this.url("/datasets"), { method: "POST", body: form });
  }

  features(datasetId: string): Promise<FeaturesResponse> {
    return request(this.url(`/datasets/${datasetId}/features`));
  }

  generateGroups(datasetId: string, selection: Record<string, string[]>): Promise<GroupsResponse> {
    return request(this.url(`/datasets/${datasetId}/groups`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ selection }),
    });
  }

  listGroups(datasetId: string, minSize?: number): Promise<GroupsResponse> {
    return request(this.url(`/datasets/${datasetId}/groups`, { min_size: minSize }));
  }

  suggested(
    datasetId: string,
    sort: string,
    opts: { order?: "asc" | "desc"; minSize?: number; limit?: number } = {},
  ): Promise<SuggestedResponse> {
    return request(
      this.url(`/datasets/${datasetId}/suggested`, {
        sort,
        order: opts.order,
        min_size: opts.minSize,
        limit: opts.limit,
      }),
    );
  }

  similar(
    datasetId: string,
    groupId: string,
    opts: { radius?: 1 | 2; sort?: string; metric?: string; minSize?: number; limit?: number } = {},
  ): Promise<SimilarResponse> {
    return request(
      this.url(`/datasets/${datasetId}/groups/${groupId}/similar`, {
        radius: opts.radius,
        sort: opts.sort,
        metric: opts.metric,
        min_size: opts.minSize,
        limit: opts.limit,
      }),
    );
  }

  detail(datasetId: string, pinned?: string, hovered?: string): Promise<DetailResponse> {
    return request(this.url(`/datasets/${datasetId}/detail`, { pinned, hovered }));
  }

  setSelection(datasetId: string, pinned: string | null, hovered: string | null): Promise<void> {
    return request(this.url(`/datasets/${datasetId}/selection`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ pinned, hovered }),
    });
  }

  exportGroups(datasetId: string, ids: string[]): Promise<ExportDocument> {
    return request(this.url(`/datasets/${datasetId}/export`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ids }),
    });
  }
}
