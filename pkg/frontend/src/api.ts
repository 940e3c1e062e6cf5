/** Thin typed client for the vulntrack HTTP API.
 *
 * Every number shown in the UI comes through this module; nothing is
 * recomputed client side.
 */

import type {
  DocumentPayload,
  ExpansionCandidate,
  Granularity,
  ResultOrder,
  ResultPayload,
  SpikePayload,
  StatsPayload,
  TopicPayload,
  TrendPayload,
} from "./types.js";

/** Error raised for any non-2xx response, carrying the service's message. */
export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: unknown };
    if (typeof body.error === "string") {
      return body.error;
    }
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

export class Client {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorMessage(response));
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  stats(): Promise<StatsPayload> {
    return this.request("/stats");
  }

  topics(): Promise<TopicPayload[]> {
    return this.request("/topics");
  }

  topic(name: string): Promise<TopicPayload> {
    return this.request(`/topics/${encodeURIComponent(name)}`);
  }

  createTopic(name: string, keywords: string[]): Promise<TopicPayload> {
    return this.post("/topics", { name, keywords });
  }

  addKeywords(name: string, keywords: string[]): Promise<TopicPayload> {
    return this.post(`/topics/${encodeURIComponent(name)}/keywords`, {
      keywords,
    });
  }

  expand(
    name: string,
    theta?: number,
    limit?: number,
  ): Promise<ExpansionCandidate[]> {
    const body: { theta?: number; limit?: number } = {};
    if (theta !== undefined) body.theta = theta;
    if (limit !== undefined) body.limit = limit;
    return this.post(`/topics/${encodeURIComponent(name)}/expand`, body);
  }

  results(
    name: string,
    order: ResultOrder = "relevance",
    limit?: number,
  ): Promise<ResultPayload[]> {
    const params = new URLSearchParams({ order });
    if (limit !== undefined) params.set("limit", String(limit));
    return this.request(
      `/topics/${encodeURIComponent(name)}/results?${params}`,
    );
  }

  trend(name: string, granularity: Granularity): Promise<TrendPayload> {
    const params = new URLSearchParams({ granularity });
    return this.request(`/topics/${encodeURIComponent(name)}/trend?${params}`);
  }

  spikes(name: string, granularity: Granularity): Promise<SpikePayload[]> {
    const params = new URLSearchParams({ granularity });
    return this.request(
      `/topics/${encodeURIComponent(name)}/spikes?${params}`,
    );
  }

  document(docId: string, topic?: string): Promise<DocumentPayload> {
    const suffix = topic ? `?topic=${encodeURIComponent(topic)}` : "";
    return this.request(`/documents/${encodeURIComponent(docId)}${suffix}`);
  }
}
