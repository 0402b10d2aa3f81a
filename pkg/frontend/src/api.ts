// Thin typed client for the splitmark HTTP API.

import type { ApiError, EventKind, RecordInfo, SessionState } from "./types.js";

export interface CreateSessionOptions {
  width: number;
  height: number;
  grid?: number;
  hidden_len?: number;
  catalogue_id?: string;
  year?: number;
  image_ref?: string | null;
}

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, detail: ApiError | string) {
    const code = typeof detail === "string" ? detail : detail.code;
    const message =
      typeof detail === "string" ? detail : detail.message ?? detail.code;
    super(`${code}: ${message}`);
    this.status = status;
    this.code = code;
  }
}

async function parseError(response: Response): Promise<never> {
  let detail: ApiError | string = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { detail?: ApiError | string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiRequestError(response.status, detail);
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchFn;

  constructor(baseUrl = "", fetchFn: FetchFn = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async createSession(
    options: CreateSessionOptions,
  ): Promise<{ session_id: string; state: SessionState }> {
    return this.post("/sessions", options);
  }

  async getState(sessionId: string): Promise<SessionState> {
    const payload = await this.get<{ state: SessionState }>(
      `/sessions/${sessionId}`,
    );
    return payload.state;
  }

  async sendEvent(
    sessionId: string,
    kind: EventKind,
    seed?: { x: number; y: number },
    expectedIndex?: number,
  ): Promise<SessionState> {
    const body: Record<string, unknown> = { kind };
    if (seed) {
      body.x = seed.x;
      body.y = seed.y;
    }
    if (expectedIndex !== undefined) body.expected_index = expectedIndex;
    const payload = await this.post<{ state: SessionState }>(
      `/sessions/${sessionId}/events`,
      body,
    );
    return payload.state;
  }

  async save(
    sessionId: string,
  ): Promise<{ record: RecordInfo; state: SessionState }> {
    return this.post(`/sessions/${sessionId}/save`, {});
  }

  async listRecords(): Promise<RecordInfo[]> {
    const payload = await this.get<{ records: RecordInfo[] }>("/records");
    return payload.records;
  }
}
