import type { ApiError, SearchResponse } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

/** Error carrying the server's {code, message, subject} payload. */
export class SearchApiError extends Error {
  readonly code: string;
  readonly subject: string | null;

  constructor(status: number, body: ApiError | null) {
    super(body?.message ?? `search request failed with status ${status}`);
    this.code = body?.code ?? "internal";
    this.subject = body?.subject ?? null;
  }
}

export class SearchClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = (url) => fetch(url)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  async search(params: URLSearchParams): Promise<SearchResponse> {
    const query = params.toString();
    const url = `${this.baseUrl}/api/search${query ? `?${query}` : ""}`;
    const response = await this.fetchFn(url);
    if (!response.ok) {
      let body: ApiError | null = null;
      try {
        body = (await response.json()) as ApiError;
      } catch {
        body = null;
      }
      throw new SearchApiError(response.status, body);
    }
    return (await response.json()) as SearchResponse;
  }
}
