/** UI state that is fully reconstructible from the URL query string. */
export interface ExplorerState {
  /** field -> set of active filter values (exact values as the API stores them). */
  filters: Map<string, Set<string>>;
  from: string | null;
  to: string | null;
  page: number;
  limit: number;
  sort: string;
  dir: "asc" | "desc";
}

export const DEFAULT_LIMIT = 25;

export function emptyState(): ExplorerState {
  return {
    filters: new Map(),
    from: null,
    to: null,
    page: 0,
    limit: DEFAULT_LIMIT,
    sort: "timestamp",
    dir: "asc",
  };
}

function cloneFilters(filters: Map<string, Set<string>>): Map<string, Set<string>> {
  const out = new Map<string, Set<string>>();
  for (const [field, values] of filters) {
    out.set(field, new Set(values));
  }
  return out;
}

/** Add or remove one filter value; any change resets paging to the first page. */
export function toggleFilter(state: ExplorerState, field: string, value: string): ExplorerState {
  const filters = cloneFilters(state.filters);
  const values = filters.get(field) ?? new Set<string>();
  if (values.has(value)) {
    values.delete(value);
  } else {
    values.add(value);
  }
  if (values.size === 0) {
    filters.delete(field);
  } else {
    filters.set(field, values);
  }
  return { ...state, filters, page: 0 };
}

export function hasFilter(state: ExplorerState, field: string, value: string): boolean {
  return state.filters.get(field)?.has(value) ?? false;
}

export function setTimeRange(state: ExplorerState, from: string | null, to: string | null): ExplorerState {
  return { ...state, from, to, page: 0 };
}

export function setPage(state: ExplorerState, page: number): ExplorerState {
  return { ...state, page: Math.max(0, page) };
}

export function pageCount(total: number, limit: number): number {
  return Math.max(1, Math.ceil(total / limit));
}

/**
 * Serialize the state into a URL query string. The format mirrors the
 * /api/search parameters (`filter=field:value`, repeatable) so a copied
 * URL documents the query it represents.
 */
export function stateToQuery(state: ExplorerState): string {
  const params = new URLSearchParams();
  const fields = [...state.filters.keys()].sort();
  for (const field of fields) {
    for (const value of [...(state.filters.get(field) ?? [])].sort()) {
      params.append("filter", `${field}:${value}`);
    }
  }
  if (state.from) params.set("from", state.from);
  if (state.to) params.set("to", state.to);
  if (state.page !== 0) params.set("page", String(state.page));
  if (state.limit !== DEFAULT_LIMIT) params.set("limit", String(state.limit));
  if (state.sort !== "timestamp") params.set("sort", state.sort);
  if (state.dir !== "asc") params.set("dir", state.dir);
  return params.toString();
}

/** Inverse of stateToQuery; unknown parameters are ignored. */
export function stateFromQuery(query: string): ExplorerState {
  const params = new URLSearchParams(query);
  const state = emptyState();
  for (const raw of params.getAll("filter")) {
    const sep = raw.indexOf(":");
    if (sep <= 0) continue;
    const field = raw.slice(0, sep);
    const value = raw.slice(sep + 1);
    const values = state.filters.get(field) ?? new Set<string>();
    values.add(value);
    state.filters.set(field, values);
  }
  state.from = params.get("from");
  state.to = params.get("to");
  const page = Number(params.get("page") ?? "0");
  state.page = Number.isInteger(page) && page > 0 ? page : 0;
  const limit = Number(params.get("limit") ?? String(DEFAULT_LIMIT));
  state.limit = Number.isInteger(limit) && limit >= 1 && limit <= 1000 ? limit : DEFAULT_LIMIT;
  state.sort = params.get("sort") ?? "timestamp";
  state.dir = params.get("dir") === "desc" ? "desc" : "asc";
  return state;
}

/** Build the /api/search query parameters for the current state. */
export function searchParams(state: ExplorerState, facetFields: string[]): URLSearchParams {
  const params = new URLSearchParams();
  for (const field of [...state.filters.keys()].sort()) {
    for (const value of [...(state.filters.get(field) ?? [])].sort()) {
      params.append("filter", `${field}:${value}`);
    }
  }
  for (const field of facetFields) {
    params.append("facet", field);
  }
  if (state.from) params.set("from", state.from);
  if (state.to) params.set("to", state.to);
  params.set("offset", String(state.page * state.limit));
  params.set("limit", String(state.limit));
  params.set("sort", state.sort);
  params.set("dir", state.dir);
  return params;
}

/** Trim an IRI down to a readable local name for display. */
export function localName(value: string): string {
  if (value === "") return "(none)";
  const match = /[^/#:]+$/.exec(value);
  return match ? match[0] : value;
}
